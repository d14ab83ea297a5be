#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
工作进程池工具模块

把相互独立的子计算分发到进程池，结果按输入顺序合并。
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional

logger = logging.getLogger(__name__)


def parallel_map(func: Callable, items: Iterable, workers: int = 1,
                 progress_callback: Optional[Callable] = None) -> List:
    """按输入顺序返回 func(item) 的结果

    Args:
        func: 模块级函数（进程池需要可序列化）
        items: 输入序列
        workers: 工作进程数，1 表示在当前进程内顺序执行
        progress_callback: 进度回调 (已完成数, 总数, 描述)

    Returns:
        list: 与 items 一一对应的结果
    """
    items = list(items)
    total = len(items)
    if workers <= 1 or total <= 1:
        results = []
        for done, item in enumerate(items, 1):
            results.append(func(item))
            if progress_callback:
                progress_callback(done, total, f"完成 {done}/{total}")
        return results

    logger.debug(f"使用 {workers} 个工作进程处理 {total} 个任务")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(func, item) for item in items]
        results = []
        for done, future in enumerate(futures, 1):
            results.append(future.result())
            if progress_callback:
                progress_callback(done, total, f"完成 {done}/{total}")
    return results
