#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
常量定义模块
"""

# 退出码
EXIT_OK = 0
EXIT_MISMATCH = 1  # 数学结果不符或被否证
EXIT_INPUT_ERROR = 2  # 输入错误
EXIT_INTERNAL_ERROR = 3  # 内部不变量被破坏

# 随机化参数
DEFAULT_SEED = 1
DEFAULT_TRIALS = 5  # 投影中心个数，经验值
CENTER_BOX = 997  # 投影中心坐标取自 [-CENTER_BOX, CENTER_BOX]
PROJECTION_RETRIES = 25  # 单次试验中投影中心的最大重采样次数
RESULTANT_SPECIALIZATIONS = 6  # 结式特化点的尝试次数
SPECIALIZATION_BOX = 10 ** 6  # 结式特化点取值范围

# 投影像平面 x + 2y + 3z + 5w = 0，删去 w 坐标得到平面坐标
DEFAULT_IMAGE_PLANE = (1, 2, 3, 5)
IMAGE_PLANE_DROPPED_COORD = 3

# 结构检测
RICH_LINE_MIN_POINTS = 4  # 射影等价搜索中“富直线”的最少点数

# 同时点扫描
VERIFIED_M_RANGE = (3, 11)  # 已知恰有两个同时点的 m 范围
EXPECTED_CONCURRENCY_COUNT = 2

# 构造模块使用的分圆域导体（容纳 i）
CONSTRUCTION_CONDUCTOR = 4

# 输出文件名
MANIFEST_FILE = 'manifest.json'
CERTIFICATE_FILE = 'certificate.json'
CONSTRUCTION_REPORT_FILE = 'construction.json'
CONCURRENCY_REPORT_FILE = 'concurrency.json'
TABLES_REPORT_FILE = 'tables.json'
GOLDENS_FILE = 'goldens.json'

# 日志格式
LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'
LOG_DATE_FORMAT = '%Y-%m-%d %H:%M:%S'
