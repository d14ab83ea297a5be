#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
命令行入口点，允许直接运行包

    python -m halfgrids tables 3
    python -m halfgrids construct all --emit out/
    python -m halfgrids verify out/pair_1_2.json 4 6 --trials 5 --seed 1
"""

import argparse
import logging
import sys

import halfgrids
from halfgrids.core import processor
from halfgrids.core.errors import HalfgridError
from halfgrids.core.halfgrid import VARIANTS, VARIANT_FULL
from halfgrids.utils.constants import (
    DEFAULT_SEED, DEFAULT_TRIALS, EXIT_INPUT_ERROR, EXIT_INTERNAL_ERROR, LOG_DATE_FORMAT, LOG_FORMAT
)


def _common_parser():
    """所有子命令共享的参数"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=DEFAULT_SEED,
                        help=f'随机种子，默认为{DEFAULT_SEED}')
    common.add_argument('--trials', type=int, default=DEFAULT_TRIALS,
                        help=f'投影试验次数，默认为{DEFAULT_TRIALS}')
    common.add_argument('--conductor', type=int,
                        help='工作分圆域的导体，必须是计算所需导体的倍数')
    common.add_argument('--emit', metavar='DIR',
                        help='输出目录，写入 JSON 文件与运行清单')
    common.add_argument('--format', dest='fmt', choices=[processor.FORMAT_TEXT, processor.FORMAT_JSON],
                        default=processor.FORMAT_TEXT, help='报告格式，默认为text')
    common.add_argument('--workers', type=int, default=1,
                        help='工作进程数，默认为1')
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument('-v', '--verbose', action='store_true', help='输出调试日志')
    verbosity.add_argument('-q', '--quiet', action='store_true', help='只输出警告与错误')
    common.add_argument('--log-file', help='同时把日志写入该文件')
    return common


def parse_args(argv=None):
    """解析命令行参数"""
    common = _common_parser()
    parser = argparse.ArgumentParser(prog='halfgrids', description='P^3 中 geproci 半网格的精确计算工具')
    parser.add_argument('--version', action='version', version=f'%(prog)s {halfgrids.__version__}')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('tables', parents=[common], help='重算表 1-3 并与基准数据比对')
    p.add_argument('which', nargs='*', type=int, default=[1, 2, 3], help='表号，默认全部')

    p = sub.add_parser('construct', parents=[common], help='外直线构造与 L4 配对')
    p.add_argument('mu', nargs='?', default='all', help='all、行号 1-6 或 σ2,σ3（如 2143,3421）')
    p.add_argument('--skip-equivalence', action='store_true', help='不检查拼接构形与 F4 模型的等价')

    p = sub.add_parser('verify', parents=[common], help='结构检测与 geproci 认证')
    p.add_argument('input', help='配置 JSON 文件')
    p.add_argument('a', type=int)
    p.add_argument('b', type=int)

    p = sub.add_parser('concurrency', parents=[common], help='标准构造的同时点扫描')
    p.add_argument('m_min', type=int)
    p.add_argument('m_max', type=int)

    p = sub.add_parser('admissible', parents=[common], help='可容许置换集合')
    p.add_argument('q', help='有理数交比参数或 anharmonic')

    p = sub.add_parser('standard', parents=[common], help='输出标准构造的配置')
    p.add_argument('m', type=int)
    p.add_argument('variant', nargs='?', choices=VARIANTS, default=VARIANT_FULL)

    sub.add_parser('f4', parents=[common], help='输出 F4 参考模型')

    p = sub.add_parser('equiv', parents=[common], help='两个配置的射影等价')
    p.add_argument('a_file')
    p.add_argument('b_file')

    p = sub.add_parser('verify-cert', parents=[common], help='复核已有的 geproci 证书')
    p.add_argument('certificate')
    p.add_argument('--config', help='同时复核像点所用的配置 JSON 文件')

    p = sub.add_parser('detect', parents=[common], help='只做网格/半网格结构检测')
    p.add_argument('input')
    p.add_argument('a', type=int)
    p.add_argument('b', type=int)

    return parser.parse_args(argv)


def setup_logging(args):
    """配置日志：--verbose 为 DEBUG，--quiet 为 WARNING"""
    level = logging.DEBUG if args.verbose else (logging.WARNING if args.quiet else logging.INFO)
    logging.basicConfig(level=level, format=LOG_FORMAT, datefmt=LOG_DATE_FORMAT)
    if args.log_file:
        handler = logging.FileHandler(args.log_file, encoding='utf-8')
        handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=LOG_DATE_FORMAT))
        logging.getLogger().addHandler(handler)


def _progress(done, total, message):
    logging.getLogger(__name__).info(f"进度 {done}/{total}: {message}")


def dispatch(args) -> int:
    options = processor.RunOptions(
        seed=args.seed,
        trials=args.trials,
        conductor=args.conductor,
        emit=args.emit,
        fmt=args.fmt,
        workers=args.workers,
        progress_callback=_progress,
        version=halfgrids.__version__,
    )
    command = args.command
    if command == 'tables':
        return processor.run_tables(args.which, options)
    if command == 'construct':
        return processor.run_construct(args.mu, options, not args.skip_equivalence)
    if command == 'verify':
        return processor.run_verify(args.input, args.a, args.b, options)
    if command == 'concurrency':
        return processor.run_concurrency(args.m_min, args.m_max, options)
    if command == 'admissible':
        return processor.run_admissible(args.q, options)
    if command == 'standard':
        return processor.run_standard(args.m, args.variant, options)
    if command == 'f4':
        return processor.run_f4(options)
    if command == 'equiv':
        return processor.run_equiv(args.a_file, args.b_file, options)
    if command == 'verify-cert':
        return processor.run_verify_cert(args.certificate, args.config, options)
    if command == 'detect':
        return processor.run_detect(args.input, args.a, args.b, options)
    raise ValueError(f"未知命令: {command}")


def main(argv=None):
    """主函数"""
    try:
        args = parse_args(argv)
    except SystemExit as e:
        # argparse 的用法错误统一映射为输入错误
        return EXIT_INPUT_ERROR if e.code else 0
    setup_logging(args)
    logger = logging.getLogger(__name__)

    if args.workers < 1 or args.trials < 1:
        logger.error("--workers 与 --trials 必须 >= 1")
        return EXIT_INPUT_ERROR

    try:
        return dispatch(args)
    except HalfgridError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code
    except Exception as e:
        logger.exception(f"处理过程中发生错误: {e}")
        return EXIT_INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
