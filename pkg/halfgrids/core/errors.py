#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
异常定义模块

所有计算模块抛出的异常都派生自 HalfgridError，命令行入口据此映射退出码。
"""

from halfgrids.utils.constants import EXIT_INPUT_ERROR, EXIT_INTERNAL_ERROR, EXIT_MISMATCH


class HalfgridError(Exception):
    """工具内所有异常的基类"""
    exit_code = EXIT_INTERNAL_ERROR


class FieldError(HalfgridError, ValueError):
    """分圆域导体不匹配或无法嵌入"""
    exit_code = EXIT_INPUT_ERROR


class DivisionByZeroError(HalfgridError, ZeroDivisionError):
    """对零元素求逆"""
    exit_code = EXIT_INTERNAL_ERROR


class DegenerateInputError(HalfgridError, ValueError):
    """几何前提条件不满足（点重合、直线相交等）"""
    exit_code = EXIT_INPUT_ERROR


class NotInFieldError(HalfgridError):
    """元素不在所要求的子域中"""
    exit_code = EXIT_MISMATCH


class ConfigurationError(HalfgridError, ValueError):
    """点集不满足所查询的半网格结构"""
    exit_code = EXIT_MISMATCH


class CertificationError(HalfgridError):
    """geproci 认证失败（包括重试次数耗尽）"""
    exit_code = EXIT_MISMATCH


class GoldenMismatchError(HalfgridError):
    """重新计算的结果与内置基准数据不一致"""
    exit_code = EXIT_MISMATCH


class InvariantError(HalfgridError, AssertionError):
    """内部交叉校验失败"""
    exit_code = EXIT_INTERNAL_ERROR


class InputFormatError(HalfgridError, ValueError):
    """JSON 文件或命令行参数格式错误"""
    exit_code = EXIT_INPUT_ERROR
