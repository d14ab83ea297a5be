#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
文本格式化工具模块

域元素、射影点、置换和直线理想的可读字符串表示，以及线性型的解析。
"""

import re
from fractions import Fraction
from math import gcd, lcm
from typing import List, Sequence

from halfgrids.core.errors import InputFormatError

VARIABLES = ('x', 'y', 'z', 'w')
# 直线理想化简时的主元列顺序（y, x, z, w）
IDEAL_PIVOT_ORDER = (1, 0, 2, 3)


def label_sort_key(label: str):
    """自然排序键：数字部分按整数比较"""
    return [int(part) if part.isdigit() else part for part in re.split(r'(\d+)', label)]


def _format_term(coeff: Fraction, symbol: str, first: bool) -> str:
    sign = '-' if coeff < 0 else ('' if first else '+')
    mag = abs(coeff)
    if not symbol:
        return f"{sign}{mag}"
    if mag == 1:
        return f"{sign}{symbol}"
    return f"{sign}{mag}{symbol}"


def format_elem(elem) -> str:
    """域元素的可读表示

    有理数直接输出；Q(i) 中的元素写成 a+bi；其他情形写成 ζN 的幂次和。
    """
    coeffs = elem.coeffs
    if elem.is_rational():
        return str(coeffs[0])
    if elem.conductor == 4:
        symbols = ['', 'i']
    else:
        symbols = [''] + [f"ζ{elem.conductor}" + (f"^{k}" if k > 1 else '')
                          for k in range(1, len(coeffs))]
    parts = []
    for c, s in zip(coeffs, symbols):
        if c:
            parts.append(_format_term(c, s, not parts))
    return ''.join(parts)


def format_point(point) -> str:
    """射影点写成 [a:b:c:d]"""
    texts = []
    for c in point.coords:
        t = format_elem(c)
        if not c.is_rational() and ('+' in t[1:] or '-' in t[1:]):
            t = f"({t})"
        texts.append(t)
    return '[' + ':'.join(texts) + ']'


def format_perm(perm) -> str:
    return '(' + ','.join(str(v) for v in perm.images) + ')'


def format_matrix(rows) -> str:
    return '(' + ','.join('(' + ','.join(format_elem(x) for x in row) + ')' for row in rows) + ')'


def _primitive_integer_row(row: Sequence[Fraction]) -> List[int]:
    den = 1
    for c in row:
        den = lcm(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in row]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [c // g for c in ints] if g else ints


def format_linear_form(coeffs: Sequence, variables: Sequence[str] = VARIABLES) -> str:
    """线性型的字符串，变量按 x, y, z, w 顺序输出"""
    parts = []
    for c, v in zip(coeffs, variables):
        if c == 0:
            continue
        if isinstance(c, (int, Fraction)):
            parts.append(_format_term(Fraction(c), v, not parts))
            continue
        if c.is_rational():
            parts.append(_format_term(c.to_fraction(), v, not parts))
        else:
            parts.append(('' if not parts else '+') + f"({format_elem(c)}){v}")
    return ''.join(parts) if parts else '0'


def format_line_ideal(line) -> str:
    """直线理想的规范字符串，例如 (y+z,x-w)

    取包含该直线的两张平面，按 y, x, z, w 的列顺序化为行最简形；
    有理系数时化成本原整数系数且主元为正。
    """
    from halfgrids.core.exactalg import rref
    planes = line.planes()
    permuted = [[h[k] for k in IDEAL_PIVOT_ORDER] for h in planes]
    reduced, _ = rref(permuted)
    forms = []
    for row in reduced:
        coeffs = [None] * 4
        for pos, k in enumerate(IDEAL_PIVOT_ORDER):
            coeffs[k] = row[pos]
        if all(c.is_rational() for c in coeffs):
            ints = _primitive_integer_row([c.to_fraction() for c in coeffs])
            forms.append(format_linear_form(ints))
        else:
            forms.append(format_linear_form(coeffs))
    return '(' + ','.join(forms) + ')'


_TERM_RE = re.compile(r'([+-]?)(\d*(?:/\d+)?)([xyzw])')


def parse_linear_form(text: str) -> List[Fraction]:
    """解析形如 "x-z+2w" 的有理系数线性型

    Returns:
        [a, b, c, d]，对应 a·x + b·y + c·z + d·w
    """
    compact = text.replace(' ', '')
    coeffs = [Fraction(0)] * 4
    pos = 0
    for match in _TERM_RE.finditer(compact):
        if match.start() != pos:
            raise InputFormatError(f"无法解析线性型: {text!r}")
        sign, mag, var = match.groups()
        value = Fraction(mag) if mag else Fraction(1)
        if sign == '-':
            value = -value
        coeffs[VARIABLES.index(var)] += value
        pos = match.end()
    if pos != len(compact) or not compact:
        raise InputFormatError(f"无法解析线性型: {text!r}")
    return coeffs


def parse_ideal(text: str) -> List[List[Fraction]]:
    """解析 "(y+z,x-w)" 形式的理想，返回两条线性型"""
    body = text.strip()
    if not (body.startswith('(') and body.endswith(')')):
        raise InputFormatError(f"无法解析理想: {text!r}")
    return [parse_linear_form(part) for part in body[1:-1].split(',')]


def format_table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    """等宽文本表格"""
    widths = [len(h) for h in headers]
    for row in rows:
        for k, cell in enumerate(row):
            widths[k] = max(widths[k], len(cell))
    lines = [' | '.join(h.ljust(w) for h, w in zip(headers, widths)),
             '-+-'.join('-' * w for w in widths)]
    for row in rows:
        lines.append(' | '.join(c.ljust(w) for c, w in zip(row, widths)))
    return '\n'.join(lines)
