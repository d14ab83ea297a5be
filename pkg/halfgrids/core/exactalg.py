#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
精确算术模块

提供有理数与分圆域 Q(ζ_N) 上的精确运算，以及这些域上的稠密线性代数
（行最简形、零空间、求解、行列式、求逆）。

分圆域元素采用幂基 1, ζ, ..., ζ^{φ(N)-1} 下的坐标表示，内部存储为
整数分子元组加公共正分母，并始终约化到规范形式，因此相等性可以逐项比较。
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy import I, QQ, Poly, Symbol, exp, factorint, pi
from sympy.ntheory import legendre_symbol

from halfgrids.core.errors import (
    DivisionByZeroError, FieldError, InputFormatError, InvariantError, NotInFieldError
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# 多项式辅助函数（系数按升幂排列）
# ---------------------------------------------------------------------------

def _int_poly_divexact(num: Sequence[int], den: Sequence[int]) -> List[int]:
    """整系数多项式精确除以首一多项式"""
    num = list(num)
    dn = len(den) - 1
    quot = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        if c:
            quot[k - dn] = c
            for t in range(dn + 1):
                num[k - dn + t] -= c * den[t]
    if any(num):
        raise FieldError("多项式除法不能整除")
    return quot


@lru_cache(maxsize=None)
def _cyclotomic_int(n: int) -> Tuple[int, ...]:
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _int_poly_divexact(poly, _cyclotomic_int(d))
    return tuple(poly)


def _poly_trim(p: List[Fraction]) -> List[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_sub(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    size = max(len(a), len(b))
    out = [(a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(size)]
    return _poly_trim(out)


def _poly_mul(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_trim(out)


def _poly_divmod(a: List[Fraction], b: List[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    quot = [Fraction(0)] * max(len(a) - db, 1)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if c:
            f = c / lead
            quot[k - db] = f
            for t in range(db + 1):
                rem[k - db + t] -= f * b[t]
    return _poly_trim(quot), _poly_trim(rem[:db])


def _reduce(nums: List[int], n: int) -> List[int]:
    """整系数多项式模 Φ_n 约化，返回长度为 φ(n) 的系数列表"""
    phi = _cyclotomic_int(n)
    deg = len(phi) - 1
    nums = list(nums)
    for k in range(len(nums) - 1, deg - 1, -1):
        c = nums[k]
        if c:
            base = k - deg
            for t in range(deg):
                if phi[t]:
                    nums[base + t] -= c * phi[t]
            nums[k] = 0
    if len(nums) < deg:
        nums.extend([0] * (deg - len(nums)))
    return nums[:deg]


def cyclotomic_polynomial(n: int) -> Tuple[Fraction, ...]:
    """返回第 n 个分圆多项式 Φ_n（升幂系数）

    通过 x^n - 1 依次除以所有真因子 d 的 Φ_d 得到。

    Args:
        n: 正整数

    Returns:
        Φ_n 的系数元组，首一，次数 φ(n)
    """
    if n < 1:
        raise FieldError(f"分圆多项式的阶必须为正整数: {n}")
    return tuple(Fraction(c) for c in _cyclotomic_int(n))


def totient(n: int) -> int:
    """欧拉函数 φ(n)，即 Φ_n 的次数"""
    return len(_cyclotomic_int(n)) - 1


def format_rational(x: Fraction) -> str:
    """有理数的规范 "p/q" 字符串"""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text) -> Fraction:
    """解析 "p/q"、整数字符串或整数"""
    if isinstance(text, bool):
        raise InputFormatError(f"无法解析有理数: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise InputFormatError(f"无法解析有理数 {text!r}: {e}")


# ---------------------------------------------------------------------------
# 分圆域
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldContext:
    """一次计算会话所用的分圆域 Q(ζ_N)"""
    conductor: int
    cyclotomic_polynomial: Tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.cyclotomic_polynomial) - 1

    def zeta(self, k: int = 1) -> "CycElem":
        return CycElem.zeta(self.conductor, k)

    def element(self, value) -> "CycElem":
        return as_elem(value, self.conductor)

    def zero(self) -> "CycElem":
        return CycElem.from_rational(0, self.conductor)

    def one(self) -> "CycElem":
        return CycElem.from_rational(1, self.conductor)


@lru_cache(maxsize=None)
def get_context(n: int) -> FieldContext:
    """按导体缓存的域上下文"""
    return FieldContext(n, cyclotomic_polynomial(n))


class CycElem:
    """分圆域 Q(ζ_N) 中的元素，不可变

    内部表示: 整数分子元组 _num（长度 φ(N)）与正分母 _den，
    gcd(所有分子, 分母) = 1，零元素的分母为 1。
    """

    __slots__ = ('conductor', '_num', '_den', '_hash')

    def __init__(self, conductor: int, nums: Iterable[int], den: int = 1):
        n = int(conductor)
        if n < 1:
            raise FieldError(f"导体必须为正整数: {conductor}")
        nums = _reduce([int(c) for c in nums], n)
        den = int(den)
        if den == 0:
            raise DivisionByZeroError("分母为零")
        if den < 0:
            nums = [-c for c in nums]
            den = -den
        g = den
        for c in nums:
            if c:
                g = gcd(g, c)
        if not any(nums):
            den = 1
        elif g > 1:
            nums = [c // g for c in nums]
            den //= g
        self.conductor = n
        self._num = tuple(nums)
        self._den = den
        self._hash = None

    # ---- 构造 ----

    @classmethod
    def from_rational(cls, value, conductor: int = 1) -> "CycElem":
        q = Fraction(value)
        deg = totient(conductor)
        return cls(conductor, [q.numerator] + [0] * (deg - 1), q.denominator)

    @classmethod
    def from_coeffs(cls, conductor: int, coeffs: Iterable) -> "CycElem":
        """由幂基系数构造，系数个数可以超过 φ(N)（自动约化）"""
        coeffs = [Fraction(c) for c in coeffs]
        if not coeffs:
            return cls.from_rational(0, conductor)
        den = 1
        for c in coeffs:
            den = lcm(den, c.denominator)
        return cls(conductor, [c.numerator * (den // c.denominator) for c in coeffs], den)

    @classmethod
    def zeta(cls, conductor: int, k: int = 1) -> "CycElem":
        """本原单位根 ζ_N 的 k 次幂"""
        k %= conductor
        return cls(conductor, [0] * k + [1])

    # ---- 基本属性 ----

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def context(self) -> FieldContext:
        return get_context(self.conductor)

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise NotInFieldError(f"元素不是有理数: {self!r}")
        return Fraction(self._num[0], self._den)

    def integer_parts(self) -> Tuple[Tuple[int, ...], int]:
        """返回 (整数分子元组, 分母)"""
        return self._num, self._den

    def __bool__(self):
        return not self.is_zero()

    # ---- 运算 ----

    def _coerce(self, other):
        if isinstance(other, CycElem):
            if other.conductor == self.conductor:
                return self, other
            if other.conductor % self.conductor == 0:
                return embed(self, other.conductor), other
            if self.conductor % other.conductor == 0:
                return self, embed(other, self.conductor)
            raise FieldError(f"导体不兼容: {self.conductor} 与 {other.conductor}")
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self, CycElem.from_rational(other, self.conductor)
        return None

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if a._den == b._den:
            return CycElem(a.conductor, [x + y for x, y in zip(a._num, b._num)], a._den)
        return CycElem(a.conductor,
                       [x * b._den + y * a._den for x, y in zip(a._num, b._num)],
                       a._den * b._den)

    __radd__ = __add__

    def __neg__(self):
        return CycElem(self.conductor, [-x for x in self._num], self._den)

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b + (-a)

    def __mul__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if b.is_rational():
            c = b._num[0]
            return CycElem(a.conductor, [x * c for x in a._num], a._den * b._den)
        if a.is_rational():
            c = a._num[0]
            return CycElem(a.conductor, [y * c for y in b._num], a._den * b._den)
        out = [0] * (len(a._num) + len(b._num) - 1)
        for i, x in enumerate(a._num):
            if x:
                for j, y in enumerate(b._num):
                    if y:
                        out[i + j] += x * y
        return CycElem(a.conductor, out, a._den * b._den)

    __rmul__ = __mul__

    def inverse(self) -> "CycElem":
        """扩展欧几里得算法求逆"""
        if self.is_zero():
            raise DivisionByZeroError("零元素不可逆")
        if self.is_rational():
            return CycElem.from_rational(Fraction(self._den, self._num[0]), self.conductor)
        modulus = [Fraction(c) for c in _cyclotomic_int(self.conductor)]
        r0, r1 = modulus, _poly_trim([Fraction(c) for c in self._num])
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r0 为非零常数
        scale = Fraction(self._den) / r0[0]
        return CycElem.from_coeffs(self.conductor, [c * scale for c in s0])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise DivisionByZeroError("除数为零")
            q = Fraction(other)
            return CycElem(self.conductor, [x * q.denominator for x in self._num],
                           self._den * q.numerator)
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b * a.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = CycElem.from_rational(1, self.conductor)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # ---- 比较与哈希 ----

    def __eq__(self, other):
        if isinstance(other, CycElem):
            if other.conductor == self.conductor:
                return self._num == other._num and self._den == other._den
            m = lcm(self.conductor, other.conductor)
            a, b = embed(self, m), embed(other, m)
            return a._num == b._num and a._den == b._den
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_rational() and Fraction(self._num[0], self._den) == other
        return NotImplemented

    def __hash__(self):
        # 有理元素与对应的 Fraction 哈希一致；其余元素按最小导体上的表示哈希
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._num[0], self._den))
            else:
                c = self.canonical()
                self._hash = hash((c.conductor, c._num, c._den))
        return self._hash

    def canonical(self) -> "CycElem":
        """同一数值在最小分圆域上的表示

        包含该元素的 Q(ζ_d) 中 d 最小者唯一且整除 N，因此结果与元素所用的导体无关。
        """
        n = self.conductor
        if self.is_rational():
            return CycElem.from_rational(self.to_fraction(), 1)
        for d in range(3, n):
            if n % d == 0:
                try:
                    return descend(self, d)
                except NotInFieldError:
                    continue
        return self

    def sort_key(self) -> Tuple:
        """确定性排序键（同一导体内）"""
        return tuple(Fraction(c, self._den) for c in self._num)

    def __repr__(self):
        from halfgrids.utils.format_utils import format_elem
        return format_elem(self)

    # ---- 序列化 ----

    def to_json(self) -> dict:
        return {"conductor": self.conductor,
                "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj, conductor: Optional[int] = None) -> "CycElem":
        """从 JSON 值恢复元素，接受 {"conductor","coeffs"}、"p/q" 字符串或整数"""
        if isinstance(obj, dict):
            try:
                n = int(obj["conductor"])
                coeffs = [parse_rational(c) for c in obj["coeffs"]]
            except (KeyError, TypeError, ValueError) as e:
                raise InputFormatError(f"无效的域元素: {obj!r} ({e})")
            if len(coeffs) != totient(n):
                raise InputFormatError(f"系数个数 {len(coeffs)} 与 φ({n}) 不符")
            elem = cls.from_coeffs(n, coeffs)
        else:
            elem = cls.from_rational(parse_rational(obj), 1)
        if conductor is not None:
            elem = embed(elem, conductor)
        return elem


def as_elem(value, conductor: int = 1) -> CycElem:
    """把整数、有理数或域元素转换到给定导体的域中"""
    if isinstance(value, CycElem):
        return embed(value, conductor) if value.conductor != conductor else value
    return CycElem.from_rational(value, conductor)


def embed(a: CycElem, m: int) -> CycElem:
    """域嵌入 Q(ζ_N) → Q(ζ_M)，ζ_N ↦ ζ_M^{M/N}

    Args:
        a: 导体为 N 的元素
        m: 目标导体，必须是 N 的倍数

    Returns:
        嵌入后的元素
    """
    n = a.conductor
    if m % n:
        raise FieldError(f"无法嵌入: {n} 不整除 {m}")
    if m == n:
        return a
    step = m // n
    nums, den = a.integer_parts()
    spread = [0] * ((len(nums) - 1) * step + 1)
    for k, c in enumerate(nums):
        spread[k * step] = c
    return CycElem(m, spread, den)


def common_conductor(values: Iterable) -> int:
    n = 1
    for v in values:
        if isinstance(v, CycElem):
            n = lcm(n, v.conductor)
    return n


def unify(values: Iterable, conductor: Optional[int] = None) -> List[CycElem]:
    """把一组数值统一到同一个分圆域（默认取各导体的最小公倍数）"""
    values = list(values)
    n = conductor or common_conductor(values)
    return [as_elem(v, n) for v in values]


@lru_cache(maxsize=None)
def _descent_projection(m: int, n: int) -> Tuple[Tuple[int, ...], Tuple[Tuple[Fraction, ...], ...]]:
    """子域 Q(ζ_n) ⊂ Q(ζ_m) 的坐标投影

    返回大域幂基中一组线性无关的坐标下标，以及由这些坐标求子域坐标的有理矩阵。
    """
    basis = [embed(CycElem.zeta(n, k), m).coeffs for k in range(totient(n))]
    _, pivots = rref(basis)
    square = [[basis[k][r] for k in range(len(basis))] for r in pivots]
    inv = inverse(square)
    return tuple(pivots), tuple(tuple(c.to_fraction() for c in row) for row in inv)


def descend(a: CycElem, n: int) -> CycElem:
    """把元素下放到子域 Q(ζ_n)

    Raises:
        NotInFieldError: 元素不在子域中
    """
    m = a.conductor
    if m % n:
        raise FieldError(f"{n} 不整除 {m}，不是子域")
    if m == n:
        return a
    pivots, inv = _descent_projection(m, n)
    x = a.coeffs
    result = CycElem.from_coeffs(n, [sum(row[t] * x[r] for t, r in enumerate(pivots)) for row in inv])
    if embed(result, m) != a:
        raise NotInFieldError(f"元素不在 Q(ζ_{n}) 中")
    return result


# ---------------------------------------------------------------------------
# 平方根（单项式被开方数用高斯和直接构造，其余在数域上分解 x^2 - r）
# ---------------------------------------------------------------------------

def monomial_form(r: CycElem) -> Optional[Tuple[Fraction, int]]:
    """若 r = c·ζ_N^k（c 有理），返回 (c, k)，否则返回 None"""
    n = r.conductor
    for k in range(n):
        t = r * CycElem.zeta(n, -k)
        if t.is_rational():
            return t.to_fraction(), k
    return None


def _sqrt_prime(p: int) -> CycElem:
    """素数 p 的平方根，用二次高斯和构造"""
    if p == 2:
        return CycElem.zeta(8, 1) + CycElem.zeta(8, 7)
    gauss = CycElem(p, [0] + [legendre_symbol(a, p) for a in range(1, p)])
    if p % 4 == 1:
        return gauss
    # gauss^2 = -p，除以 i
    return embed(gauss, 4 * p) * (-CycElem.zeta(4 * p, p))


@lru_cache(maxsize=None)
def _number_field(n: int):
    """sympy 中以 ζ_n 为本原元的数域 Q(ζ_n)"""
    field = QQ.algebraic_field(exp(2 * pi * I / n))
    expected = [QQ(c) for c in reversed(_cyclotomic_int(n))]
    if list(field.mod.to_list()) != expected:
        raise InvariantError(f"sympy 给出的 ζ_{n} 极小多项式不是 Φ_{n}")
    return field


def _sqrt_by_factoring(r: CycElem) -> Optional[CycElem]:
    """在 Q(ζ_N) 上分解 x^2 - r，有一次因子时返回其根"""
    n = r.conductor
    field = _number_field(n)
    coeffs = [QQ(c.numerator, c.denominator) for c in reversed(r.coeffs)]
    while coeffs and not coeffs[0]:
        coeffs.pop(0)
    a = field.new(coeffs)
    _, factors = Poly([field.one, field.zero, -a], Symbol('x'), domain=field).factor_list()
    for f, _ in factors:
        if f.degree() != 1:
            continue
        lead, const = f.rep.to_list()
        value = -const / lead
        root = CycElem.from_coeffs(
            n, reversed([Fraction(int(c.numerator), int(c.denominator)) for c in value.to_list()]))
        if root * root != r:
            raise InvariantError(f"分解得到的根平方后不等于 {r!r}")
        return root
    return None


def sqrt_in_field(r: CycElem) -> Optional[CycElem]:
    """在 r 所在的域中求平方根

    r = c·ζ_N^k 时由高斯和直接构造，其余情形在 Q(ζ_N) 上分解 x^2 - r。

    Returns:
        平方根（两个根之一）；若 r 不是该域中的平方则返回 None
    """
    if r.is_zero():
        return r
    n = r.conductor
    form = monomial_form(r)
    if form is None:
        result = _sqrt_by_factoring(r)
        logger.debug(f"平方根: sqrt({r!r}) = {result!r}")
        return result
    c, k = form
    radicand = c.numerator * c.denominator
    square_part, squarefree = 1, 1 if radicand > 0 else -1
    for p, e in factorint(abs(radicand)).items():
        square_part *= p ** (e // 2)
        if e % 2:
            squarefree *= p
    factors = [CycElem.zeta(2 * n, k)]
    if squarefree < 0:
        factors.append(CycElem.zeta(4))
    factors.extend(_sqrt_prime(p) for p in factorint(abs(squarefree)))
    big = lcm(*[f.conductor for f in factors], n)
    root = CycElem.from_rational(Fraction(square_part, c.denominator), big)
    for f in factors:
        root = root * embed(f, big)
    try:
        result = descend(root, n)
    except NotInFieldError:
        return None
    logger.debug(f"平方根: sqrt({r!r}) = {result!r}")
    return result


# ---------------------------------------------------------------------------
# 稠密线性代数（Gauss-Jordan 消元，每个主元只求一次逆）
# ---------------------------------------------------------------------------

Matrix = List[List[CycElem]]


def to_matrix(rows: Iterable[Iterable], conductor: Optional[int] = None) -> Matrix:
    """把嵌套序列统一转换为同一域上的矩阵"""
    rows = [list(r) for r in rows]
    n = conductor or common_conductor(x for r in rows for x in r)
    return [[as_elem(x, n) for x in r] for r in rows]


def rref(matrix: Iterable[Iterable], ncols: Optional[int] = None) -> Tuple[Matrix, List[int]]:
    """行最简形

    Returns:
        (非零行列表, 主元列下标列表)
    """
    rows = to_matrix(matrix)
    if not rows:
        return [], []
    width = len(rows[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(width):
        pivot = next((k for k in range(r, len(rows)) if rows[k][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv if x else x for x in rows[r]]
        pivot_row = rows[r]
        for k in range(len(rows)):
            f = rows[k][c]
            if k != r and f:
                rows[k] = [a - f * b if b else a for a, b in zip(rows[k], pivot_row)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(matrix: Iterable[Iterable]) -> int:
    return len(rref(matrix)[1])


def kernel(matrix: Iterable[Iterable], ncols: Optional[int] = None,
           conductor: Optional[int] = None) -> List[Tuple[CycElem, ...]]:
    """零空间的一组基

    Args:
        matrix: 矩阵（行列表）
        ncols: 列数；矩阵没有行时必须给出
        conductor: 矩阵没有行时基向量所在的导体

    Returns:
        基向量列表，长度为 列数 - 秩
    """
    rows = to_matrix(matrix)
    width = len(rows[0]) if rows else ncols
    if width is None:
        raise FieldError("空矩阵必须给出列数")
    n = common_conductor(x for r in rows for x in r) if rows else (conductor or 1)
    reduced, pivots = rref(rows, width)
    zero, one = CycElem.from_rational(0, n), CycElem.from_rational(1, n)
    pivot_set = set(pivots)
    basis = []
    for free in range(width):
        if free in pivot_set:
            continue
        vec = [zero] * width
        vec[free] = one
        for row, p in zip(reduced, pivots):
            vec[p] = -row[free]
        basis.append(tuple(vec))
    return basis


def solve(matrix: Iterable[Iterable], rhs: Sequence) -> Optional[List[CycElem]]:
    """求解 A·x = b 的一个解，无解时返回 None"""
    rows = [list(r) + [b] for r, b in zip(matrix, rhs)]
    width = len(rows[0]) - 1
    n = common_conductor(x for r in rows for x in r)
    reduced, pivots = rref(rows)
    if pivots and pivots[-1] == width:
        return None
    sol = [CycElem.from_rational(0, n)] * width
    for row, p in zip(reduced, pivots):
        sol[p] = row[width]
    return sol


def determinant(matrix: Iterable[Iterable]) -> CycElem:
    rows = to_matrix(matrix)
    size = len(rows)
    det = CycElem.from_rational(1, common_conductor(x for r in rows for x in r))
    for c in range(size):
        pivot = next((k for k in range(c, size) if rows[k][c]), None)
        if pivot is None:
            return det * 0
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = -det
        det = det * rows[c][c]
        inv = rows[c][c].inverse()
        for k in range(c + 1, size):
            f = rows[k][c]
            if f:
                f = f * inv
                rows[k] = [a - f * b if b else a for a, b in zip(rows[k], rows[c])]
    return det


def inverse(matrix: Iterable[Iterable]) -> Matrix:
    rows = to_matrix(matrix)
    size = len(rows)
    n = common_conductor(x for r in rows for x in r)
    aug = [r + [CycElem.from_rational(int(i == j), n) for j in range(size)]
           for i, r in enumerate(rows)]
    reduced, pivots = rref(aug)
    if pivots[:size] != list(range(size)):
        raise DivisionByZeroError("矩阵不可逆")
    return [row[size:] for row in reduced[:size]]


def mat_vec(matrix: Sequence[Sequence], vec: Sequence) -> List[CycElem]:
    out = []
    for row in matrix:
        acc = None
        for a, b in zip(row, vec):
            if a and b:
                term = a * b
                acc = term if acc is None else acc + term
        out.append(acc if acc is not None else as_elem(0, common_conductor(list(row) + list(vec))))
    return out


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    cols = list(zip(*b))
    return [mat_vec([list(c) for c in cols], row) for row in a]
