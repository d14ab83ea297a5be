#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
精确射影几何模块

P^1 与 P^3 中的点、Plücker 直线、平面、二次曲面、关联关系与交比，
以及外直线构造所需的几个子程序（过点截线、二次曲面第二交点、
与四条直线相交的第二条直线、五点射影变换）。

直线以 Plücker 6 维向量 (p01, p02, p03, p12, p13, p23) 存储，
对偶坐标 (p23, -p13, p12, p03, -p02, p01) 对应两张平面的外积。
"""

import logging
from enum import Enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple

from halfgrids.core.errors import DegenerateInputError, InvariantError
from halfgrids.core.exactalg import (
    CycElem, as_elem, common_conductor, determinant, embed, inverse, kernel,
    mat_mul, mat_vec, solve, unify
)

logger = logging.getLogger(__name__)

PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
# 二次曲面的单项式 x_i x_j（i <= j）
QUADRIC_MONOMIALS = tuple((i, j) for i in range(4) for j in range(i, 4))


def normalize_vector(values: Sequence[CycElem]) -> Tuple[CycElem, ...]:
    """除以第一个非零分量"""
    lead = next(v for v in values if v)
    if lead == 1:
        return tuple(values)
    inv = lead.inverse()
    return tuple(v * inv if v else v for v in values)


def _wedge(a: Sequence[CycElem], b: Sequence[CycElem]) -> List[CycElem]:
    return [a[i] * b[j] - a[j] * b[i] for i, j in PAIRS]


def _swap_dual(v: Sequence[CycElem]) -> List[CycElem]:
    """Plücker 坐标与对偶坐标互换（自逆映射）"""
    return [v[5], -v[4], v[3], v[2], -v[1], v[0]]


def _antisymmetric(v: Sequence[CycElem]) -> List[List[CycElem]]:
    zero = v[0] * 0
    mat = [[zero] * 4 for _ in range(4)]
    for (i, j), c in zip(PAIRS, v):
        mat[i][j] = c
        mat[j][i] = -c
    return mat


def _proportional(u: Sequence[CycElem], v: Sequence[CycElem]) -> bool:
    for i in range(len(u)):
        for j in range(i + 1, len(u)):
            if u[i] * v[j] != u[j] * v[i]:
                return False
    return True


class ProjPoint:
    """射影点，坐标为同一分圆域中的元素，相等性按比例判断"""

    __slots__ = ('coords', '_key')

    def __init__(self, coords, conductor: Optional[int] = None):
        coords = tuple(unify(coords, conductor))
        if len(coords) < 2:
            raise DegenerateInputError("射影点至少需要两个坐标")
        if not any(coords):
            raise DegenerateInputError("零向量不是射影点")
        self.coords = coords
        self._key = None

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    @property
    def conductor(self) -> int:
        return self.coords[0].conductor

    def key(self) -> Tuple[CycElem, ...]:
        if self._key is None:
            self._key = normalize_vector(self.coords)
        return self._key

    def normalized(self) -> "ProjPoint":
        return ProjPoint(self.key())

    def primitive(self) -> "ProjPoint":
        """缩放为整数分子且公因子为 1 的代表元"""
        den = 1
        for c in self.coords:
            den = lcm(den, c.integer_parts()[1])
        scaled = [c * den for c in self.coords]
        g = 0
        for c in scaled:
            for x in c.integer_parts()[0]:
                g = gcd(g, x)
        if g > 1:
            scaled = [c / g for c in scaled]
        return ProjPoint(scaled)

    def embed(self, n: int) -> "ProjPoint":
        return ProjPoint([embed(c, n) for c in self.coords])

    def sort_key(self):
        return tuple(c.sort_key() for c in self.key())

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, k):
        return self.coords[k]

    def __iter__(self):
        return iter(self.coords)

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.dim == other.dim and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        from halfgrids.utils.format_utils import format_point
        return format_point(self)

    def to_json(self) -> list:
        return [c.to_json() for c in self.coords]

    @classmethod
    def from_json(cls, obj, conductor: Optional[int] = None) -> "ProjPoint":
        return cls([CycElem.from_json(c) for c in obj], conductor)


class Plane3:
    """P^3 中的平面 a·x + b·y + c·z + d·w = 0"""

    __slots__ = ('coeffs', '_key')

    def __init__(self, coeffs, conductor: Optional[int] = None):
        coeffs = tuple(unify(coeffs, conductor))
        if len(coeffs) != 4 or not any(coeffs):
            raise DegenerateInputError("平面需要 4 个不全为零的系数")
        self.coeffs = coeffs
        self._key = None

    def key(self):
        if self._key is None:
            self._key = normalize_vector(self.coeffs)
        return self._key

    def evaluate(self, point: ProjPoint) -> CycElem:
        return sum((a * x for a, x in zip(self.coeffs, point.coords)), self.coeffs[0] * 0)

    def contains(self, point: ProjPoint) -> bool:
        return not self.evaluate(point)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __eq__(self, other):
        if not isinstance(other, Plane3):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        from halfgrids.utils.format_utils import format_linear_form
        return f"Plane3({format_linear_form(self.coeffs)}=0)"


class ProjLine3:
    """P^3 中的直线（Plücker 坐标），同时缓存对偶形式"""

    __slots__ = ('pluecker', '_dual', '_key')

    def __init__(self, pluecker, conductor: Optional[int] = None):
        p = tuple(unify(pluecker, conductor))
        if len(p) != 6 or not any(p):
            raise DegenerateInputError("Plücker 坐标需要 6 个不全为零的分量")
        if p[0] * p[5] - p[1] * p[4] + p[2] * p[3]:
            raise DegenerateInputError("Plücker 关系不成立")
        self.pluecker = p
        self._dual = None
        self._key = None

    @property
    def conductor(self) -> int:
        return self.pluecker[0].conductor

    @property
    def dual(self) -> Tuple[CycElem, ...]:
        if self._dual is None:
            self._dual = tuple(_swap_dual(self.pluecker))
        return self._dual

    def primal_matrix(self):
        return _antisymmetric(self.pluecker)

    def dual_matrix(self):
        return _antisymmetric(self.dual)

    def key(self):
        if self._key is None:
            self._key = normalize_vector(self.pluecker)
        return self._key

    def contains(self, point: ProjPoint) -> bool:
        return on_line(point, self)

    def points(self) -> Tuple[ProjPoint, ProjPoint]:
        """直线上的两个不同点（取自 Plücker 矩阵的列）"""
        mat = self.primal_matrix()
        cols = [[mat[i][k] for i in range(4)] for k in range(4)]
        cols = [c for c in cols if any(c)]
        first = cols[0]
        second = next(c for c in cols[1:] if not _proportional(first, c))
        return ProjPoint(first), ProjPoint(second)

    def planes(self) -> Tuple[Plane3, Plane3]:
        """包含该直线的两张不同平面"""
        mat = self.dual_matrix()
        cols = [[mat[i][k] for i in range(4)] for k in range(4)]
        cols = [c for c in cols if any(c)]
        first = cols[0]
        second = next(c for c in cols[1:] if not _proportional(first, c))
        return Plane3(first), Plane3(second)

    def embed(self, n: int) -> "ProjLine3":
        return ProjLine3([embed(c, n) for c in self.pluecker])

    def __eq__(self, other):
        if not isinstance(other, ProjLine3):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        from halfgrids.utils.format_utils import format_line_ideal
        return f"ProjLine3{format_line_ideal(self)}"

    def to_json(self) -> list:
        return [c.to_json() for c in self.pluecker]

    @classmethod
    def from_json(cls, obj, conductor: Optional[int] = None) -> "ProjLine3":
        return cls([CycElem.from_json(c) for c in obj], conductor)


# ---------------------------------------------------------------------------
# 关联运算
# ---------------------------------------------------------------------------

def line_through(p: ProjPoint, q: ProjPoint) -> ProjLine3:
    """过两点的直线"""
    if p.dim != 3 or q.dim != 3:
        raise DegenerateInputError("直线只在 P^3 中定义")
    coords = unify(p.coords + q.coords)
    v = _wedge(coords[:4], coords[4:])
    if not any(v):
        raise DegenerateInputError(f"两点重合，无法确定直线: {p!r}")
    return ProjLine3(v)


def meet_planes(h1: Plane3, h2: Plane3) -> ProjLine3:
    """两张平面的交线"""
    coeffs = unify(h1.coeffs + h2.coeffs)
    q = _wedge(coeffs[:4], coeffs[4:])
    if not any(q):
        raise DegenerateInputError("两张平面相同，交线不确定")
    return ProjLine3(_swap_dual(q))


def plane_through(line: ProjLine3, p: ProjPoint) -> Plane3:
    """包含直线与点的平面"""
    v = mat_vec(line.dual_matrix(), unify(p.coords, common_conductor(line.pluecker + p.coords)))
    if not any(v):
        raise DegenerateInputError(f"点 {p!r} 在直线上，平面不确定")
    return Plane3(v)


def meet_line_plane(line: ProjLine3, h: Plane3) -> ProjPoint:
    """直线与平面的交点"""
    v = mat_vec(line.primal_matrix(), unify(h.coeffs, common_conductor(line.pluecker + h.coeffs)))
    if not any(v):
        raise DegenerateInputError("直线位于平面内，交点不确定")
    return ProjPoint(v)


def on_line(p: ProjPoint, line: ProjLine3) -> bool:
    """点是否在直线上（对偶矩阵作用为零）"""
    d = line.dual_matrix()
    x = p.coords
    for row in d:
        acc = None
        for a, b in zip(row, x):
            if a and b:
                t = a * b
                acc = t if acc is None else acc + t
        if acc is not None and acc:
            return False
    return True


def reciprocal_product(l1: ProjLine3, l2: ProjLine3) -> CycElem:
    """互反积，为零当且仅当两直线共面"""
    total = None
    for a, b in zip(l1.pluecker, l2.dual):
        if a and b:
            t = a * b
            total = t if total is None else total + t
    return total if total is not None else l1.pluecker[0] * 0


def are_skew(l1: ProjLine3, l2: ProjLine3) -> bool:
    return bool(reciprocal_product(l1, l2))


def lines_meet(l1: ProjLine3, l2: ProjLine3) -> Optional[ProjPoint]:
    """两直线的交点；异面时返回 None

    Raises:
        DegenerateInputError: 两直线重合
    """
    if reciprocal_product(l1, l2):
        return None
    if l1 == l2:
        raise DegenerateInputError("两直线重合，交点不确定")
    d2 = l2.dual_matrix()
    p1 = l1.primal_matrix()
    for k in range(4):
        h = [d2[i][k] for i in range(4)]
        if not any(h):
            continue
        x = mat_vec(p1, h)
        if any(x):
            return ProjPoint(x)
    raise InvariantError("共面直线未找到交点")


def transversal_through_point(p: ProjPoint, a: ProjLine3, b: ProjLine3) -> ProjLine3:
    """过点 p 且与异面直线 a、b 都相交的直线

    取平面 span(a, p) 与 span(b, p) 的交线。
    """
    if on_line(p, a) or on_line(p, b):
        raise DegenerateInputError(f"点 {p!r} 位于给定直线上")
    h1 = plane_through(a, p)
    h2 = plane_through(b, p)
    if h1 == h2:
        raise DegenerateInputError("两张张成平面重合，截线不唯一")
    return meet_planes(h1, h2)


def line_coordinates(x: ProjPoint, a: ProjPoint, b: ProjPoint) -> Tuple[CycElem, CycElem]:
    """把 x 写成 s·a + t·b，返回 (s, t)"""
    va, vb, vx = a.coords, b.coords, x.coords
    for i, j in combinations(range(len(va)), 2):
        det = va[i] * vb[j] - va[j] * vb[i]
        if det:
            inv = det.inverse()
            s = (vx[i] * vb[j] - vx[j] * vb[i]) * inv
            t = (va[i] * vx[j] - va[j] * vx[i]) * inv
            if all(s * u + t * v == w for u, v, w in zip(va, vb, vx)):
                return s, t
            raise DegenerateInputError(f"点 {x!r} 不在直线上")
    raise DegenerateInputError("基点重合")


def apply_matrix(matrix, p: ProjPoint) -> ProjPoint:
    n = common_conductor([c for row in matrix for c in row] + list(p.coords))
    return ProjPoint(mat_vec(matrix, unify(p.coords, n)))


# ---------------------------------------------------------------------------
# 交比
# ---------------------------------------------------------------------------

class CrossRatioKind(str, Enum):
    GENERAL = 'General'
    HARMONIC = 'Harmonic'
    ANHARMONIC = 'Anharmonic'


@dataclass(frozen=True)
class CrossRatioClass:
    """交比及其类型"""
    value: CycElem
    kind: CrossRatioKind


def classify_cross_ratio(value: CycElem) -> CrossRatioKind:
    if value in (-1, Fraction(1, 2), 2):
        return CrossRatioKind.HARMONIC
    if not (value * value - value + 1):
        return CrossRatioKind.ANHARMONIC
    return CrossRatioKind.GENERAL


def _binary_det(p: Sequence[CycElem], q: Sequence[CycElem]) -> CycElem:
    return p[0] * q[1] - p[1] * q[0]


def cross_ratio(p1: ProjPoint, p2: ProjPoint, p3: ProjPoint, p4: ProjPoint) -> CrossRatioClass:
    """四个互异共线点的交比

    j = ((x1y3-y1x3)(x2y4-y2x4)) / ((x1y4-y1x4)(x2y3-y2x3))；
    P^3 中的点先在 P1、P2 代表元构成的基下取得 P^1 坐标。
    """
    pts = [p1, p2, p3, p4]
    if len({p.dim for p in pts}) != 1:
        raise DegenerateInputError("交比的四个点维数不一致")
    if p1.dim == 1:
        coords = [tuple(unify(p.coords, common_conductor(c for q in pts for c in q.coords)))
                  for p in pts]
    else:
        for a, b in combinations(pts, 2):
            if a == b:
                raise DegenerateInputError("交比的四个点必须互异")
        line = line_through(p1, p2)
        if not (on_line(p3, line) and on_line(p4, line)):
            raise DegenerateInputError("交比的四个点不共线")
        one, zero = as_elem(1, p1.conductor), as_elem(0, p1.conductor)
        coords = [(one, zero), (zero, one),
                  line_coordinates(p3, p1, p2), line_coordinates(p4, p1, p2)]
    for a, b in combinations(coords, 2):
        if not _binary_det(a, b):
            raise DegenerateInputError("交比的四个点必须互异")
    x1, x2, x3, x4 = coords
    value = (_binary_det(x1, x3) * _binary_det(x2, x4)) / (_binary_det(x1, x4) * _binary_det(x2, x3))
    return CrossRatioClass(value, classify_cross_ratio(value))


def cross_ratio_orbit(value: CycElem) -> List[CycElem]:
    """交比在 S_4 作用下的六个取值 j, 1/j, 1-j, 1/(1-j), (j-1)/j, j/(j-1)"""
    j = value
    return [j, 1 / j, 1 - j, 1 / (1 - j), (j - 1) / j, j / (j - 1)]


# ---------------------------------------------------------------------------
# 二次曲面
# ---------------------------------------------------------------------------

class Quadric3:
    """P^3 中的二次曲面，以对称 4x4 矩阵表示，相等性按比例判断"""

    __slots__ = ('sym', '_key')

    def __init__(self, sym):
        rows = [list(r) for r in sym]
        flat = unify([c for r in rows for c in r])
        mat = tuple(tuple(flat[4 * i:4 * i + 4]) for i in range(4))
        if any(mat[i][j] != mat[j][i] for i in range(4) for j in range(4)):
            raise DegenerateInputError("二次曲面矩阵不对称")
        if not any(c for r in mat for c in r):
            raise DegenerateInputError("零矩阵不定义二次曲面")
        self.sym = mat
        self._key = None

    @classmethod
    def from_coefficients(cls, coeffs: Sequence) -> "Quadric3":
        """由单项式 x_i x_j（i <= j，顺序见 QUADRIC_MONOMIALS）的系数构造"""
        coeffs = unify(coeffs)
        zero = coeffs[0] * 0
        mat = [[zero] * 4 for _ in range(4)]
        for (i, j), c in zip(QUADRIC_MONOMIALS, coeffs):
            if i == j:
                mat[i][i] = c
            else:
                mat[i][j] = mat[j][i] = c / 2
        return cls(mat)

    def coefficients(self) -> Tuple[CycElem, ...]:
        return tuple(self.sym[i][j] if i == j else self.sym[i][j] * 2 for i, j in QUADRIC_MONOMIALS)

    def key(self):
        if self._key is None:
            self._key = normalize_vector(self.coefficients())
        return self._key

    def bilinear(self, p: ProjPoint, q: ProjPoint) -> CycElem:
        n = common_conductor([self.sym[0][0]] + list(p.coords) + list(q.coords))
        a, b = unify(p.coords, n), unify(q.coords, n)
        return sum((x * y for x, y in zip(a, mat_vec(self.sym, b))), as_elem(0, n))

    def evaluate(self, p: ProjPoint) -> CycElem:
        return self.bilinear(p, p)

    def contains(self, p: ProjPoint) -> bool:
        return not self.evaluate(p)

    def contains_line(self, line: ProjLine3) -> bool:
        a, b = line.points()
        mid = ProjPoint([x + y for x, y in zip(a.coords, b.coords)])
        return self.contains(a) and self.contains(b) and self.contains(mid)

    def __eq__(self, other):
        if not isinstance(other, Quadric3):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        names = ('x', 'y', 'z', 'w')
        terms = []
        for (i, j), c in zip(QUADRIC_MONOMIALS, self.coefficients()):
            if c:
                terms.append(f"({c!r}){names[i]}{names[j]}")
        return 'Quadric3(' + '+'.join(terms) + ')'


def _three_points(line: ProjLine3) -> List[ProjPoint]:
    a, b = line.points()
    return [a, b, ProjPoint([x + y for x, y in zip(a.coords, b.coords)])]


def quadric_through_three_skew_lines(l1: ProjLine3, l2: ProjLine3, l3: ProjLine3) -> Quadric3:
    """包含三条两两异面直线的唯一二次曲面

    每条直线取三点（参数 0、1、∞），求 9x10 线性方程组的零空间。
    """
    for a, b in combinations((l1, l2, l3), 2):
        if not are_skew(a, b):
            raise DegenerateInputError("三条直线必须两两异面")
    rows = []
    for line in (l1, l2, l3):
        for p in _three_points(line):
            rows.append([p[i] * p[j] for i, j in QUADRIC_MONOMIALS])
    basis = kernel(rows)
    if len(basis) != 1:
        raise DegenerateInputError(f"二次曲面不唯一（零空间维数 {len(basis)}）")
    return Quadric3.from_coefficients(basis[0])


def second_intersection_with_quadric(line: ProjLine3, quadric: Quadric3, known: ProjPoint) -> ProjPoint:
    """直线与二次曲面除已知点外的另一个交点

    参数化 known + t·R 后得到二元二次型，约去已知根；切线情形返回 known。
    """
    if not on_line(known, line):
        raise DegenerateInputError(f"已知点 {known!r} 不在直线上")
    if not quadric.contains(known):
        raise DegenerateInputError(f"已知点 {known!r} 不在二次曲面上")
    a, b = line.points()
    other = a if a != known else b
    qr = quadric.evaluate(other)
    bkr = quadric.bilinear(known, other)
    if not qr and not bkr:
        raise DegenerateInputError("直线包含于二次曲面中")
    n = common_conductor(list(known.coords) + list(other.coords) + [qr, bkr])
    k, r = unify(known.coords, n), unify(other.coords, n)
    point = ProjPoint([qr * x - 2 * bkr * y for x, y in zip(k, r)])
    if not (quadric.contains(point) and on_line(point, line)):
        raise InvariantError("第二交点校验失败")
    return point


def second_line_meeting_four(n1: ProjLine3, n2: ProjLine3, n3: ProjLine3, n4: ProjLine3,
                             known: ProjLine3) -> ProjLine3:
    """与四条两两异面直线都相交的第二条直线

    在 N1 上取点 X(s:t)，过 X 与 N2、N3 相交的截线与 N4 相交的条件是
    (s:t) 的二次型；约去 known 对应的根后剩下的根给出答案。

    Raises:
        DegenerateInputError: 输入不满足前提、截线族退化或剩余根与已知根重合
    """
    lines = (n1, n2, n3, n4)
    for a, b in combinations(lines, 2):
        if not are_skew(a, b):
            raise DegenerateInputError("四条直线必须两两异面")
    if any(lines_meet(known, l) is None for l in lines):
        raise DegenerateInputError("已知直线必须与四条直线都相交")
    pa, pb = n1.points()
    n = common_conductor([c for l in lines + (known,) for c in l.pluecker])
    va, vb = unify(pa.coords, n), unify(pb.coords, n)
    d2, d3 = n2.dual_matrix(), n3.dual_matrix()
    target = n4.pluecker

    def condition(s, t):
        x = [s * u + t * v for u, v in zip(va, vb)]
        dual = _wedge(mat_vec(d2, x), mat_vec(d3, x))
        return sum((a * b for a, b in zip(target, dual)), as_elem(0, n))

    one = as_elem(1, n)
    c0 = condition(one, 0 * one)
    c2 = condition(0 * one, one)
    c1 = condition(one, one) - c0 - c2
    if not (c0 or c1 or c2):
        raise DegenerateInputError("截线族退化：有无穷多条公共截线")
    s0, t0 = line_coordinates(lines_meet(known, n1), pa, pb)
    # c0 s^2 + c1 st + c2 t^2 = (t0 s - s0 t)(alpha s + beta t)
    alpha = c0 / t0 if t0 else -c1 / s0
    beta = -c2 / s0 if s0 else c1 / t0
    if (t0 * alpha != c0 or t0 * beta - s0 * alpha != c1 or -s0 * beta != c2):
        raise InvariantError("已知直线不满足相交条件")
    s1, t1 = beta, -alpha
    if s1 * t0 == s0 * t1:
        raise DegenerateInputError("剩余根与已知根重合（相切情形）")
    point = ProjPoint([s1 * u + t1 * v for u, v in zip(va, vb)])
    result = transversal_through_point(point, n2, n3)
    if any(lines_meet(result, l) is None for l in lines):
        raise InvariantError("第二条直线未与全部四条直线相交")
    logger.debug(f"第二条公共截线: {result!r}")
    return result


# ---------------------------------------------------------------------------
# 射影变换
# ---------------------------------------------------------------------------

def in_general_position(points: Sequence[ProjPoint]) -> bool:
    """P^3 中的点是否没有四点共面"""
    n = common_conductor(c for p in points for c in p.coords)
    for quad in combinations(points, 4):
        if not determinant([unify(p.coords, n) for p in quad]):
            return False
    return True


def _frame_matrix(points: Sequence[ProjPoint], n: int):
    cols = [unify(p.coords, n) for p in points[:4]]
    base = [[cols[j][i] for j in range(4)] for i in range(4)]
    if not determinant(base):
        raise DegenerateInputError("前四个点共面")
    lam = solve(base, unify(points[4].coords, n))
    if lam is None or not all(lam):
        raise DegenerateInputError("五个点不处于一般位置")
    return [[base[i][j] * lam[j] for j in range(4)] for i in range(4)]


def transform_from_point_correspondence(src: Sequence[ProjPoint], dst: Sequence[ProjPoint]):
    """把 src_i 映到 dst_i（i = 1..5）的唯一射影变换矩阵"""
    if len(src) != 5 or len(dst) != 5:
        raise DegenerateInputError("需要恰好五对对应点")
    n = common_conductor(c for p in list(src) + list(dst) for c in p.coords)
    a = _frame_matrix(src, n)
    b = _frame_matrix(dst, n)
    matrix = mat_mul(b, inverse(a))
    for p, q in zip(src, dst):
        if apply_matrix(matrix, p) != q:
            raise InvariantError("射影变换未把源点映到目标点")
    return matrix
