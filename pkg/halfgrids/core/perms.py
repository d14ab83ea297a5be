#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
直线上四点的置换与 Möbius 自同构

置换采用单行记号 (σ(1), σ(2), σ(3), σ(4))，不是轮换记号。
本模块实现保持交比的置换枚举、诱导的 P^1 射影自同构及其不动点、
可容许置换集合的筛选，以及由外直线读出置换。
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Dict, List, Optional, Sequence, Tuple

from halfgrids.core.errors import ConfigurationError, DegenerateInputError, InvariantError
from halfgrids.core.exactalg import CycElem, as_elem, common_conductor, sqrt_in_field, unify
from halfgrids.core.models import Config, grid_point_label
from halfgrids.core.projgeom import (
    ProjLine3, ProjPoint, are_skew, cross_ratio, lines_meet,
    quadric_through_three_skew_lines, transversal_through_point, normalize_vector
)
from halfgrids.utils.format_utils import format_matrix, format_perm

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class PermS4:
    """{1,2,3,4} 上的置换（单行记号）"""
    images: Tuple[int, int, int, int]

    def __post_init__(self):
        if sorted(self.images) != [1, 2, 3, 4]:
            raise DegenerateInputError(f"不是 S_4 中的置换: {self.images}")

    @classmethod
    def parse(cls, text) -> "PermS4":
        """接受 "2143"、"(2,1,4,3)" 或整数序列"""
        if isinstance(text, str):
            digits = [int(ch) for ch in text if ch.isdigit()]
        else:
            digits = [int(v) for v in text]
        if len(digits) != 4:
            raise DegenerateInputError(f"无法解析置换: {text!r}")
        return cls(tuple(digits))

    @classmethod
    def identity(cls) -> "PermS4":
        return cls((1, 2, 3, 4))

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def compose(self, other: "PermS4") -> "PermS4":
        """(self ∘ other)(i) = self(other(i))"""
        return PermS4(tuple(self(other(i)) for i in range(1, 5)))

    def __str__(self):
        return format_perm(self)

    def to_json(self) -> List[int]:
        return list(self.images)


ALL_PERMS = tuple(PermS4(p) for p in permutations((1, 2, 3, 4)))


def perm_fixed_points(sigma: PermS4) -> frozenset:
    return frozenset(i for i in range(1, 5) if sigma(i) == i)


def is_involution(sigma: PermS4) -> bool:
    return sigma.compose(sigma) == PermS4.identity()


class Mobius:
    """P^1 的射影自同构 [x:y] ↦ [ax+by : cx+dy]，相等性按比例判断"""

    __slots__ = ('mat', '_key')

    def __init__(self, mat):
        a, b, c, d = unify([mat[0][0], mat[0][1], mat[1][0], mat[1][1]])
        if not (a * d - b * c):
            raise DegenerateInputError("Möbius 矩阵行列式为零")
        self.mat = ((a, b), (c, d))
        self._key = None

    @property
    def entries(self) -> Tuple[CycElem, CycElem, CycElem, CycElem]:
        return self.mat[0][0], self.mat[0][1], self.mat[1][0], self.mat[1][1]

    def apply(self, p: ProjPoint) -> ProjPoint:
        a, b, c, d = self.entries
        x, y = p.coords
        return ProjPoint([a * x + b * y, c * x + d * y])

    def is_identity(self) -> bool:
        a, b, c, d = self.entries
        return not b and not c and a == d

    def fixed_point_quadratic(self) -> Tuple[CycElem, CycElem, CycElem]:
        """不动点满足 -c·x^2 + (a-d)·xy + b·y^2 = 0，返回这三个系数"""
        a, b, c, d = self.entries
        return -c, a - d, b

    def key(self):
        if self._key is None:
            self._key = normalize_vector(self.entries)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Mobius):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Mobius{format_matrix(self.mat)}"


@dataclass(frozen=True)
class FixedPointReport:
    """不动点报告

    kind 为 InField 时 points 给出两个不动点（相切时重复同一点）；
    kind 为 Symbolic 时不动点为 [1 : center ± a]，a^2 = radicand 且 radicand 不是域中的平方。
    """
    kind: str
    points: Tuple[ProjPoint, ...] = ()
    center: Optional[CycElem] = None
    radicand: Optional[CycElem] = None

    def matches_symbolic(self, center, radicand) -> bool:
        """与 [1 : center ± sqrt(radicand)] 形式的基准数据比较"""
        if self.kind == SYMBOLIC:
            return self.center == center and self.radicand == radicand
        for p in self.points:
            x, y = p.coords
            if not x:
                return False
            t = y / x - center
            if t * t != radicand:
                return False
        return True

    def __str__(self):
        if self.kind == SYMBOLIC:
            return f"[1:{self.center!r}±a], a^2={self.radicand!r}"
        return ', '.join(repr(p) for p in self.points)


IN_FIELD = 'InField'
SYMBOLIC = 'Symbolic'


def normalized_quadruple(q) -> List[ProjPoint]:
    """规范化四点 [1:0], [0:1], [1:1], [1:q]"""
    n = q.conductor if isinstance(q, CycElem) else 1
    q = as_elem(q, n)
    if not q or q == 1:
        raise DegenerateInputError(f"参数 q={q!r} 使四点重合")
    return [ProjPoint([1, 0], n), ProjPoint([0, 1], n), ProjPoint([1, 1], n), ProjPoint([as_elem(1, n), q])]


def stabilizer_permutations(points: Sequence[ProjPoint]) -> List[PermS4]:
    """保持交比的全部置换（对 24 个置换穷举）"""
    base = cross_ratio(*points).value
    result = []
    for sigma in ALL_PERMS:
        image = [points[sigma(i) - 1] for i in range(1, 5)]
        if cross_ratio(*image).value == base:
            result.append(sigma)
    return result


def _three_point_matrix(u1, u2, u3):
    """列为 λ1·u1、λ2·u2 且 λ1·u1 + λ2·u2 = u3 的矩阵"""
    det = u1[0] * u2[1] - u1[1] * u2[0]
    if not det:
        raise DegenerateInputError("前两个点重合")
    lam1 = (u3[0] * u2[1] - u3[1] * u2[0]) / det
    lam2 = (u1[0] * u3[1] - u1[1] * u3[0]) / det
    if not lam1 or not lam2:
        raise DegenerateInputError("三个点不互异")
    return [[lam1 * u1[0], lam2 * u2[0]], [lam1 * u1[1], lam2 * u2[1]]]


def mobius_from_permutation(points: Sequence[ProjPoint], sigma: PermS4) -> Mobius:
    """满足 F(P_i) = P_σ(i) 的唯一 Möbius 映射

    由前三对对应求解，在第四个点上验证。
    """
    n = common_conductor(c for p in points for c in p.coords)
    vecs = [unify(p.coords, n) for p in points]
    src = _three_point_matrix(vecs[0], vecs[1], vecs[2])
    dst = _three_point_matrix(vecs[sigma(1) - 1], vecs[sigma(2) - 1], vecs[sigma(3) - 1])
    (a, b), (c, d) = src
    src_adj = [[d, -b], [-c, a]]
    mat = [[sum((dst[i][k] * src_adj[k][j] for k in range(2)), as_elem(0, n)) for j in range(2)]
           for i in range(2)]
    mobius = Mobius(mat)
    if mobius.apply(points[3]) != points[sigma(4) - 1]:
        raise DegenerateInputError(f"置换 {sigma} 不保持交比")
    return mobius


def mobius_fixed_points(mobius: Mobius) -> FixedPointReport:
    """求 Möbius 映射的不动点

    判别式是工作域中的平方时返回两个域内点，否则返回 Symbolic 形式。
    """
    if mobius.is_identity():
        raise DegenerateInputError("恒等映射的每个点都是不动点")
    a, b, c, d = mobius.entries
    n = a.conductor
    if b:
        center = (d - a) / (2 * b)
        radicand = ((a - d) * (a - d) + 4 * b * c) / (4 * b * b)
        root = sqrt_in_field(radicand)
        if root is None:
            return FixedPointReport(SYMBOLIC, center=center, radicand=radicand)
        one = as_elem(1, n)
        points = [ProjPoint([one, center + root]), ProjPoint([one, center - root])]
    else:
        points = [ProjPoint([0, 1], n), ProjPoint([a - d, c])]
    points.sort(key=lambda p: p.sort_key())
    for p in points:
        if mobius.apply(p) != p:
            raise InvariantError(f"不动点校验失败: {p!r}")
    return FixedPointReport(IN_FIELD, points=tuple(points))


@dataclass(frozen=True)
class AdmissibleSet:
    """可容许置换集合及其公共不动点"""
    perms: Tuple[PermS4, ...]
    fixed_points: FixedPointReport


@dataclass
class AdmissibilityReport:
    """可容许性筛选的完整过程，供命令行输出"""
    q: CycElem
    stabilizer: List[PermS4]
    fixed_point_free: List[PermS4]
    mobius: Dict[PermS4, Mobius] = field(default_factory=dict)
    groups: List[Tuple[PermS4, ...]] = field(default_factory=list)
    rejected: List[Tuple[Tuple[PermS4, ...], str]] = field(default_factory=list)
    admissible: List[AdmissibleSet] = field(default_factory=list)


def _columns_distinct(perms: Sequence[PermS4]) -> bool:
    return all(s(k) != t(k) for s, t in combinations(perms, 2) for k in range(1, 5))


def admissibility_report(q) -> AdmissibilityReport:
    """按不动点条件、列互异条件与非对合条件筛选置换"""
    points = normalized_quadruple(q)
    q = points[3].coords[1]
    stabilizer = stabilizer_permutations(points)
    fpf = [s for s in stabilizer if not perm_fixed_points(s)]
    report = AdmissibilityReport(q=q, stabilizer=stabilizer, fixed_point_free=fpf)
    grouped: Dict[Tuple, List[PermS4]] = {}
    for sigma in fpf:
        mobius = mobius_from_permutation(points, sigma)
        report.mobius[sigma] = mobius
        grouped.setdefault(normalize_vector(mobius.fixed_point_quadratic()), []).append(sigma)
    for group in grouped.values():
        report.groups.append(tuple(group))
        if len(group) < 2:
            report.rejected.append((tuple(group), "不动点与其他置换都不同"))
            continue
        kept: List[Tuple[PermS4, ...]] = []
        for size in range(len(group), 1, -1):
            for subset in combinations(group, size):
                if any(set(subset) <= set(k) for k in kept):
                    continue
                if not _columns_distinct(subset):
                    report.rejected.append((subset, "存在某列取值相同"))
                    continue
                if size >= 3 and all(is_involution(s) for s in subset):
                    report.rejected.append((subset, "全部为对合"))
                    continue
                kept.append(subset)
        for subset in kept:
            fixed = mobius_fixed_points(report.mobius[subset[0]])
            report.admissible.append(AdmissibleSet(subset, fixed))
    logger.info(f"q={q!r}: 稳定子 {len(stabilizer)} 个，无不动点 {len(fpf)} 个，"
                f"可容许集合 {len(report.admissible)} 个")
    return report


def admissible_sigma_sets(q) -> List[AdmissibleSet]:
    """可容许的置换集合及其公共不动点"""
    return admissibility_report(q).admissible


def sigma_from_external_line(grid: Config, i: int, line: ProjLine3) -> PermS4:
    """由外直线 L 读出置换 σ_i^L

    对每个 j，过 P_ij 作与 L1、L 都相交的截线，它与 L1 的交点必须是某个 P_1k，
    于是 σ(j) = k。
    """
    l1 = grid.line('L1')
    li = grid.line(f'L{i}')
    if not (are_skew(line, l1) and are_skew(line, li)):
        raise ConfigurationError("外直线必须与 L1、L_i 异面")
    quadric = quadric_through_three_skew_lines(l1, grid.line('L2'), grid.line('L3'))
    if quadric.contains_line(line):
        raise ConfigurationError("外直线位于网格二次曲面上")
    base = {grid.point(grid_point_label(1, k)): k for k in range(1, 5)}
    images = []
    for j in range(1, 5):
        p = grid.point(grid_point_label(i, j))
        try:
            transversal = transversal_through_point(p, l1, line)
        except DegenerateInputError as e:
            raise ConfigurationError(f"过 {grid_point_label(i, j)} 的截线不确定: {e}")
        hit = lines_meet(transversal, l1)
        if hit not in base:
            raise ConfigurationError(f"截线与 L1 的交点 {hit!r} 不是标记点，构形不是经过 L 的半网格")
        images.append(base[hit])
    if sorted(images) != [1, 2, 3, 4]:
        raise ConfigurationError(f"读出的映射不是双射: {images}")
    return PermS4(tuple(images))
