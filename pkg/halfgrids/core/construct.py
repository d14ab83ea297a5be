#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
外直线构造模块

从规范化初始数据（P^3 中三条斜直线上各四个调和点）出发，对每个双射 μ
求出外直线 L、其上的点 R_j、第四条网格直线 L4，并把共享 L4 的两行
拼成 24 点构形。
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from halfgrids.core.errors import ConfigurationError, DegenerateInputError, InvariantError
from halfgrids.core.exactalg import CycElem, as_elem
from halfgrids.core.models import (
    ROLE_GRID, ROLE_TRANSVERSAL, Config, DeclaredLine, grid_point_label
)
from halfgrids.core.perms import PermS4, sigma_from_external_line
from halfgrids.core.projgeom import (
    ProjLine3, ProjPoint, Quadric3, are_skew, cross_ratio, line_through, lines_meet,
    on_line, second_intersection_with_quadric, second_line_meeting_four,
    transversal_through_point
)
from halfgrids.utils.constants import CONSTRUCTION_CONDUCTOR
from halfgrids.utils.format_utils import format_line_ideal
from halfgrids.utils.worker_pool import parallel_map

logger = logging.getLogger(__name__)

# 调和情形下的三个可容许置换
ADMISSIBLE_PERMS = ('2143', '3421', '4312')
# 六个双射 μ 按 (σ2, σ3) 排列的行，行号从 1 开始
MU_ROWS = (
    ('2143', '3421'),
    ('2143', '4312'),
    ('3421', '2143'),
    ('3421', '4312'),
    ('4312', '2143'),
    ('4312', '3421'),
)
EXPECTED_PAIRING = ((1, 2), (3, 5), (4, 6))

# 初始数据：第 i 行是 L_i 上的四个点
_INITIAL_ROWS = (
    ((1, 0, 0, 0), (0, 0, 1, 0), (1, 0, 1, 0), (1, 0, -1, 0)),
    ((0, 1, 0, 0), (0, 0, 0, 1), (0, 1, 0, 1), (0, 1, 0, -1)),
    ((1, 1, 0, 0), (0, 0, 1, 1), (1, 1, 1, 1), (1, 1, -1, -1)),
)
# Q = xw - yz，系数顺序见 QUADRIC_MONOMIALS
_QUADRIC_COEFFS = (0, 0, 0, 1, 0, -1, 0, 0, 0, 0)


def external_label(row: int) -> str:
    return f"Lext[{row}]"


def r_label(row: int, j: int) -> str:
    return f"R[{row}][{j}]"


@dataclass
class InitialData:
    """规范化初始数据"""
    points: Dict[str, ProjPoint]
    lines: Dict[str, ProjLine3]
    quadric: Quadric3
    harmonic_parameter: CycElem

    @property
    def conductor(self) -> int:
        return self.harmonic_parameter.conductor

    def point(self, i: int, j: int) -> ProjPoint:
        return self.points[grid_point_label(i, j)]

    def config(self) -> Config:
        declared = [
            DeclaredLine(label, line, ROLE_GRID,
                         tuple(grid_point_label(int(label[1:]), j) for j in range(1, 5)))
            for label, line in self.lines.items()
        ]
        return Config(self.conductor, self.points, declared)


@dataclass(frozen=True)
class MuAssignment:
    """双射 μ：把三个可容许置换分配给 L2、L3、L4"""
    sigma2: PermS4
    sigma3: PermS4
    sigma4: PermS4

    def __post_init__(self):
        expected = {PermS4.parse(p) for p in ADMISSIBLE_PERMS}
        if {self.sigma2, self.sigma3, self.sigma4} != expected:
            raise DegenerateInputError(
                f"μ 不是可容许置换的双射: {self.sigma2}, {self.sigma3}, {self.sigma4}")

    @classmethod
    def from_pair(cls, sigma2, sigma3) -> "MuAssignment":
        """由 σ2、σ3 确定 μ，σ4 取剩下的置换"""
        s2, s3 = PermS4.parse(sigma2), PermS4.parse(sigma3)
        rest = [p for p in (PermS4.parse(t) for t in ADMISSIBLE_PERMS) if p not in (s2, s3)]
        if len(rest) != 1:
            raise DegenerateInputError(f"σ2={s2}、σ3={s3} 不能确定 μ")
        return cls(s2, s3, rest[0])

    @classmethod
    def for_row(cls, row: int) -> "MuAssignment":
        if not 1 <= row <= len(MU_ROWS):
            raise DegenerateInputError(f"行号必须在 1..{len(MU_ROWS)} 之间: {row}")
        return cls.from_pair(*MU_ROWS[row - 1])

    def sigma(self, i: int) -> PermS4:
        return {2: self.sigma2, 3: self.sigma3, 4: self.sigma4}[i]

    def row(self) -> Optional[int]:
        for k, (s2, s3) in enumerate(MU_ROWS, 1):
            if PermS4.parse(s2) == self.sigma2 and PermS4.parse(s3) == self.sigma3:
                return k
        return None


@dataclass
class ConstructionResult:
    mu: MuAssignment
    L: ProjLine3
    R: List[ProjPoint]
    L4: ProjLine3
    P4: List[ProjPoint]
    Z20: Config

    @property
    def row(self) -> Optional[int]:
        return self.mu.row()

    def ideal(self) -> str:
        return format_line_ideal(self.L)


@dataclass
class MuRunReport:
    """六个 μ 的运行结果与按 L4 的配对"""
    results: List[ConstructionResult]
    pairing: List[Tuple[int, ...]] = field(default_factory=list)

    def ideals(self) -> Dict[int, str]:
        return {r.row: r.ideal() for r in self.results}

    def fourth_lines(self) -> Dict[int, str]:
        return {r.row: format_line_ideal(r.L4) for r in self.results}


def initial_data() -> InitialData:
    """规范化初始数据，并校验斜性、二次曲面与调和性"""
    n = CONSTRUCTION_CONDUCTOR
    points = {}
    for i, row in enumerate(_INITIAL_ROWS, 1):
        for j, coords in enumerate(row, 1):
            points[grid_point_label(i, j)] = ProjPoint(coords, n)
    lines = {f"L{i}": line_through(points[grid_point_label(i, 1)], points[grid_point_label(i, 2)])
             for i in range(1, 4)}
    quadric = Quadric3.from_coefficients([as_elem(c, n) for c in _QUADRIC_COEFFS])
    minus_one = as_elem(-1, n)

    for a, b in combinations(lines.values(), 2):
        if not are_skew(a, b):
            raise InvariantError("初始数据的三条直线不是两两异面")
    for i in range(1, 4):
        row = [points[grid_point_label(i, j)] for j in range(1, 5)]
        if not all(on_line(p, lines[f"L{i}"]) and quadric.contains(p) for p in row):
            raise InvariantError(f"L{i} 上的点不满足关联条件")
        if cross_ratio(*row).value != minus_one:
            raise InvariantError(f"L{i} 上的四点不是调和的")
    return InitialData(points, lines, quadric, minus_one)


def cross_lines(data: InitialData, i: int, sigma: PermS4) -> List[ProjLine3]:
    """直线 P_{1,σ(j)} P_{i,j}，j = 1..4"""
    return [line_through(data.point(1, sigma(j)), data.point(i, j)) for j in range(1, 5)]


def external_line(mu: MuAssignment, data: Optional[InitialData] = None) -> ProjLine3:
    """外直线 L

    σ2 的四条连线位于同一个二次曲面的同一族直线上，公共截线有无穷多条，
    因此取两条 σ2 连线与两条 σ3 连线求除 L1 外的第二条公共截线，
    再用全部八条连线校验。
    """
    data = data or initial_data()
    l1 = data.lines['L1']
    n2 = cross_lines(data, 2, mu.sigma2)
    n3 = cross_lines(data, 3, mu.sigma3)

    result = None
    for a, b in combinations(range(4), 2):
        for c, d in combinations(range(4), 2):
            try:
                result = second_line_meeting_four(n2[a], n2[b], n3[c], n3[d], l1)
            except DegenerateInputError as e:
                logger.debug(f"连线组合 ({a},{b})/({c},{d}) 退化: {e}")
                continue
            break
        if result is not None:
            break
    if result is None:
        raise InvariantError(f"μ=({mu.sigma2},{mu.sigma3}) 找不到非退化的连线组合")

    for k, line in enumerate(n2 + n3):
        if lines_meet(result, line) is None:
            raise InvariantError(f"外直线未与第 {k + 1} 条连线相交")
    for label in ('L1', 'L2', 'L3'):
        if not are_skew(result, data.lines[label]):
            raise InvariantError(f"外直线与 {label} 共面")
    logger.debug(f"μ=({mu.sigma2},{mu.sigma3}) 的外直线: {format_line_ideal(result)}")
    return result


def r_points(L: ProjLine3, sigma2: PermS4, sigma3: Optional[PermS4] = None,
             data: Optional[InitialData] = None) -> List[ProjPoint]:
    """R_j = P_{1,σ2(j)} P_{2,j} ∩ L；给出 σ3 时同时校验 R_j = P_{1,σ3(j)} P_{3,j} ∩ L"""
    data = data or initial_data()
    for label in ('L1', 'L2'):
        if not are_skew(L, data.lines[label]):
            raise DegenerateInputError(f"外直线必须与 {label} 异面")
    points = []
    for j, line in enumerate(cross_lines(data, 2, sigma2), 1):
        hit = lines_meet(line, L)
        if hit is None:
            raise DegenerateInputError(f"第 {j} 条 σ2 连线与 L 异面，μ 与 L 不匹配")
        points.append(hit)
    if sigma3 is not None:
        for j, line in enumerate(cross_lines(data, 3, sigma3), 1):
            hit = lines_meet(line, L)
            if hit != points[j - 1]:
                raise InvariantError(f"R_{j} 的两种描述不一致")
    return points


def fourth_line(mu: MuAssignment, L: ProjLine3, R: Sequence[ProjPoint],
                data: Optional[InitialData] = None) -> Tuple[ProjLine3, List[ProjPoint]]:
    """P_{4,j} 为直线 P_{1,σ4(j)} R_j 与 Q 的另一个交点，L4 为它们张成的直线"""
    data = data or initial_data()
    p4 = []
    for j in range(1, 5):
        base = data.point(1, mu.sigma4(j))
        p4.append(second_intersection_with_quadric(line_through(base, R[j - 1]), data.quadric, base))
    l4 = line_through(p4[0], p4[1])
    if not all(on_line(p, l4) for p in p4[2:]):
        raise DegenerateInputError("四个点 P_{4,j} 不共线")
    for j in range(1, 5):
        column = line_through(data.point(1, j), data.point(2, j))
        if not on_line(p4[j - 1], column):
            raise InvariantError(f"P_4{j} 不在第 {j} 条竖直线上")
    return l4, p4


def _transversal_seeds(data: InitialData) -> List[ProjPoint]:
    """L1 上参数 [1:±i] 的点"""
    i = CycElem.zeta(data.conductor, 1)
    return [ProjPoint([as_elem(1, data.conductor), 0, s * i, 0]) for s in (1, -1)]


def frame_transversals(data: InitialData) -> Dict[str, ProjLine3]:
    """二次曲面另一族中过 L1 上不动点 [1:±i] 的两条截线 T+、T-"""
    l2, l3 = data.lines['L2'], data.lines['L3']
    return {label: transversal_through_point(seed, l2, l3)
            for label, seed in zip(('T+', 'T-'), _transversal_seeds(data))}


def _grid_lines(data: InitialData, l4: ProjLine3) -> List[DeclaredLine]:
    lines = dict(data.lines)
    lines['L4'] = l4
    return [DeclaredLine(label, line, ROLE_GRID,
                         tuple(grid_point_label(int(label[1:]), j) for j in range(1, 5)))
            for label, line in lines.items()]


def _transversal_lines(data: InitialData, externals: Sequence[ProjLine3]) -> List[DeclaredLine]:
    declared = []
    for label, t in frame_transversals(data).items():
        for line in externals:
            if lines_meet(t, line) is None:
                raise InvariantError(f"截线 {label} 未与外直线相交")
        declared.append(DeclaredLine(label, t, ROLE_TRANSVERSAL))
    return declared


def construct(mu: MuAssignment, data: Optional[InitialData] = None) -> ConstructionResult:
    """对一个 μ 执行完整构造"""
    data = data or initial_data()
    row = mu.row()
    L = external_line(mu, data)
    R = r_points(L, mu.sigma2, mu.sigma3, data)
    l4, p4 = fourth_line(mu, L, R, data)

    points = dict(data.points)
    for j, p in enumerate(p4, 1):
        points[grid_point_label(4, j)] = p
    for j, p in enumerate(R, 1):
        points[r_label(row, j)] = p
    declared = _grid_lines(data, l4)
    declared.append(DeclaredLine(external_label(row), L, ROLE_GRID,
                                 tuple(r_label(row, j) for j in range(1, 5))))
    declared.extend(_transversal_lines(data, [L]))
    z20 = Config(data.conductor, points, declared)

    for i in (2, 3, 4):
        if sigma_from_external_line(z20, i, L) != mu.sigma(i):
            raise InvariantError(f"由外直线读出的 σ_{i} 与 μ 不一致")
    logger.info(f"第 {row} 行: L={format_line_ideal(L)}, L4={format_line_ideal(l4)}")
    return ConstructionResult(mu, L, R, l4, p4, z20)


def _construct_row(row: int) -> ConstructionResult:
    return construct(MuAssignment.for_row(row))


def run_all_mu(workers: int = 1, progress_callback=None) -> MuRunReport:
    """对全部六个 μ 执行构造，并按共享的 L4 配对"""
    rows = list(range(1, len(MU_ROWS) + 1))
    results = parallel_map(_construct_row, rows, workers, progress_callback)

    groups: Dict[ProjLine3, List[int]] = {}
    for result in results:
        groups.setdefault(result.L4, []).append(result.row)
    pairing = sorted(tuple(v) for v in groups.values())
    logger.info(f"按 L4 配对: {pairing}")
    return MuRunReport(results, pairing)


def assemble_pair(pair: Sequence[int], report: Optional[MuRunReport] = None) -> Config:
    """把共享 L4 的两行拼成 24 点构形（16 个网格点与两条外直线上的 R 点）"""
    a, b = sorted(pair)
    if report is None:
        first, second = construct(MuAssignment.for_row(a)), construct(MuAssignment.for_row(b))
    else:
        by_row = {r.row: r for r in report.results}
        first, second = by_row[a], by_row[b]
    if first.L4 != second.L4:
        raise ConfigurationError(f"第 {a} 行与第 {b} 行的 L4 不同，不能拼接")
    if set(first.P4) != set(second.P4):
        raise InvariantError("共享 L4 的两行给出的 P_4 点不同")

    data = initial_data()
    points = dict(first.Z20.points)
    for j, p in enumerate(second.R, 1):
        points[r_label(b, j)] = p
    declared = _grid_lines(data, first.L4)
    for row, result in ((a, first), (b, second)):
        declared.append(DeclaredLine(external_label(row), result.L, ROLE_GRID,
                                     tuple(r_label(row, j) for j in range(1, 5))))
    declared.extend(_transversal_lines(data, [first.L, second.L]))
    config = Config(data.conductor, points, declared, flags=(f"pair={a},{b}",))

    grid = [d.line for d in config.grid_lines()]
    for x, y in combinations(grid, 2):
        if not are_skew(x, y):
            raise InvariantError("拼接构形的声明直线不是两两异面")
    return config
