#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
同时点搜索模块

在标准构造的平面 Π_ij: w - u^j z - u^i y + u^{i+j} x = 0 内，寻找使得
对每个 k ≠ j 都存在 l、且 q 位于直线 p_ik p_lj 上的点 q（不在 M_i ∪ L_j 上）。

平面内取坐标 (q0, q1, q2) ↦ q0·p_ij + q1·D + q2·B，其中 D = (0,1,0,u^i)、
B = (0,0,1,u^j)。此时 p_ik = (1, u^k - u^j, 0)，p_lj = (1, 0, u^l - u^i)，
M_i 为 q2 = 0，L_j 为 q1 = 0。
"""

import logging
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from halfgrids.core.errors import DegenerateInputError, InvariantError
from halfgrids.core.exactalg import CycElem, as_elem
from halfgrids.core.halfgrid import root_power, working_conductor
from halfgrids.core.projgeom import Plane3, ProjPoint, line_through, on_line
from halfgrids.utils.constants import EXPECTED_CONCURRENCY_COUNT, VERIFIED_M_RANGE
from halfgrids.utils.worker_pool import parallel_map

logger = logging.getLogger(__name__)

STATUS_VERIFIED = 'verified'
STATUS_OBSERVATIONAL = 'observational'


@dataclass(frozen=True)
class ConcurrencyQuery:
    m: int
    i: int
    j: int
    conductor: int

    @property
    def plane(self) -> Plane3:
        u = root_power(self.m, self.conductor)
        one = as_elem(1, self.conductor)
        return Plane3([u(self.i + self.j), -u(self.i), -u(self.j), one])


@dataclass
class ConcurrencyPoint:
    """同时点及其见证：witness[k] = l 表示 q 在直线 p_ik p_lj 上"""
    q: ProjPoint
    witness: Dict[int, int]


@dataclass
class ScanRow:
    m: int
    i: int
    j: int
    points: List[ConcurrencyPoint]
    spot: Tuple[int, int]
    spot_count: int
    formula_points_present: bool
    status: str
    wall_time: float = 0.0

    @property
    def count(self) -> int:
        return len(self.points)

    @property
    def maximal(self) -> bool:
        """只有两个同时点时，标准构造的半网格不能再扩充"""
        return self.count == EXPECTED_CONCURRENCY_COUNT

    @property
    def consistent(self) -> bool:
        return self.spot_count == self.count and self.formula_points_present


def formula_points(m: int, i: int, j: int, conductor: Optional[int] = None) -> List[ProjPoint]:
    """[-1:0:0:u^{i+j}] 与 [0:-1:u^{i-j}:0]"""
    n = working_conductor(m, conductor)
    u = root_power(m, n)
    minus_one = as_elem(-1, n)
    return [ProjPoint([minus_one, 0, 0, u(i + j)]), ProjPoint([0, minus_one, u(i - j), 0])]


def symmetry_matrix(m: int, di: int, dj: int, conductor: Optional[int] = None) -> List[List[CycElem]]:
    """把 p_ij 映到 p_{i+di, j+dj} 的群元 diag(1, u^dj, u^di, u^{di+dj})"""
    n = working_conductor(m, conductor)
    u = root_power(m, n)
    diag = [as_elem(1, n), u(dj), u(di), u(di + dj)]
    zero = as_elem(0, n)
    return [[diag[r] if r == c else zero for c in range(4)] for r in range(4)]


def _grid_point(u, i: int, j: int) -> ProjPoint:
    return ProjPoint([u(0), u(j), u(i), u(i + j)])


def validate_point(query: ConcurrencyQuery, point: ConcurrencyPoint) -> None:
    """在 P^3 中从头复核同时点及其见证

    Raises:
        InvariantError: 任何一项不成立
    """
    m, i, j = query.m, query.i, query.j
    u = root_power(m, query.conductor)
    q = point.q
    if not query.plane.contains(q):
        raise InvariantError(f"{q!r} 不在平面 Π_{i}{j} 上")
    m_line = line_through(_grid_point(u, i, 0), _grid_point(u, i, 1))
    l_line = line_through(_grid_point(u, 0, j), _grid_point(u, 1, j))
    if on_line(q, m_line) or on_line(q, l_line):
        raise InvariantError(f"{q!r} 位于 M_{i} 或 L_{j} 上")
    if sorted(point.witness) != [k for k in range(m) if k != j]:
        raise InvariantError(f"{q!r} 的见证没有覆盖全部 k ≠ {j}")
    for k, l in point.witness.items():
        if not on_line(q, line_through(_grid_point(u, i, k), _grid_point(u, l, j))):
            raise InvariantError(f"{q!r} 不在直线 p_{i}{k} p_{l}{j} 上")


def concurrency_points(m: int, i: int, j: int, conductor: Optional[int] = None) -> List[ConcurrencyPoint]:
    """穷举 Π_ij 中的全部同时点

    候选来自两条固定主元 k1 < k2 的直线族的交点，再对其余每个 k ≠ j 验证。
    """
    if m < 3:
        raise DegenerateInputError(f"m 必须 >= 3: {m}")
    if not (0 <= i < m and 0 <= j < m):
        raise DegenerateInputError(f"下标 (i,j)=({i},{j}) 超出范围")
    n = working_conductor(m, conductor)
    u = root_power(m, n)
    query = ConcurrencyQuery(m, i, j, n)

    ks = [k for k in range(m) if k != j]
    ls = [l for l in range(m) if l != i]
    a = {k: u(k) - u(j) for k in ks}
    b = {l: u(l) - u(i) for l in ls}
    # u^l ↦ l，用于判断比值是否为单位根
    roots = {u(l): l for l in ls}
    k1, k2 = ks[0], ks[1]

    def normal(k, l):
        return (a[k] * b[l], -b[l], -a[k])

    def matching_l(k, q) -> Optional[int]:
        q0, q1, q2 = q
        s = a[k] * q0 - q1
        if not s:
            return None
        return roots.get((u(i) * s + a[k] * q2) / s)

    found: Dict[ProjPoint, ConcurrencyPoint] = {}
    for l1 in ls:
        n1 = normal(k1, l1)
        for l2 in ls:
            n2 = normal(k2, l2)
            q = (n1[1] * n2[2] - n1[2] * n2[1],
                 n1[2] * n2[0] - n1[0] * n2[2],
                 n1[0] * n2[1] - n1[1] * n2[0])
            if not any(q) or not q[1] or not q[2]:
                continue
            witness = {k1: l1, k2: l2}
            for k in ks[2:]:
                l = matching_l(k, q)
                if l is None:
                    break
                witness[k] = l
            else:
                q0, q1, q2 = q
                coords = [q0, q0 * u(j) + q1, q0 * u(i) + q2, q0 * u(i + j) + q1 * u(i) + q2 * u(j)]
                point = ProjPoint(coords).normalized()
                if point not in found:
                    found[point] = ConcurrencyPoint(point, dict(sorted(witness.items())))
    result = sorted(found.values(), key=lambda c: c.q.sort_key())
    for point in result:
        validate_point(query, point)
    logger.debug(f"m={m}, (i,j)=({i},{j}): {len(result)} 个同时点")
    return result


def _scan_row(job) -> ScanRow:
    m, conductor = job
    start = time.perf_counter()
    points = concurrency_points(m, 0, 0, conductor)
    spot = (1, 2 % m)
    spot_points = concurrency_points(m, *spot, conductor)
    formulas = set(formula_points(m, 0, 0, conductor))
    present = formulas <= {p.q for p in points}
    lo, hi = VERIFIED_M_RANGE
    status = STATUS_VERIFIED if lo <= m <= hi else STATUS_OBSERVATIONAL
    return ScanRow(m, 0, 0, points, spot, len(spot_points), present, status,
                   time.perf_counter() - start)


def concurrency_scan(m_min: int, m_max: int, workers: int = 1, progress_callback=None,
                     conductor: Optional[int] = None) -> List[ScanRow]:
    """对每个 m 取代表 (0,0) 并抽查 (1, 2 mod m)，返回计数表"""
    if not 3 <= m_min <= m_max:
        raise DegenerateInputError(f"需要 3 <= m_min <= m_max: ({m_min}, {m_max})")
    jobs = [(m, conductor) for m in range(m_min, m_max + 1)]
    for m, _ in jobs:
        working_conductor(m, conductor)
    rows = parallel_map(_scan_row, jobs, workers, progress_callback)
    for row in rows:
        logger.info(f"m={row.m}: {row.count} 个同时点，抽查 {row.spot} 得 {row.spot_count} 个"
                    f"（{row.status}，{row.wall_time:.2f}s）")
    return rows
