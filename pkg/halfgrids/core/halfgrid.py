#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
构形目录与组合结构分析模块

包括标准构造（C_m × C_m 轨道网格 G 与共线集 Y1、Y2）、F4 参考模型、
富直线提取、网格/半网格判定、三直线网格检查以及射影等价搜索。
"""

import logging
from collections import Counter
from itertools import combinations
from math import lcm
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from halfgrids.core.errors import ConfigurationError, DegenerateInputError, FieldError
from halfgrids.core.exactalg import CycElem, as_elem, determinant, unify
from halfgrids.core.models import (
    ROLE_GRID, ROLE_TRANSVERSAL, Config, DeclaredLine, EquivCert, GridCert,
    HalfGridCert, StructureReport, grid_point_label
)
from halfgrids.core.projgeom import (
    ProjLine3, ProjPoint, apply_matrix, are_skew, in_general_position, line_through,
    lines_meet, transform_from_point_correspondence, transversal_through_point
)
from halfgrids.utils.constants import RICH_LINE_MIN_POINTS

logger = logging.getLogger(__name__)

VARIANT_Y1 = 'Y1'
VARIANT_Y2 = 'Y2'
VARIANT_FULL = 'Full'
VARIANTS = (VARIANT_Y1, VARIANT_Y2, VARIANT_FULL)
FLAG_UNSUPPORTED = 'unsupported_odd_full'

KIND_GRID = 'Grid'
KIND_HALF_GRID = 'HalfGrid'
KIND_NEITHER = 'Neither'

IncidenceLine = Tuple[ProjLine3, Tuple[str, ...]]


# ---------------------------------------------------------------------------
# 标准构造
# ---------------------------------------------------------------------------

def working_conductor(m: int, conductor: Optional[int] = None) -> int:
    """标准构造所需的导体 lcm(m, 4)，可被更大的倍数覆盖"""
    n = lcm(m, 4)
    if conductor is None:
        return n
    if conductor % n:
        raise FieldError(f"导体 {conductor} 不是 {n} 的倍数")
    return conductor


def root_power(m: int, n: int):
    """返回 k ↦ u^k，u = ζ_N^{N/m}，指数按模 m 约化"""
    step = n // m
    cache = {}

    def power(k: int) -> CycElem:
        k %= m
        if k not in cache:
            cache[k] = CycElem.zeta(n, step * k)
        return cache[k]
    return power


def _span_line(label: str, points: Dict[str, ProjPoint], members: Sequence[str],
               role: str = ROLE_GRID) -> DeclaredLine:
    line = line_through(points[members[0]], points[members[1]])
    return DeclaredLine(label, line, role, tuple(members))


def _standard_transversals(n: int) -> List[DeclaredLine]:
    """T1 = {x=y=0}，T2 = {z=w=0}"""
    t1 = line_through(ProjPoint([0, 0, 1, 0], n), ProjPoint([0, 0, 0, 1], n))
    t2 = line_through(ProjPoint([1, 0, 0, 0], n), ProjPoint([0, 1, 0, 0], n))
    return [DeclaredLine('T1', t1, ROLE_TRANSVERSAL), DeclaredLine('T2', t2, ROLE_TRANSVERSAL)]


def _grid_points(m: int, n: int) -> Dict[str, ProjPoint]:
    u = root_power(m, n)
    one = as_elem(1, n)
    return {grid_point_label(i, j): ProjPoint([one, u(j), u(i), u(i + j)])
            for i in range(m) for j in range(m)}


def standard_grid(m: int, conductor: Optional[int] = None) -> Config:
    """(m,m)-网格 G：p_ij = [1:u^j:u^i:u^{i+j}]，0 <= i, j < m

    声明直线为 M_i（i 固定）与 L_j（j 固定），以及截线 T1、T2。
    """
    if m < 3:
        raise DegenerateInputError(f"标准构造要求 m >= 3: {m}")
    n = working_conductor(m, conductor)
    points = _grid_points(m, n)
    declared = [_span_line(f"M[{i}]", points, [grid_point_label(i, j) for j in range(m)])
                for i in range(m)]
    declared += [_span_line(f"L[{j}]", points, [grid_point_label(i, j) for i in range(m)])
                 for j in range(m)]
    declared += _standard_transversals(n)
    return Config(n, points, declared)


def y_sets(m: int, conductor: Optional[int] = None) -> Tuple[List[ProjPoint], List[ProjPoint]]:
    """Y1 = {[-1:0:0:u^j]}，Y2 = {[0:-1:u^j:0]}"""
    if m < 3:
        raise DegenerateInputError(f"标准构造要求 m >= 3: {m}")
    n = working_conductor(m, conductor)
    u = root_power(m, n)
    minus_one = as_elem(-1, n)
    y1 = [ProjPoint([minus_one, 0, 0, u(j)]) for j in range(m)]
    y2 = [ProjPoint([0, minus_one, u(j), 0]) for j in range(m)]
    return y1, y2


def standard_halfgrid(m: int, variant: str = VARIANT_FULL, conductor: Optional[int] = None) -> Config:
    """G ∪ Y1、G ∪ Y2 或 G ∪ Y1 ∪ Y2

    声明的半网格直线为 L_j 加上 Y 直线；m 为奇数时 Full 变体带
    unsupported_odd_full 标记。
    """
    if variant not in VARIANTS:
        raise DegenerateInputError(f"未知的变体: {variant}")
    if m < 3:
        raise DegenerateInputError(f"标准构造要求 m >= 3: {m}")
    n = working_conductor(m, conductor)
    points = _grid_points(m, n)
    declared = [_span_line(f"L[{j}]", points, [grid_point_label(i, j) for i in range(m)])
                for j in range(m)]
    y1, y2 = y_sets(m, n)
    for name, ys in (('Y1', y1), ('Y2', y2)):
        if variant not in (name, VARIANT_FULL):
            continue
        labels = [f"{name}[{j}]" for j in range(m)]
        points.update(zip(labels, ys))
        declared.append(_span_line(name, points, labels))
    declared += _standard_transversals(n)
    flags = (FLAG_UNSUPPORTED,) if variant == VARIANT_FULL and m % 2 else ()
    if flags:
        logger.warning(f"m={m} 为奇数，G∪Y1∪Y2 的半网格性质没有理论保证")
    return Config(n, points, declared, flags)


# F4 根系（模符号）：e_i、e_i ± e_j、(1, ±1, ±1, ±1)
def _f4_roots() -> List[Tuple[int, int, int, int]]:
    roots = []
    for i in range(4):
        roots.append(tuple(1 if k == i else 0 for k in range(4)))
    for i, j in combinations(range(4), 2):
        for s in (1, -1):
            roots.append(tuple(1 if k == i else (s if k == j else 0) for k in range(4)))
    for s1 in (1, -1):
        for s2 in (1, -1):
            for s3 in (1, -1):
                roots.append((1, s1, s2, s3))
    return roots


# 六条两两异面的四点直线，每条由两个根张成
_F4_LINES = (
    ((1, 0, 0, 0), (0, 1, 0, 0)),
    ((0, 0, 1, 0), (0, 0, 0, 1)),
    ((1, 0, 1, 0), (0, 1, 0, 1)),
    ((1, 0, -1, 0), (0, 1, 0, -1)),
    ((1, 0, 0, 1), (0, 1, -1, 0)),
    ((1, 0, 0, -1), (0, 1, 1, 0)),
)


def f4_root_model(conductor: int = 1) -> Config:
    """F4 根系模符号的 24 个点，声明六条两两异面的四点直线"""
    points = {f"F[{k}]": ProjPoint(root, conductor) for k, root in enumerate(_f4_roots(), 1)}
    config = Config(conductor, points)
    declared = []
    for k, (a, b) in enumerate(_F4_LINES, 1):
        line = line_through(ProjPoint(a, conductor), ProjPoint(b, conductor))
        declared.append(DeclaredLine(f"H[{k}]", line, ROLE_GRID, tuple(config.points_on(line))))
    return Config(conductor, points, declared)


# ---------------------------------------------------------------------------
# 关联结构
# ---------------------------------------------------------------------------

def incidence_lines(Z: Config, k: int) -> List[IncidenceLine]:
    """至少包含 k 个点的全部直线（按点对枚举并去重）"""
    if k < 2:
        raise DegenerateInputError(f"k 必须 >= 2: {k}")
    labels = Z.sorted_labels()
    covered = set()
    found: List[IncidenceLine] = []
    for a, b in combinations(labels, 2):
        if (a, b) in covered:
            continue
        line = line_through(Z.point(a), Z.point(b))
        members = tuple(label for label in labels if line.contains(Z.point(label)))
        covered.update(combinations(members, 2))
        if len(members) >= k:
            found.append((line, members))
    logger.debug(f"{len(labels)} 个点中含至少 {k} 个点的直线: {len(found)} 条")
    return found


def _skew_families(candidates: Sequence[IncidenceLine], size: int) -> Iterator[List[int]]:
    """按字典序枚举 size 条两两异面的候选直线（返回下标）"""
    n = len(candidates)
    skew = [[i != j and are_skew(candidates[i][0], candidates[j][0]) for j in range(n)]
            for i in range(n)]

    def extend(chosen: List[int], start: int):
        if len(chosen) == size:
            yield list(chosen)
            return
        for idx in range(start, n):
            if n - idx < size - len(chosen):
                return
            if all(skew[idx][c] for c in chosen):
                chosen.append(idx)
                yield from extend(chosen, idx + 1)
                chosen.pop()

    yield from extend([], 0)


def _max_skew_family(candidates: Sequence[IncidenceLine]) -> int:
    best = 0
    for size in range(1, len(candidates) + 1):
        if next(_skew_families(candidates, size), None) is None:
            break
        best = size
    return best


def _grid_cert(a_family: Sequence[IncidenceLine], b_family: Sequence[IncidenceLine]) -> GridCert:
    incidence = []
    for _, a_members in a_family:
        row = []
        for _, b_members in b_family:
            common = set(a_members) & set(b_members)
            row.append(common.pop() if len(common) == 1 else '')
        incidence.append(row)
    return GridCert([l for l, _ in a_family], [l for l, _ in b_family], incidence)


def detect_structure(Z: Config, a: int, b: int) -> StructureReport:
    """按定义判定 Z 是 (a,b)-网格、半网格还是都不是

    A 族为 a 条各含恰 b 个点的两两异面直线，B 族为 b 条各含恰 a 个点的
    两两异面直线；a = b 时还要求两族不相交。
    """
    if a < 2 or b < 2:
        raise DegenerateInputError(f"a、b 必须 >= 2: ({a},{b})")
    if len(Z) != a * b:
        raise DegenerateInputError(f"点数 {len(Z)} 不等于 {a}·{b}")
    lines = incidence_lines(Z, min(a, b))
    with_b = [x for x in lines if len(x[1]) == b]
    with_a = [x for x in lines if len(x[1]) == a]

    family_a = family_b = None
    if a == b:
        families = list(_skew_families(with_b, a))
        for first, second in combinations(families, 2):
            if not set(first) & set(second):
                family_a, family_b = first, second
                break
        if family_a is None and families:
            family_a = families[0]
    else:
        family_a = next(_skew_families(with_b, a), None)
        family_b = next(_skew_families(with_a, b), None)

    if family_a is not None and family_b is not None:
        cert = _grid_cert([with_b[i] for i in family_a], [with_a[i] for i in family_b])
        logger.info(f"检测结果: ({a},{b})-网格")
        return StructureReport(KIND_GRID, a, b, grid=cert)
    if family_a is None and family_b is None:
        logger.info(f"检测结果: 既不是 ({a},{b})-网格也不是半网格")
        return StructureReport(KIND_NEITHER, a, b)

    # 恰有一族存在：记录另一族不存在的穷举证据
    if family_b is not None:
        present, per_line, missing_size, missing_per_line, pool = family_b, a, a, b, with_a
        missing_pool = with_b
    else:
        present, per_line, missing_size, missing_per_line, pool = family_a, b, b, a, with_b
        missing_pool = with_a
    if a == b:
        missing_pool = [x for k, x in enumerate(with_b) if k not in present]
    cert = HalfGridCert(
        lines=[pool[i][0] for i in present],
        points_per_line=per_line,
        missing_family_size=missing_size,
        missing_points_per_line=missing_per_line,
        candidate_lines=list(missing_pool),
        max_skew_family=_max_skew_family(missing_pool),
    )
    logger.info(f"检测结果: 半网格（{len(present)} 条直线各含 {per_line} 个点）")
    return StructureReport(KIND_HALF_GRID, a, b, half_grid=cert)


def validate_structure(Z: Config, report: StructureReport) -> None:
    """从头复核证书中的斜性与点数

    Raises:
        ConfigurationError: 证书与构形不符
    """
    def counts(line: ProjLine3) -> int:
        return len(Z.points_on(line))

    def check_family(lines: Sequence[ProjLine3], per_line: int, what: str):
        for x, y in combinations(lines, 2):
            if not are_skew(x, y):
                raise ConfigurationError(f"{what} 中存在共面直线")
        for line in lines:
            if counts(line) != per_line:
                raise ConfigurationError(f"{what} 中的直线不含恰 {per_line} 个点")

    if report.kind == KIND_GRID:
        cert = report.grid
        check_family(cert.a_lines, report.b, 'A 族')
        check_family(cert.b_lines, report.a, 'B 族')
        if report.a == report.b and set(cert.a_lines) & set(cert.b_lines):
            raise ConfigurationError("a = b 时两族必须不相交")
        for r, a_line in enumerate(cert.a_lines):
            for c, b_line in enumerate(cert.b_lines):
                hit = lines_meet(a_line, b_line)
                if hit is None or Z.label_of(hit) != cert.incidence[r][c]:
                    raise ConfigurationError(f"关联矩阵第 ({r},{c}) 项不成立")
    elif report.kind == KIND_HALF_GRID:
        cert = report.half_grid
        check_family(cert.lines, cert.points_per_line, '半网格直线族')
        covered = set()
        for line in cert.lines:
            covered.update(Z.points_on(line))
        if covered != set(Z.labels()):
            raise ConfigurationError("半网格直线没有覆盖全部点")
        if cert.max_skew_family >= cert.missing_family_size:
            raise ConfigurationError("另一族直线其实存在")
        for line, members in cert.candidate_lines:
            if len(Z.points_on(line)) != cert.missing_points_per_line:
                raise ConfigurationError("候选直线的点数与证书不符")


def _resolve_line(Z: Config, line: Union[str, ProjLine3]) -> ProjLine3:
    return Z.line(line) if isinstance(line, str) else line


def three_line_grid_check(Z: Config, lines: Sequence[Union[str, ProjLine3]]) -> GridCert:
    """三条斜直线上的点是否由 m 条截线组成网格

    对第一条直线上的每个点，作与另两条直线都相交的截线，要求交点都在 Z 中。

    Raises:
        ConfigurationError: 截线族不完整
    """
    if len(lines) != 3:
        raise DegenerateInputError("需要恰好三条直线")
    l1, l2, l3 = (_resolve_line(Z, l) for l in lines)
    for x, y in combinations((l1, l2, l3), 2):
        if not are_skew(x, y):
            raise DegenerateInputError("三条直线必须两两异面")
    on = [Z.points_on(l) for l in (l1, l2, l3)]
    m = len(on[0])
    if m < 2 or any(len(members) != m for members in on):
        raise DegenerateInputError(f"三条直线上的点数不一致: {[len(x) for x in on]}")

    transversals, incidence = [], [[], [], []]
    for label in on[0]:
        t = transversal_through_point(Z.point(label), l2, l3)
        hits = [label]
        for line in (l2, l3):
            hit_label = Z.label_of(lines_meet(t, line))
            if hit_label is None:
                raise ConfigurationError(f"过 {label} 的截线与另一条直线的交点不在构形中")
            hits.append(hit_label)
        transversals.append(t)
        for row, h in zip(incidence, hits):
            row.append(h)
    for k, row in enumerate(incidence[1:], 2):
        if sorted(row) != sorted(on[k - 1]):
            raise ConfigurationError(f"截线没有覆盖第 {k} 条直线上的全部点")
    return GridCert([l1, l2, l3], transversals, incidence)


# ---------------------------------------------------------------------------
# 射影等价
# ---------------------------------------------------------------------------

def _incidence_profile(Z: Config) -> Tuple[Dict[str, Tuple[int, ...]], Dict[Tuple[str, str], int]]:
    """每个点所在富直线的点数签名，以及点对所在富直线的点数"""
    lines = incidence_lines(Z, RICH_LINE_MIN_POINTS)
    profile = {label: [] for label in Z.labels()}
    pair_size = {}
    for _, members in lines:
        for label in members:
            profile[label].append(len(members))
        for x, y in combinations(members, 2):
            pair_size[(x, y)] = pair_size[(y, x)] = len(members)
    return {k: tuple(sorted(v)) for k, v in profile.items()}, pair_size


def _first_frame(Z: Config) -> List[str]:
    for subset in combinations(Z.sorted_labels(), 5):
        if in_general_position([Z.point(l) for l in subset]):
            return list(subset)
    raise DegenerateInputError("构形中没有处于一般位置的五个点")


def _coplanar(points: Sequence[ProjPoint]) -> bool:
    rows = unify([c for p in points for c in p.coords])
    return not determinant([rows[4 * k:4 * k + 4] for k in range(4)])


def find_projective_equivalence(A: Config, B: Config) -> Optional[EquivCert]:
    """寻找把 A 整体映到 B 的射影变换，不存在时返回 None

    先比较富直线签名，再对 A 的一个一般位置五点标架在 B 中回溯搜索像，
    每个完整的候选标架决定唯一的变换，再逐点检验。
    """
    if len(A) != len(B):
        return None
    n = lcm(A.conductor, B.conductor)
    A, B = A.embed(n) if A.conductor != n else A, B.embed(n) if B.conductor != n else B

    prof_a, pair_a = _incidence_profile(A)
    prof_b, pair_b = _incidence_profile(B)
    if Counter(prof_a.values()) != Counter(prof_b.values()):
        logger.info("富直线签名不同，构形不射影等价")
        return None

    frame = _first_frame(A)
    src = [A.point(l) for l in frame]
    b_labels = B.sorted_labels()
    b_index = B.index()
    tried = 0

    def candidates(k: int, chosen: List[str]) -> Iterator[str]:
        preferred = [frame[k]] if frame[k] in B.points else []
        for label in preferred + [l for l in b_labels if l not in preferred]:
            if label in chosen or prof_b[label] != prof_a[frame[k]]:
                continue
            if any(pair_b.get((label, c), 0) != pair_a.get((frame[k], frame[i]), 0)
                   for i, c in enumerate(chosen)):
                continue
            if len(chosen) >= 3:
                pts = [B.point(c) for c in chosen] + [B.point(label)]
                if any(_coplanar(list(quad) + [pts[-1]]) for quad in combinations(pts[:-1], 3)):
                    continue
            yield label

    def search(chosen: List[str]) -> Optional[EquivCert]:
        nonlocal tried
        k = len(chosen)
        if k == 5:
            tried += 1
            dst = [B.point(l) for l in chosen]
            try:
                matrix = transform_from_point_correspondence(src, dst)
            except DegenerateInputError:
                return None
            point_map = {}
            for label, p in A.points.items():
                image = b_index.get(apply_matrix(matrix, p))
                if image is None:
                    return None
                point_map[label] = image
            if len(set(point_map.values())) != len(point_map):
                return None
            return EquivCert(matrix, point_map)
        for label in candidates(k, chosen):
            found = search(chosen + [label])
            if found is not None:
                return found
        return None

    cert = search([])
    logger.info(f"射影等价搜索: 检验了 {tried} 个候选标架，"
                f"{'找到' if cert else '没有找到'}等价变换")
    return cert
