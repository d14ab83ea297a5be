#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
geproci 认证模块

从随机有理中心把构形投影到固定的像平面，并证明像是 (a,b) 型横截完全交：
取次数 a、b 的消没形式 f_a、f_b，再用剪切后一元特化的结式说明二者没有公共分量。
"""

import logging
import random
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from halfgrids.core.errors import CertificationError, DegenerateInputError
from halfgrids.core.exactalg import CycElem, as_elem, common_conductor, determinant, kernel, rank, unify
from halfgrids.core.models import (
    Config, GeprociCert, PlanarConfig, ResultantWitness, TrialRecord
)
from halfgrids.core.projgeom import Plane3, ProjLine3, ProjPoint
from halfgrids.utils.constants import (
    CENTER_BOX, DEFAULT_IMAGE_PLANE, DEFAULT_SEED, DEFAULT_TRIALS, IMAGE_PLANE_DROPPED_COORD,
    PROJECTION_RETRIES, RESULTANT_SPECIALIZATIONS, SPECIALIZATION_BOX
)
from halfgrids.utils.worker_pool import parallel_map

logger = logging.getLogger(__name__)

Exponent = Tuple[int, int, int]


def default_plane(conductor: int = 1) -> Plane3:
    return Plane3(DEFAULT_IMAGE_PLANE, conductor)


# ---------------------------------------------------------------------------
# 投影
# ---------------------------------------------------------------------------

def _plane_coords(v: Sequence[CycElem]) -> ProjPoint:
    return ProjPoint([c for k, c in enumerate(v) if k != IMAGE_PLANE_DROPPED_COORD])


def project(Z: Config, center: ProjPoint, plane: Optional[Plane3] = None) -> PlanarConfig:
    """从 center 把 Z 投影到平面上，删去 w 坐标得到 P^2 坐标

    π(X) = (h·P)X - (h·X)P 位于平面 h 上。

    Raises:
        DegenerateInputError: 中心在平面上、中心属于 Z 或中心位于某条割线上
    """
    plane = plane or default_plane()
    if not plane.coeffs[IMAGE_PLANE_DROPPED_COORD]:
        raise DegenerateInputError("像平面不能用删去 w 坐标的方式参数化")
    n = Z.conductor
    h = unify(plane.coeffs, n)
    p = unify(center.coords, n)
    hp = sum((a * b for a, b in zip(h, p)), as_elem(0, n))
    if not hp:
        raise DegenerateInputError(f"投影中心 {center!r} 位于像平面上")
    center = ProjPoint(p)
    if Z.label_of(center) is not None:
        raise DegenerateInputError(f"投影中心 {center!r} 属于构形")

    labels = Z.sorted_labels()
    images = []
    seen: Dict[ProjPoint, str] = {}
    for label in labels:
        x = Z.point(label).coords
        hx = sum((a * b for a, b in zip(h, x)), as_elem(0, n))
        image = _plane_coords([hp * xi - hx * pi for xi, pi in zip(x, p)])
        if image in seen:
            raise DegenerateInputError(f"投影中心位于割线 {seen[image]}-{label} 上")
        seen[image] = label
        images.append(image)
    return PlanarConfig(images, labels, center, plane)


# ---------------------------------------------------------------------------
# 平面曲线的稠密表示（分次字典序单项式）
# ---------------------------------------------------------------------------

def monomials(d: int) -> List[Exponent]:
    """次数 d 的单项式 x^α y^β z^γ，按 α 降序、再按 β 降序"""
    return [(alpha, beta, d - alpha - beta)
            for alpha in range(d, -1, -1) for beta in range(d - alpha, -1, -1)]


def _powers(values: Sequence[CycElem], d: int) -> List[List[CycElem]]:
    table = []
    for v in values:
        row = [v * 0 + 1]
        for _ in range(d):
            row.append(row[-1] * v)
        table.append(row)
    return table


def evaluate_form(coeffs: Sequence[CycElem], d: int, point: ProjPoint) -> CycElem:
    n = common_conductor(list(point.coords) + list(coeffs))
    px, py, pz = _powers(unify(point.coords, n), d)
    total = as_elem(0, n)
    for c, (a, b, g) in zip(coeffs, monomials(d)):
        if c:
            total = total + c * px[a] * py[b] * pz[g]
    return total


def vanishing_forms(S: PlanarConfig, d: int) -> List[Tuple[CycElem, ...]]:
    """在 S 上消没的 d 次形式空间的一组基"""
    if d < 1:
        raise DegenerateInputError(f"次数必须 >= 1: {d}")
    monos = monomials(d)
    n = common_conductor(c for p in S.points for c in p.coords)
    rows = []
    for point in S.points:
        px, py, pz = _powers(unify(point.coords, n), d)
        rows.append([px[a] * py[b] * pz[g] for a, b, g in monos])
    basis = kernel(rows, ncols=len(monos), conductor=n)
    logger.debug(f"{len(S.points)} 个点上的 {d} 次消没形式: {len(basis)} 维")
    return basis


def multiply_forms(f: Sequence[CycElem], df: int, g: Sequence[CycElem], dg: int) -> List[CycElem]:
    """两个形式的乘积（次数 df + dg）"""
    n = common_conductor(list(f) + list(g))
    index = {e: k for k, e in enumerate(monomials(df + dg))}
    out = [as_elem(0, n)] * len(index)
    for a, ea in zip(f, monomials(df)):
        if not a:
            continue
        for b, eb in zip(g, monomials(dg)):
            if b:
                k = index[(ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2])]
                out[k] = out[k] + a * b
    return out


# ---------------------------------------------------------------------------
# 结式
# ---------------------------------------------------------------------------

def _sheared_leading(coeffs: Sequence[CycElem], d: int, shear: int) -> CycElem:
    """f(shear, 0, 1)，即 x <- x + shear·z 后 z^d 的系数"""
    total = coeffs[0] * 0
    for c, (a, b, g) in zip(coeffs, monomials(d)):
        if c and b == 0:
            total = total + c * shear ** a
    return total


def _specialize(coeffs: Sequence[CycElem], d: int, shear: int, x0: int) -> List[CycElem]:
    """h(z) = f(x0 + shear·z, 1, z)，系数按 z 的升幂"""
    zero = coeffs[0] * 0
    out = [zero] * (d + 1)
    for c, (a, b, g) in zip(coeffs, monomials(d)):
        if not c:
            continue
        # (x0 + shear·z)^a · z^g
        for k in range(a + 1):
            term = comb(a, k) * x0 ** (a - k) * shear ** k
            if term:
                out[k + g] = out[k + g] + c * term
    return out


def sylvester_resultant(p: Sequence[CycElem], q: Sequence[CycElem]) -> CycElem:
    """两个一元多项式（升幂系数，首项非零）的 Sylvester 结式"""
    dp, dq = len(p) - 1, len(q) - 1
    size = dp + dq
    zero = p[0] * 0
    hp, hq = list(reversed(p)), list(reversed(q))
    rows = []
    for k in range(dq):
        rows.append([zero] * k + hp + [zero] * (size - k - dp - 1))
    for k in range(dp):
        rows.append([zero] * k + hq + [zero] * (size - k - dq - 1))
    return determinant(rows)


def choose_shear(f_a: Sequence[CycElem], a: int, f_b: Sequence[CycElem], b: int) -> Optional[int]:
    """使两个形式剪切后 z 的首项系数都非零的最小正整数

    f(t, 0, 1) 的次数不超过 a + b，试 a + b + 1 个值仍失败说明它恒为零（y 整除某个形式），返回 None。
    """
    for shear in range(1, a + b + 2):
        if _sheared_leading(f_a, a, shear) and _sheared_leading(f_b, b, shear):
            return shear
    return None


def resultant_witness(f_a, a: int, f_b, b: int, shear: int, x0: int) -> CycElem:
    return sylvester_resultant(_specialize(f_a, a, shear, x0), _specialize(f_b, b, shear, x0))


# ---------------------------------------------------------------------------
# 完全交认证
# ---------------------------------------------------------------------------

def _outside_span(candidates: Sequence[Sequence[CycElem]], span: List[Sequence[CycElem]]) -> List:
    base = rank(span) if span else 0
    return [v for v in candidates if rank(list(span) + [v]) > base]


def ci_certify(S: PlanarConfig, a: int, b: int, rng: Optional[random.Random] = None) -> TrialRecord:
    """证明 S 是 (a,b) 型横截完全交

    Raises:
        CertificationError: a 次核为空、b 次核被 f_a 的倍数耗尽或结式恒为零
    """
    if a > b:
        a, b = b, a
    if len(S.points) != a * b:
        raise DegenerateInputError(f"点数 {len(S.points)} 不等于 {a}·{b}")
    rng = rng or random.Random(DEFAULT_SEED)

    forms_a = vanishing_forms(S, a)
    if not forms_a:
        raise CertificationError(f"没有在像点上消没的 {a} 次曲线")
    f_a = forms_a[0]
    forms_b = vanishing_forms(S, b)
    multiples = [multiply_forms(f_a, a, [as_elem(int(e == m), f_a[0].conductor)
                                        for e in monomials(b - a)], b - a)
                 for m in monomials(b - a)]
    if len(forms_b) <= comb(b - a + 2, 2):
        raise CertificationError(f"{b} 次消没形式全是 f_{a} 的倍数")
    candidates = _outside_span(forms_b, multiples)
    if not candidates:
        raise CertificationError(f"{b} 次消没形式全是 f_{a} 的倍数")

    for f_b in candidates:
        shear = choose_shear(f_a, a, f_b, b)
        if shear is None:
            logger.debug("剪切无法使首项系数非零，换下一个候选")
            continue
        for _ in range(RESULTANT_SPECIALIZATIONS):
            x0 = rng.randint(-SPECIALIZATION_BOX, SPECIALIZATION_BOX)
            value = resultant_witness(f_a, a, f_b, b, shear, x0)
            if value:
                return TrialRecord(S.center, list(S.points), tuple(f_a), tuple(f_b),
                                   ResultantWitness(shear, x0, value))
    raise CertificationError(f"f_{a} 与所有候选 f_{b} 的结式都为零（存在公共分量）")


def sample_center(rng: random.Random, conductor: int = 1) -> ProjPoint:
    while True:
        coords = [rng.randint(-CENTER_BOX, CENTER_BOX) for _ in range(4)]
        if any(coords):
            return ProjPoint(coords, conductor)


def _run_trial(job) -> Tuple[Optional[TrialRecord], Optional[str]]:
    Z, a, b, plane, trial_seed = job
    rng = random.Random(trial_seed)
    for attempt in range(1, PROJECTION_RETRIES + 1):
        center = sample_center(rng, Z.conductor)
        try:
            image = project(Z, center, plane)
        except DegenerateInputError as e:
            logger.debug(f"中心 {center!r} 被拒绝: {e}")
            continue
        try:
            record = ci_certify(image, a, b, rng)
        except CertificationError as e:
            return None, f"中心 {center!r}: {e}"
        record.attempts = attempt
        return record, None
    raise CertificationError(f"连续 {PROJECTION_RETRIES} 个投影中心都退化")


def is_geproci(Z: Config, a: int, b: int, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED,
               plane: Optional[Plane3] = None, workers: int = 1,
               progress_callback=None) -> Tuple[bool, GeprociCert]:
    """对 trials 个随机中心逐一投影并认证，全部成功时返回 True

    每次试验的随机源由主种子派生，结果与工作进程数无关。
    """
    if len(Z) != a * b:
        raise DegenerateInputError(f"点数 {len(Z)} 不等于 {a}·{b}")
    if trials < 1:
        raise DegenerateInputError(f"试验次数必须 >= 1: {trials}")
    plane = plane or default_plane()
    master = random.Random(seed)
    trial_seeds = [master.randrange(2 ** 32) for _ in range(trials)]
    jobs = [(Z, a, b, plane, s) for s in trial_seeds]
    outcomes = parallel_map(_run_trial, jobs, workers, progress_callback)

    cert = GeprociCert(a, b, seed, plane)
    for t, (record, failure) in enumerate(outcomes, 1):
        if record is not None:
            cert.records.append(record)
            logger.info(f"试验 {t}/{trials}: 认证成功（中心 {record.center!r}）")
        else:
            cert.failures.append(failure)
            logger.info(f"试验 {t}/{trials}: 认证失败 - {failure}")
    return cert.certified, cert


def verify_certificate(cert: GeprociCert, Z: Optional[Config] = None) -> bool:
    """不重新求核，直接复核证书中的每条试验记录

    Raises:
        CertificationError: 任一条记录不成立
    """
    a, b = min(cert.a, cert.b), max(cert.a, cert.b)
    if not cert.records:
        raise CertificationError("证书中没有试验记录")
    if cert.failures:
        raise CertificationError(f"证书包含 {len(cert.failures)} 次失败的试验")
    for t, record in enumerate(cert.records, 1):
        pts = record.image_points
        if len(set(pts)) != len(pts) or len(pts) != a * b:
            raise CertificationError(f"记录 {t}: 像点个数不是 {a * b} 个互异点")
        if Z is not None:
            expected = project(Z, record.center, cert.plane).points
            if set(expected) != set(pts):
                raise CertificationError(f"记录 {t}: 像点与构形的投影不符")
        if not any(record.f_a) or not any(record.f_b):
            raise CertificationError(f"记录 {t}: 消没形式为零")
        for p in pts:
            if evaluate_form(record.f_a, a, p) or evaluate_form(record.f_b, b, p):
                raise CertificationError(f"记录 {t}: 形式在像点 {p!r} 上不为零")
        w = record.witness
        if not (_sheared_leading(record.f_a, a, w.shear) and _sheared_leading(record.f_b, b, w.shear)):
            raise CertificationError(f"记录 {t}: 剪切后首项系数为零")
        value = resultant_witness(record.f_a, a, record.f_b, b, w.shear, w.x0)
        if not value or value != w.value:
            raise CertificationError(f"记录 {t}: 结式见证不成立")
    return True


def line_image_form(line: ProjLine3, center: ProjPoint, plane: Optional[Plane3] = None) -> List[CycElem]:
    """直线投影像的一次形式（像平面坐标 x, y, z）"""
    plane = plane or default_plane()
    n = common_conductor(list(line.pluecker) + list(center.coords))
    h = unify(plane.coeffs, n)
    p = unify(center.coords, n)
    hp = sum((s * t for s, t in zip(h, p)), as_elem(0, n))
    images = []
    for q in line.points():
        x = unify(q.coords, n)
        hx = sum((s * t for s, t in zip(h, x)), as_elem(0, n))
        images.append([c for k, c in enumerate(hp * xi - hx * pi for xi, pi in zip(x, p))
                       if k != IMAGE_PLANE_DROPPED_COORD])
    u, v = images
    normal = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
    if not any(normal):
        raise DegenerateInputError("投影中心在直线上，像退化为一点")
    # monomials(1) 的顺序为 x, y, z
    return normal


def line_product_form(lines: Sequence[ProjLine3], center: ProjPoint,
                      plane: Optional[Plane3] = None) -> List[CycElem]:
    """若干直线像的乘积，次数为直线条数"""
    form, degree = None, 0
    for line in lines:
        linear = line_image_form(line, center, plane)
        form = linear if form is None else multiply_forms(form, degree, linear, 1)
        degree += 1
    return form
