#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
命令处理核心模块

每个 run_* 函数对应一个命令行子命令：完成计算、与内置基准数据比对、
打印报告并按需写出 JSON 文件与运行清单。返回值为退出码，
数学上的不符通过异常抛出，由入口统一映射。
"""

import logging
import os
import re
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Optional, Sequence, Tuple

from halfgrids.core.concurrency import concurrency_scan
from halfgrids.core.construct import (
    MU_ROWS, MuAssignment, assemble_pair, construct, external_line, run_all_mu
)
from halfgrids.core.errors import (
    CertificationError, DegenerateInputError, FieldError, GoldenMismatchError,
    InputFormatError
)
from halfgrids.core.exactalg import CycElem, as_elem
from halfgrids.core.geproci import is_geproci, verify_certificate
from halfgrids.core.halfgrid import (
    KIND_NEITHER, detect_structure, f4_root_model, find_projective_equivalence,
    standard_halfgrid, validate_structure
)
from halfgrids.core.models import Config, RunManifest, StructureReport
from halfgrids.core.perms import (
    Mobius, PermS4, admissibility_report, mobius_fixed_points, mobius_from_permutation,
    normalized_quadruple
)
from halfgrids.core.projgeom import Plane3, ProjLine3, ProjPoint, meet_planes
from halfgrids.utils.constants import (
    CERTIFICATE_FILE, CONCURRENCY_REPORT_FILE, CONSTRUCTION_CONDUCTOR, CONSTRUCTION_REPORT_FILE,
    DEFAULT_SEED, DEFAULT_TRIALS, EXIT_MISMATCH, EXIT_OK, TABLES_REPORT_FILE
)
from halfgrids.utils.file_utils import (
    certificate_to_dict, config_to_dict, equivalence_to_dict, load_certificate, load_config,
    load_goldens, rational_vector, save_certificate, save_config, save_json, stable_json,
    write_manifest
)
from halfgrids.utils.format_utils import (
    format_elem, format_line_ideal, format_matrix, format_perm, format_point, format_table,
    parse_ideal
)

logger = logging.getLogger(__name__)

FORMAT_TEXT = 'text'
FORMAT_JSON = 'json'
ANHARMONIC = 'anharmonic'
# 非调和交比 ζ6 所在的工作域
ANHARMONIC_CONDUCTOR = 12


@dataclass
class RunOptions:
    """所有子命令共享的参数"""
    seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    conductor: Optional[int] = None
    emit: Optional[str] = None
    fmt: str = FORMAT_TEXT
    workers: int = 1
    progress_callback: Optional[Callable] = None
    version: str = ''
    goldens: Optional[Dict] = None
    digests: Dict[str, str] = field(default_factory=dict)

    def golden(self, key: str) -> Dict:
        if self.goldens is None:
            self.goldens = load_goldens()
        return self.goldens[key]


def _conductor_for(options: RunOptions, required: int) -> int:
    """--conductor 必须是计算所需导体的倍数"""
    if options.conductor is None:
        return required
    if options.conductor % required:
        raise FieldError(f"导体 {options.conductor} 不是 {required} 的倍数")
    return options.conductor


def _emit(options: RunOptions, name: str, data) -> None:
    if options.emit:
        options.digests[name] = save_json(data, os.path.join(options.emit, name))


def _emit_config(options: RunOptions, name: str, Z: Config) -> None:
    if options.emit:
        options.digests[name] = save_config(Z, os.path.join(options.emit, name))


def _finish(options: RunOptions, command: str, parameters: Dict, start: float,
            report: Dict, text: str, report_file: Optional[str] = None) -> None:
    """输出报告，并在 --emit 目录下写清单"""
    if options.fmt == FORMAT_JSON:
        print(stable_json(report), end='')
    else:
        print(text)
    if not options.emit:
        return
    if report_file:
        _emit(options, report_file, report)
    manifest = RunManifest(command, parameters, options.seed, options.conductor, options.version,
                           time.perf_counter() - start, dict(options.digests))
    write_manifest(manifest, options.emit)


def _poly_at(coeffs: Sequence, q: Fraction) -> Fraction:
    value = Fraction(0)
    for c in reversed(rational_vector(coeffs)):
        value = value * q + c
    return value


def line_from_ideal(text: str, conductor: int = 1) -> ProjLine3:
    """由 "(y+z,x-w)" 形式的理想构造直线"""
    first, second = parse_ideal(text)
    return meet_planes(Plane3(first, conductor), Plane3(second, conductor))


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

def _table1(options: RunOptions) -> Tuple[Dict, str]:
    golden = options.golden('table1')
    n = _conductor_for(options, CONSTRUCTION_CONDUCTOR)
    samples = rational_vector(golden['samples'])
    rows, text_rows = [], []
    for entry in golden['rows']:
        sigma = PermS4.parse(entry['perm'])
        # 1. 在每个样本值上比对矩阵与不动点
        for q in samples:
            points = normalized_quadruple(as_elem(q, n))
            mobius = mobius_from_permutation(points, sigma)
            expected = Mobius([[as_elem(_poly_at(c, q), n) for c in row] for row in entry['matrix']])
            if mobius != expected:
                raise GoldenMismatchError(f"表 1 {sigma} 在 q={q} 处的矩阵不符: {mobius!r}")
            report = mobius_fixed_points(mobius)
            center = as_elem(_poly_at(entry['center'], q), n)
            radicand = as_elem(_poly_at(entry['radicand'], q), n)
            if not report.matches_symbolic(center, radicand):
                raise GoldenMismatchError(f"表 1 {sigma} 在 q={q} 处的不动点不符: {report}")
        # 2. q = -1 一列
        harmonic = mobius_fixed_points(mobius_from_permutation(normalized_quadruple(as_elem(-1, n)), sigma))
        rows.append({'perm': format_perm(sigma), 'matrix': entry['matrix'],
                     'center': entry['center'], 'radicand': entry['radicand'],
                     'q_minus_one': str(harmonic), 'q_minus_one_kind': harmonic.kind})
        text_rows.append([format_perm(sigma), _symbolic_matrix(entry['matrix']),
                          f"[1:{_poly_text(entry['center'])}±a], a^2={_poly_text(entry['radicand'])}",
                          str(harmonic)])
    text = format_table(['置换', '线性自同构', '不动点', 'q=-1'], text_rows)
    return {'table': 1, 'samples': golden['samples'], 'rows': rows}, text


def _poly_text(coeffs: Sequence) -> str:
    terms = []
    for k, c in enumerate(rational_vector(coeffs)):
        if not c:
            continue
        mono = '' if k == 0 else ('q' if k == 1 else f"q^{k}")
        if mono and abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}{mono}"
        sign = '-' if c < 0 else ('+' if terms else '')
        terms.append(f"{sign}{body}")
    return ''.join(terms) or '0'


def _symbolic_matrix(matrix) -> str:
    return '(' + ','.join('(' + ','.join(_poly_text(c) for c in row) + ')' for row in matrix) + ')'


def _table2(options: RunOptions) -> Tuple[Dict, str]:
    golden = options.golden('table2')
    n = _conductor_for(options, CONSTRUCTION_CONDUCTOR)
    q = as_elem(rational_vector([golden['q']])[0], n)
    report = admissibility_report(q)
    rows, text_rows = [], []
    for entry in golden['rows']:
        sigma = PermS4.parse(entry['perm'])
        if sigma not in report.fixed_point_free:
            raise GoldenMismatchError(f"表 2: {sigma} 不在无不动点的稳定子中")
        mobius = report.mobius[sigma]
        expected = Mobius([[as_elem(c, n) for c in rational_vector(row)] for row in entry['matrix']])
        if mobius != expected:
            raise GoldenMismatchError(f"表 2 {sigma} 的矩阵不符: {mobius!r}")
        fixed = mobius_fixed_points(mobius)
        center, radicand = (as_elem(v, n) for v in rational_vector([entry['center'], entry['radicand']]))
        if not fixed.matches_symbolic(center, radicand):
            raise GoldenMismatchError(f"表 2 {sigma} 的不动点不符: {fixed}")
        rows.append({'perm': format_perm(sigma), 'matrix': format_matrix(mobius.mat),
                     'fixed_points': str(fixed)})
        text_rows.append([format_perm(sigma), format_matrix(mobius.mat), str(fixed)])
    text = format_table(['置换', '线性自同构', '不动点'], text_rows)
    return {'table': 2, 'q': golden['q'], 'rows': rows}, text


def _table3(options: RunOptions) -> Tuple[Dict, str]:
    golden = options.golden('table3')
    _conductor_for(options, CONSTRUCTION_CONDUCTOR)
    rows, text_rows = [], []
    for entry in golden['rows']:
        mu = MuAssignment.from_pair(entry['sigma2'], entry['sigma3'])
        line = external_line(mu)
        if line != line_from_ideal(entry['ideal'], line.conductor):
            raise GoldenMismatchError(f"表 3 第 {entry['row']} 行不符: {format_line_ideal(line)}")
        ideal = format_line_ideal(line)
        rows.append({'row': entry['row'], 'sigma2': format_perm(mu.sigma2),
                     'sigma3': format_perm(mu.sigma3), 'ideal': ideal})
        text_rows.append([str(entry['row']), format_perm(mu.sigma2), format_perm(mu.sigma3), ideal])
    text = format_table(['行', 'σ2', 'σ3', 'L 的理想'], text_rows)
    return {'table': 3, 'rows': rows}, text


TABLE_RUNNERS = {1: _table1, 2: _table2, 3: _table3}


def run_tables(which: Sequence[int], options: RunOptions) -> int:
    """重新计算并打印表格，与基准数据不符时抛出 GoldenMismatchError"""
    start = time.perf_counter()
    reports, texts = [], []
    for k in which:
        if k not in TABLE_RUNNERS:
            raise InputFormatError(f"没有第 {k} 张表")
        report, text = TABLE_RUNNERS[k](options)
        logger.info(f"表 {k} 与基准数据一致")
        reports.append(report)
        texts.append(f"表 {k}\n{text}")
    _finish(options, 'tables', {'which': list(which)}, start,
            {'tables': reports}, '\n\n'.join(texts), TABLES_REPORT_FILE)
    return EXIT_OK


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------

def parse_mu(text: str) -> Optional[MuAssignment]:
    """"all" 返回 None；接受行号 1..6 或 "σ2,σ3"（如 2143,3421）"""
    text = text.strip()
    if text.lower() == 'all':
        return None
    if text.isdigit() and len(text) == 1:
        return MuAssignment.for_row(int(text))
    parts = [p for p in re.split(r"[,/;\s]+", text) if p]
    if len(parts) != 2:
        raise InputFormatError(f"无法解析 μ: {text!r}")
    try:
        return MuAssignment.from_pair(parts[0].strip(), parts[1].strip())
    except DegenerateInputError as e:
        raise InputFormatError(str(e))


def _check_construction_goldens(result, golden: Dict) -> None:
    n = result.L.conductor
    expected_r = [ProjPoint(rational_vector(p), n) for p in golden['R']]
    expected_p4 = [ProjPoint(rational_vector(p), n) for p in golden['P4']]
    if list(result.R) != expected_r:
        raise GoldenMismatchError(f"R 点不符: {result.R}")
    if list(result.P4) != expected_p4:
        raise GoldenMismatchError(f"P4 点不符: {result.P4}")
    if result.L4 != line_from_ideal(golden['L4'], n):
        raise GoldenMismatchError(f"L4 不符: {format_line_ideal(result.L4)}")


def _result_dict(result) -> Dict:
    return {
        'row': result.row,
        'sigma2': format_perm(result.mu.sigma2),
        'sigma3': format_perm(result.mu.sigma3),
        'sigma4': format_perm(result.mu.sigma4),
        'L': result.ideal(),
        'R': [format_point(p) for p in result.R],
        'P4': [format_point(p) for p in result.P4],
        'L4': format_line_ideal(result.L4),
    }


def _result_text(result) -> str:
    lines = [f"第 {result.row} 行: σ2={result.mu.sigma2}, σ3={result.mu.sigma3}, σ4={result.mu.sigma4}",
             f"  L  = {result.ideal()}",
             f"  R  = {', '.join(format_point(p) for p in result.R)}",
             f"  P4 = {', '.join(format_point(p) for p in result.P4)}",
             f"  L4 = {format_line_ideal(result.L4)}"]
    return '\n'.join(lines)


def run_construct(mu_text: str, options: RunOptions, check_equivalence: bool = True) -> int:
    """执行外直线构造；mu 为 all 时给出配对并拼接 24 点构形"""
    start = time.perf_counter()
    n = _conductor_for(options, CONSTRUCTION_CONDUCTOR)
    golden = options.golden('construction')
    mu = parse_mu(mu_text)

    # 1. 单个 μ
    if mu is not None:
        result = construct(mu)
        if result.row == golden['row']:
            _check_construction_goldens(result, golden)
        _emit_config(options, f"construction_row{result.row}.json", result.Z20.embed(n))
        _finish(options, 'construct', {'mu': mu_text}, start,
                {'results': [_result_dict(result)]}, _result_text(result), CONSTRUCTION_REPORT_FILE)
        return EXIT_OK

    # 2. 全部六个 μ 与配对
    print(f"对全部 {len(MU_ROWS)} 个 μ 执行构造...")
    report = run_all_mu(options.workers, options.progress_callback)
    for result in report.results:
        if result.row == golden['row']:
            _check_construction_goldens(result, golden)
    expected_pairing = [tuple(p) for p in golden['pairing']]
    if report.pairing != expected_pairing:
        raise GoldenMismatchError(f"L4 配对不符: {report.pairing}")

    # 3. 拼接并与 F4 模型比较
    reference = f4_root_model() if check_equivalence else None
    pairs = []
    for pair in report.pairing:
        Z = assemble_pair(pair, report)
        name = f"pair_{pair[0]}_{pair[1]}.json"
        _emit_config(options, name, Z.embed(n))
        entry = {'pair': list(pair), 'points': len(Z), 'file': name if options.emit else None}
        if reference is not None:
            print(f"检查 {pair} 拼接构形与 F4 模型的射影等价...")
            cert = find_projective_equivalence(Z, reference)
            if cert is None:
                raise GoldenMismatchError(f"拼接构形 {pair} 与 F4 模型不射影等价")
            entry['equivalence'] = equivalence_to_dict(cert)
        pairs.append(entry)

    text = '\n'.join([_result_text(r) for r in report.results] +
                     ['', '按 L4 配对: ' + ' '.join('{' + ','.join(map(str, p)) + '}' for p in report.pairing)] +
                     [f"  {p['pair']}: {p['points']} 个点" +
                      ('，与 F4 模型射影等价' if 'equivalence' in p else '') for p in pairs])
    data = {'results': [_result_dict(r) for r in report.results],
            'pairing': [list(p) for p in report.pairing], 'pairs': pairs}
    _finish(options, 'construct', {'mu': 'all', 'check_equivalence': check_equivalence}, start,
            data, text, CONSTRUCTION_REPORT_FILE)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify / verify-cert / detect
# ---------------------------------------------------------------------------

def _load_with_conductor(path: str, options: RunOptions) -> Config:
    Z = load_config(path)
    n = _conductor_for(options, Z.conductor)
    return Z.embed(n) if n != Z.conductor else Z


def _structure_text(report: StructureReport) -> str:
    text = f"结构: {report.kind} ({report.a},{report.b})"
    if report.half_grid is not None:
        h = report.half_grid
        text += (f"\n  {len(h.lines)} 条直线各含 {h.points_per_line} 个点；"
                 f"另一族需要 {h.missing_family_size} 条各含 {h.missing_points_per_line} 个点的直线，"
                 f"候选 {len(h.candidate_lines)} 条，最大斜子族 {h.max_skew_family}")
    return text


def run_verify(path: str, a: int, b: int, options: RunOptions) -> int:
    """结构检测加 geproci 认证，写出证书；认证成功返回 0"""
    start = time.perf_counter()
    Z = _load_with_conductor(path, options)

    # 1. 结构检测
    structure = detect_structure(Z, a, b)
    if structure.kind != KIND_NEITHER:
        validate_structure(Z, structure)

    # 2. 投影认证
    print(f"对 {len(Z)} 个点做 {options.trials} 次投影试验 (a,b)=({a},{b})...")
    certified, cert = is_geproci(Z, a, b, options.trials, options.seed,
                                 workers=options.workers, progress_callback=options.progress_callback)
    if certified:
        verify_certificate(cert, Z)
    if options.emit:
        options.digests[CERTIFICATE_FILE] = save_certificate(cert, os.path.join(options.emit, CERTIFICATE_FILE))

    text = '\n'.join([_structure_text(structure),
                      f"geproci ({a},{b}): {'已认证' if certified else '未认证'}，"
                      f"成功 {len(cert.records)} 次，失败 {len(cert.failures)} 次"] +
                     [f"  {f}" for f in cert.failures])
    data = {'structure': structure.kind, 'a': a, 'b': b, 'certified': certified,
            'certificate': certificate_to_dict(cert)}
    _finish(options, 'verify', {'input': os.path.basename(path), 'a': a, 'b': b,
                                'trials': options.trials}, start, data, text)
    if not certified:
        raise CertificationError(f"构形不是 ({a},{b})-geproci 或认证失败")
    return EXIT_OK


def run_verify_cert(cert_path: str, config_path: Optional[str], options: RunOptions) -> int:
    """不重新计算地复核证书；给出配置时同时复核像点"""
    start = time.perf_counter()
    cert = load_certificate(cert_path)
    Z = _load_with_conductor(config_path, options) if config_path else None
    verify_certificate(cert, Z)
    text = f"证书有效: ({cert.a},{cert.b})，{len(cert.records)} 条试验记录"
    _finish(options, 'verify-cert', {'certificate': os.path.basename(cert_path)}, start,
            {'valid': True, 'a': cert.a, 'b': cert.b, 'records': len(cert.records)}, text)
    return EXIT_OK


def run_detect(path: str, a: int, b: int, options: RunOptions) -> int:
    start = time.perf_counter()
    Z = _load_with_conductor(path, options)
    structure = detect_structure(Z, a, b)
    if structure.kind != KIND_NEITHER:
        validate_structure(Z, structure)
    _finish(options, 'detect', {'input': os.path.basename(path), 'a': a, 'b': b}, start,
            {'kind': structure.kind, 'a': a, 'b': b}, _structure_text(structure))
    return EXIT_OK if structure.kind != KIND_NEITHER else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# concurrency
# ---------------------------------------------------------------------------

def run_concurrency(m_min: int, m_max: int, options: RunOptions) -> int:
    """同时点扫描；已验证范围内计数不为 2 时抛出 GoldenMismatchError"""
    start = time.perf_counter()
    golden = options.golden('concurrency')
    lo, hi = golden['verified_m']
    rows = concurrency_scan(m_min, m_max, options.workers, options.progress_callback, options.conductor)

    text_rows, data_rows = [], []
    for row in rows:
        points = [format_point(p.q) for p in row.points]
        text_rows.append([str(row.m), str(row.count), f"{row.spot}:{row.spot_count}",
                          '是' if row.formula_points_present else '否', row.status,
                          f"{row.wall_time:.2f}s", ' '.join(points)])
        data_rows.append({'m': row.m, 'count': row.count, 'spot': list(row.spot),
                          'spot_count': row.spot_count,
                          'formula_points_present': row.formula_points_present,
                          'status': row.status,
                          'points': points})
    text = format_table(['m', '同时点数', '抽查', '公式点', '状态', '耗时', '同时点'], text_rows)
    _finish(options, 'concurrency', {'m_min': m_min, 'm_max': m_max}, start,
            {'rows': data_rows}, text, CONCURRENCY_REPORT_FILE)

    bad = [row.m for row in rows if lo <= row.m <= hi
           and (row.count != golden['count'] or not row.consistent)]
    if bad:
        raise GoldenMismatchError(f"m={bad} 的同时点数与已知结果不符")
    return EXIT_OK


# ---------------------------------------------------------------------------
# admissible
# ---------------------------------------------------------------------------

def parse_q(text: str, options: RunOptions) -> CycElem:
    """有理数 q 或 "anharmonic"（q = ζ6）"""
    if text.strip().lower() == ANHARMONIC:
        n = _conductor_for(options, 6) if options.conductor else ANHARMONIC_CONDUCTOR
        return CycElem.zeta(n, n // 6)
    n = _conductor_for(options, 1) if options.conductor else CONSTRUCTION_CONDUCTOR
    return as_elem(rational_vector([text])[0], n)


def run_admissible(q_text: str, options: RunOptions) -> int:
    start = time.perf_counter()
    q = parse_q(q_text, options)
    report = admissibility_report(q)

    lines = [f"q = {format_elem(report.q)}",
             f"保持交比的置换 ({len(report.stabilizer)}): " + ' '.join(map(str, report.stabilizer)),
             f"无不动点 ({len(report.fixed_point_free)}): " + ' '.join(map(str, report.fixed_point_free)),
             "按 Möbius 不动点分组: " + ' '.join('{' + ' '.join(map(str, g)) + '}' for g in report.groups)]
    for subset, reason in report.rejected:
        lines.append(f"  排除 {{{' '.join(map(str, subset))}}}: {reason}")
    if report.admissible:
        for adm in report.admissible:
            lines.append(f"可容许集合: {{{' '.join(map(str, adm.perms))}}}，公共不动点 {adm.fixed_points}")
    else:
        lines.append("没有可容许的置换集合")

    data = {
        'q': q_text,
        'stabilizer': [format_perm(s) for s in report.stabilizer],
        'fixed_point_free': [format_perm(s) for s in report.fixed_point_free],
        'rejected': [{'perms': [format_perm(s) for s in subset], 'reason': reason}
                     for subset, reason in report.rejected],
        'admissible': [{'perms': [format_perm(s) for s in adm.perms],
                        'fixed_points': str(adm.fixed_points)} for adm in report.admissible],
    }
    _finish(options, 'admissible', {'q': q_text}, start, data, '\n'.join(lines))

    golden = options.golden('admissible')
    if q == as_elem(rational_vector([golden['q']])[0], q.conductor):
        expected = {PermS4.parse(p) for p in golden['perms']}
        found = [set(adm.perms) for adm in report.admissible]
        if found != [expected]:
            raise GoldenMismatchError(f"q={q_text} 的可容许集合不符: {found}")
        center, radicand = (as_elem(v, q.conductor)
                            for v in rational_vector([golden['center'], golden['radicand']]))
        if not report.admissible[0].fixed_points.matches_symbolic(center, radicand):
            raise GoldenMismatchError(f"公共不动点不符: {report.admissible[0].fixed_points}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# standard / f4 / equiv
# ---------------------------------------------------------------------------

def _config_summary(Z: Config) -> str:
    lines = [f"{len(Z)} 个点，导体 {Z.conductor}，声明直线 {len(Z.lines)} 条"]
    for d in Z.lines:
        lines.append(f"  {d.label} [{d.role}] {format_line_ideal(d.line)} ({len(d.members)} 个点)")
    if Z.flags:
        lines.append(f"  标记: {', '.join(Z.flags)}")
    return '\n'.join(lines)


def run_standard(m: int, variant: str, options: RunOptions) -> int:
    start = time.perf_counter()
    Z = standard_halfgrid(m, variant, options.conductor)
    _emit_config(options, f"standard_m{m}_{variant}.json", Z)
    _finish(options, 'standard', {'m': m, 'variant': variant}, start,
            config_to_dict(Z), _config_summary(Z))
    return EXIT_OK


def run_f4(options: RunOptions) -> int:
    start = time.perf_counter()
    Z = f4_root_model(options.conductor or 1)
    _emit_config(options, 'f4.json', Z)
    _finish(options, 'f4', {}, start, config_to_dict(Z), _config_summary(Z))
    return EXIT_OK


def run_equiv(path_a: str, path_b: str, options: RunOptions) -> int:
    """两个配置文件的射影等价；不等价时返回 1"""
    start = time.perf_counter()
    A, B = load_config(path_a), load_config(path_b)
    cert = find_projective_equivalence(A, B)
    if cert is None:
        text = "两个构形不射影等价"
    else:
        mapping = ', '.join(f"{k}->{v}" for k, v in sorted(cert.point_map.items()))
        text = f"射影等价，矩阵 {format_matrix(cert.matrix)}\n  {mapping}"
    _finish(options, 'equiv', {'a': os.path.basename(path_a), 'b': os.path.basename(path_b)}, start,
            equivalence_to_dict(cert), text)
    return EXIT_OK if cert is not None else EXIT_MISMATCH
