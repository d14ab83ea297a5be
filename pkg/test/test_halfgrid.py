#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""标准构造、结构检测与射影等价的测试"""

from itertools import combinations

import pytest

from halfgrids.core.construct import initial_data
from halfgrids.core.errors import ConfigurationError, DegenerateInputError, FieldError
from halfgrids.core.exactalg import CycElem
from halfgrids.core.halfgrid import (
    FLAG_UNSUPPORTED, KIND_GRID, KIND_HALF_GRID, KIND_NEITHER, VARIANT_FULL, VARIANT_Y1,
    VARIANT_Y2, detect_structure, f4_root_model, find_projective_equivalence, incidence_lines,
    standard_grid, standard_halfgrid, three_line_grid_check, validate_structure,
    working_conductor, y_sets
)
from halfgrids.core.models import ROLE_GRID, Config, DeclaredLine, grid_point_label
from halfgrids.core.projgeom import ProjPoint, apply_matrix, are_skew, on_line


def moment_curve_config(count):
    """三次挠曲线上的点，没有三点共线"""
    points = {f"C[{t}]": ProjPoint([1, t, t * t, t ** 3]) for t in range(1, count + 1)}
    return Config(1, points)


def test_working_conductor():
    assert working_conductor(3) == 12
    assert working_conductor(4) == 4
    assert working_conductor(5) == 20
    assert working_conductor(6, 24) == 24
    with pytest.raises(FieldError):
        working_conductor(5, 8)


def test_standard_grid_points_and_lines():
    Z = standard_grid(4)
    assert len(Z) == 16
    assert Z.point(grid_point_label(0, 0)) == ProjPoint([1, 1, 1, 1])
    i = CycElem.zeta(4)
    assert Z.point(grid_point_label(1, 1)) == ProjPoint([1, i, i, -1], 4)
    assert Z.point(grid_point_label(2, 3)) == ProjPoint([1, -i, -1, i], 4)
    for d in Z.grid_lines():
        assert len(d.members) == 4
        assert sorted(Z.points_on(d.line)) == sorted(d.members)


def test_y_sets_lie_off_the_grid_lines():
    y1, y2 = y_sets(4)
    Z = standard_grid(4)
    for p in y1 + y2:
        assert not any(on_line(p, d.line) for d in Z.grid_lines())


@pytest.mark.parametrize("m", [3, 4])
def test_standard_grid_is_grid(m):
    Z = standard_grid(m)
    report = detect_structure(Z, m, m)
    assert report.kind == KIND_GRID
    validate_structure(Z, report)
    assert all(label for row in report.grid.incidence for label in row)


@pytest.mark.parametrize("m", [3, 4])
@pytest.mark.parametrize("variant", [VARIANT_Y1, VARIANT_Y2])
def test_single_y_variant_is_half_grid(m, variant):
    Z = standard_halfgrid(m, variant)
    assert len(Z) == m * (m + 1)
    report = detect_structure(Z, m, m + 1)
    assert report.kind == KIND_HALF_GRID
    validate_structure(Z, report)
    assert report.half_grid.max_skew_family < report.half_grid.missing_family_size


def test_full_variant_is_half_grid():
    Z = standard_halfgrid(4, VARIANT_FULL)
    assert len(Z) == 24
    assert Z.flags == ()
    report = detect_structure(Z, 4, 6)
    assert report.kind == KIND_HALF_GRID
    assert len(report.half_grid.lines) == 6
    assert report.half_grid.candidate_lines == []
    validate_structure(Z, report)


def test_odd_full_variant_is_flagged():
    Z = standard_halfgrid(3, VARIANT_FULL)
    assert FLAG_UNSUPPORTED in Z.flags
    assert len(Z) == 15


@pytest.mark.slow
@pytest.mark.parametrize("m", [5, 6])
def test_larger_standard_constructions(m):
    assert detect_structure(standard_grid(m), m, m).kind == KIND_GRID
    for variant in (VARIANT_Y1, VARIANT_Y2):
        Z = standard_halfgrid(m, variant)
        assert detect_structure(Z, m, m + 1).kind == KIND_HALF_GRID


def test_points_without_collinear_triples_are_neither():
    Z = moment_curve_config(12)
    report = detect_structure(Z, 3, 4)
    assert report.kind == KIND_NEITHER
    with pytest.raises(DegenerateInputError):
        detect_structure(Z, 3, 5)


def test_declared_lines_must_contain_members():
    data = initial_data()
    points = dict(data.points)
    line = data.lines['L1']
    with pytest.raises(ConfigurationError):
        Config(4, points, [DeclaredLine('L1', line, ROLE_GRID, (grid_point_label(2, 1),))])
    points['dup'] = data.point(1, 1)
    with pytest.raises(ConfigurationError):
        Config(4, points)


def test_four_point_lines_of_full_variant():
    """m = 4 的完整构造与 F4 构形一样有 18 条四点直线"""
    Z = standard_halfgrid(4, VARIANT_FULL)
    lines = incidence_lines(Z, 4)
    assert len(lines) == 18
    assert all(len(members) == 4 for _, members in lines)
    declared = {d.line for d in Z.grid_lines()}
    assert declared <= {line for line, _ in lines}


def test_f4_root_model():
    Z = f4_root_model()
    assert len(Z) == 24
    grid = Z.grid_lines()
    assert len(grid) == 6
    assert all(len(d.members) == 4 for d in grid)
    assert all(are_skew(a.line, b.line) for a, b in combinations(grid, 2))
    assert len(incidence_lines(Z, 4)) == 18


def test_three_line_grid_check_on_every_triple():
    """完整构造六条半网格直线的任意三条都张成 4x4 网格"""
    Z = standard_halfgrid(4, VARIANT_FULL)
    labels = [d.label for d in Z.grid_lines()]
    assert len(labels) == 6
    for triple in combinations(labels, 3):
        cert = three_line_grid_check(Z, list(triple))
        assert len(cert.b_lines) == 4
        assert all(len(row) == 4 for row in cert.incidence)


def test_three_line_grid_check_detects_missing_point():
    data = initial_data()
    assert len(three_line_grid_check(data.config(), ['L1', 'L2', 'L3']).b_lines) == 4

    points = dict(data.points)
    points[grid_point_label(3, 4)] = ProjPoint([1, 1, 2, 2], data.conductor)
    declared = [DeclaredLine(label, line, ROLE_GRID,
                             tuple(grid_point_label(int(label[1:]), j) for j in range(1, 5)))
                for label, line in data.lines.items()]
    Z = Config(data.conductor, points, declared)
    with pytest.raises(ConfigurationError):
        three_line_grid_check(Z, ['L1', 'L2', 'L3'])


def test_equivalence_with_transformed_copy():
    Z = standard_grid(3)
    matrix = [[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 3, 0], [1, 0, 0, 5]]
    moved = Config(Z.conductor, {label: apply_matrix(matrix, p) for label, p in Z.points.items()})
    cert = find_projective_equivalence(Z, moved)
    assert cert is not None
    for label, p in Z.points.items():
        assert apply_matrix(cert.matrix, p) == moved.point(cert.point_map[label])
    assert find_projective_equivalence(Z, standard_grid(4)) is None


@pytest.mark.slow
def test_full_variant_is_equivalent_to_f4():
    A = standard_halfgrid(4, VARIANT_FULL)
    B = f4_root_model()
    cert = find_projective_equivalence(A, B)
    assert cert is not None
    assert sorted(cert.point_map.values()) == sorted(B.labels())
    for label, p in A.points.items():
        assert apply_matrix(cert.matrix, p) == B.point(cert.point_map[label])
