#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""投影、消没形式、结式与 geproci 证书的测试"""

import random
from dataclasses import replace

import pytest

from halfgrids.core.errors import CertificationError, DegenerateInputError
from halfgrids.core.exactalg import as_elem
from halfgrids.core.geproci import (
    ci_certify, evaluate_form, is_geproci, line_product_form, monomials, multiply_forms, project,
    sylvester_resultant, vanishing_forms, verify_certificate
)
from halfgrids.core.halfgrid import VARIANT_FULL, VARIANT_Y1, standard_halfgrid
from halfgrids.core.models import PlanarConfig, grid_point_label
from halfgrids.core.projgeom import ProjPoint
from halfgrids.utils.file_utils import certificate_from_dict, certificate_to_dict, stable_json


def planar(*coords):
    return PlanarConfig([ProjPoint(c) for c in coords])


# 两条二次曲线 x^2 = z^2、y^2 = z^2 的四个交点
CI_2_2 = planar([1, 1, 1], [1, -1, 1], [-1, 1, 1], [-1, -1, 1])


@pytest.fixture(scope="module")
def y1_grid():
    return standard_halfgrid(3, VARIANT_Y1)


@pytest.fixture(scope="module")
def y1_certificate(y1_grid):
    return is_geproci(y1_grid, 3, 4, trials=2, seed=1)


def test_projection_rejects_bad_centers(y1_grid):
    # 1·5 + 5·(-1) = 0，中心在像平面上
    with pytest.raises(DegenerateInputError):
        project(y1_grid, ProjPoint([5, 0, 0, -1]))
    with pytest.raises(DegenerateInputError):
        project(y1_grid, y1_grid.point(grid_point_label(0, 0)))
    # 两个格点连线上的点
    p = y1_grid.point(grid_point_label(0, 0)).coords
    q = y1_grid.point(grid_point_label(0, 1)).coords
    with pytest.raises(DegenerateInputError):
        project(y1_grid, ProjPoint([a + b for a, b in zip(p, q)]))


def test_projection_keeps_labels_in_order(y1_grid):
    image = project(y1_grid, ProjPoint([3, -7, 11, 2]))
    assert image.labels == y1_grid.sorted_labels()
    assert len(set(image.points)) == len(y1_grid)
    assert all(len(p.coords) == 3 for p in image.points)


def test_monomial_order():
    assert monomials(2) == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
    assert len(monomials(4)) == 15


def test_vanishing_forms_on_four_points():
    assert vanishing_forms(CI_2_2, 1) == []
    conics = vanishing_forms(CI_2_2, 2)
    assert len(conics) == 2
    for form in conics:
        assert all(not evaluate_form(form, 2, p) for p in CI_2_2.points)
    with pytest.raises(DegenerateInputError):
        vanishing_forms(CI_2_2, 0)


def test_multiply_forms():
    # (x + z)(x - z) = x^2 - z^2
    f = [as_elem(c) for c in (1, 0, 1)]
    g = [as_elem(c) for c in (1, 0, -1)]
    assert multiply_forms(f, 1, g, 1) == [as_elem(c) for c in (1, 0, 0, 0, 0, -1)]


def z_minus(r):
    return [as_elem(-r), as_elem(1)]


def test_sylvester_resultant():
    assert sylvester_resultant(z_minus(1), z_minus(2)) != 0
    assert sylvester_resultant(z_minus(1), [as_elem(-1), as_elem(0), as_elem(1)]) == 0


def test_complete_intersection_of_two_conics():
    record = ci_certify(CI_2_2, 2, 2, random.Random(3))
    assert record.witness.value != 0
    for p in CI_2_2.points:
        assert not evaluate_form(record.f_a, 2, p)
        assert not evaluate_form(record.f_b, 2, p)


def test_collinear_points_are_not_a_complete_intersection():
    """三点共线时所有二次消没形式都含有同一条直线"""
    S = planar([1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1])
    with pytest.raises(CertificationError):
        ci_certify(S, 2, 2)
    with pytest.raises(DegenerateInputError):
        ci_certify(S, 2, 3)


def test_half_grid_is_certified(y1_grid, y1_certificate):
    certified, cert = y1_certificate
    assert certified
    assert len(cert.records) == 2 and cert.failures == []
    assert verify_certificate(cert, y1_grid)


def test_certificate_survives_serialization(y1_grid, y1_certificate):
    _, cert = y1_certificate
    restored = certificate_from_dict(certificate_to_dict(cert))
    assert verify_certificate(restored, y1_grid)


def test_tampered_witness_is_rejected(y1_certificate):
    _, cert = y1_certificate
    record = cert.records[0]
    forged_witness = replace(record.witness, value=record.witness.value + 1)
    forged = replace(cert, records=[replace(record, witness=forged_witness)] + cert.records[1:])
    with pytest.raises(CertificationError):
        verify_certificate(forged)


def test_certificate_against_other_configuration(y1_certificate):
    _, cert = y1_certificate
    other = standard_halfgrid(3, 'Y2')
    with pytest.raises(CertificationError):
        verify_certificate(cert, other)


def test_grid_lines_give_a_vanishing_quartic(y1_grid, y1_certificate):
    """四条半网格直线的像之积是一条过全部像点的四次曲线"""
    _, cert = y1_certificate
    record = cert.records[0]
    lines = [d.line for d in y1_grid.grid_lines()]
    assert len(lines) == 4
    quartic = line_product_form(lines, record.center, cert.plane)
    assert len(quartic) == len(monomials(4))
    assert all(not evaluate_form(quartic, 4, p) for p in record.image_points)


def test_wrong_degrees_are_not_certified():
    """24 个像点上没有三次消没形式"""
    certified, cert = is_geproci(standard_halfgrid(4, VARIANT_FULL), 3, 8, trials=1)
    assert not certified
    assert len(cert.failures) == 1
    with pytest.raises(CertificationError):
        verify_certificate(cert)


def test_argument_errors(y1_grid):
    with pytest.raises(DegenerateInputError):
        is_geproci(y1_grid, 3, 5)
    with pytest.raises(DegenerateInputError):
        is_geproci(y1_grid, 3, 4, trials=0)


def test_same_seed_gives_identical_certificate(y1_grid, y1_certificate):
    _, cert = y1_certificate
    _, again = is_geproci(y1_grid, 3, 4, trials=2, seed=1)
    assert stable_json(certificate_to_dict(again)) == stable_json(certificate_to_dict(cert))


@pytest.mark.slow
@pytest.mark.parametrize("seed", [1, 2])
def test_full_variant_is_geproci(seed):
    Z = standard_halfgrid(4, VARIANT_FULL)
    certified, cert = is_geproci(Z, 4, 6, trials=5, seed=seed)
    assert certified
    assert verify_certificate(cert, Z)


@pytest.mark.slow
def test_worker_count_does_not_change_certificate():
    Z = standard_halfgrid(4, VARIANT_FULL)
    _, serial = is_geproci(Z, 4, 6, trials=2, seed=2)
    _, pooled = is_geproci(Z, 4, 6, trials=2, seed=2, workers=2)
    assert stable_json(certificate_to_dict(serial)) == stable_json(certificate_to_dict(pooled))
