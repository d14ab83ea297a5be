#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""置换、Möbius 映射与可容许集合的测试"""

from fractions import Fraction

import pytest

from halfgrids.core.errors import DegenerateInputError
from halfgrids.core.exactalg import CycElem, as_elem
from halfgrids.core.perms import (
    ALL_PERMS, IN_FIELD, SYMBOLIC, Mobius, PermS4, admissibility_report, admissible_sigma_sets,
    is_involution, mobius_fixed_points, mobius_from_permutation, normalized_quadruple,
    perm_fixed_points, stabilizer_permutations
)
from halfgrids.core.projgeom import ProjPoint, cross_ratio

KLEIN = ('1234', '2143', '3412', '4321')


def perms(*texts):
    return [PermS4.parse(t) for t in texts]


def test_parse_and_compose():
    sigma = PermS4.parse("3421")
    assert str(sigma) == "(3,4,2,1)"
    assert PermS4.parse([3, 4, 2, 1]) == sigma
    assert sigma.compose(PermS4.identity()) == sigma
    assert not is_involution(sigma)
    assert is_involution(PermS4.parse("2143"))
    assert perm_fixed_points(PermS4.parse("1243")) == frozenset({1, 2})
    assert len(ALL_PERMS) == 24
    for bad in ("1123", "12345", "abcd"):
        with pytest.raises(DegenerateInputError):
            PermS4.parse(bad)


def test_normalized_quadruple_rejects_degenerate_q():
    for q in (0, 1):
        with pytest.raises(DegenerateInputError):
            normalized_quadruple(q)


@pytest.mark.parametrize("q", [5, -3, Fraction(1, 3), 7])
def test_general_stabilizer_is_klein_group(q):
    assert stabilizer_permutations(normalized_quadruple(q)) == perms(*KLEIN)


def test_harmonic_and_anharmonic_stabilizers():
    assert len(stabilizer_permutations(normalized_quadruple(-1))) == 8
    zeta6 = CycElem.zeta(12, 2)
    assert len(stabilizer_permutations(normalized_quadruple(zeta6))) == 12


def test_mobius_maps_points_by_permutation(rng):
    for _ in range(10):
        q = Fraction(rng.randint(-20, 20), rng.randint(1, 5))
        if q in (0, 1):
            continue
        points = normalized_quadruple(q)
        for sigma in stabilizer_permutations(points):
            mobius = mobius_from_permutation(points, sigma)
            for i in range(1, 5):
                assert mobius.apply(points[i - 1]) == points[sigma(i) - 1]


def test_mobius_matrix_of_double_transposition():
    """(2143) 在 q = 5 时对应 (q·v, u)，即矩阵 ((0,1),(q,0))"""
    mobius = mobius_from_permutation(normalized_quadruple(5), PermS4.parse("2143"))
    assert mobius == Mobius([[0, 1], [5, 0]])
    assert mobius == Mobius([[0, 3], [15, 0]])


def test_mobius_rejects_non_stabilizing_permutation():
    with pytest.raises(DegenerateInputError):
        mobius_from_permutation(normalized_quadruple(5), PermS4.parse("2134"))


def test_fixed_points_in_field_and_symbolic():
    quadruple = normalized_quadruple(as_elem(-1, 4))
    report = mobius_fixed_points(mobius_from_permutation(quadruple, PermS4.parse("2143")))
    i = CycElem.zeta(4)
    assert report.kind == IN_FIELD
    assert set(report.points) == {ProjPoint([1, i]), ProjPoint([1, -i])}

    report = mobius_fixed_points(mobius_from_permutation(quadruple, PermS4.parse("3412")))
    assert report.kind == SYMBOLIC
    assert report.center == -1 and report.radicand == 2
    assert report.matches_symbolic(as_elem(-1, 4), as_elem(2, 4))


def test_fixed_points_become_rational_in_larger_field():
    """√2 在 Q(ζ8) 中，(3412) 的不动点随之落入域内"""
    quadruple = normalized_quadruple(as_elem(-1, 8))
    report = mobius_fixed_points(mobius_from_permutation(quadruple, PermS4.parse("3412")))
    assert report.kind == IN_FIELD
    assert report.matches_symbolic(as_elem(-1, 8), as_elem(2, 8))
    mobius = mobius_from_permutation(quadruple, PermS4.parse("3412"))
    assert all(mobius.apply(p) == p for p in report.points)


def test_fixed_points_with_non_monomial_discriminant():
    """(3412) 的不动点为 [1:q±a]，a^2 = q^2 - q"""
    i = CycElem.zeta(4)
    q = 1 + i
    mobius = mobius_from_permutation(normalized_quadruple(q), PermS4.parse("3412"))
    report = mobius_fixed_points(mobius)
    # -1+i 的范数为 2，不是 Q(i) 中的平方
    assert report.kind == SYMBOLIC
    assert report.matches_symbolic(q, -1 + i)

    q = (4 + 2 * i) / 5
    mobius = mobius_from_permutation(normalized_quadruple(q), PermS4.parse("3412"))
    report = mobius_fixed_points(mobius)
    assert report.kind == IN_FIELD
    assert set(report.points) == {ProjPoint([1, 1 + i]), ProjPoint([5, 3 - i])}
    assert report.matches_symbolic(q, q * q - q)


def test_identity_has_no_isolated_fixed_points():
    with pytest.raises(DegenerateInputError):
        mobius_fixed_points(Mobius([[2, 0], [0, 2]]))


def test_harmonic_admissible_set():
    sets = admissible_sigma_sets(as_elem(-1, 4))
    assert len(sets) == 1
    assert list(sets[0].perms) == perms('2143', '3421', '4312')
    i = CycElem.zeta(4)
    assert set(sets[0].fixed_points.points) == {ProjPoint([1, i]), ProjPoint([1, -i])}


def test_harmonic_report_lists_rejections():
    report = admissibility_report(-1)
    assert report.fixed_point_free == perms('2143', '3412', '3421', '4312', '4321')
    assert perms('3412')[0] not in report.admissible[0].perms
    rejected = {tuple(str(s) for s in subset) for subset, _ in report.rejected}
    assert ("(3,4,1,2)",) in rejected and ("(4,3,2,1)",) in rejected
    # 有理数域上不动点只能写成 [1:0±a], a^2=-1
    assert report.admissible[0].fixed_points.kind == SYMBOLIC
    assert report.admissible[0].fixed_points.matches_symbolic(0, -1)


@pytest.mark.parametrize("q", [5, Fraction(1, 3), -3])
def test_general_cross_ratio_has_no_admissible_set(q):
    assert admissible_sigma_sets(q) == []


def test_anharmonic_has_no_admissible_set():
    zeta6 = CycElem.zeta(12, 2)
    points = normalized_quadruple(zeta6)
    assert cross_ratio(*points).value == zeta6 ** -1
    report = admissibility_report(zeta6)
    assert len(report.fixed_point_free) == 3
    assert report.admissible == []
