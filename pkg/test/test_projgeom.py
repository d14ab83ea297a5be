#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""P^3 射影几何原语的测试"""

from fractions import Fraction

import pytest

from halfgrids.core.errors import DegenerateInputError
from halfgrids.core.exactalg import CycElem, as_elem
from halfgrids.core.projgeom import (
    CrossRatioKind, Plane3, ProjLine3, ProjPoint, Quadric3, apply_matrix, are_skew,
    cross_ratio, cross_ratio_orbit, in_general_position, line_through, lines_meet,
    meet_line_plane, meet_planes, on_line, plane_through, quadric_through_three_skew_lines,
    second_intersection_with_quadric, second_line_meeting_four, transform_from_point_correspondence,
    transversal_through_point
)

# Q = xw - yz
XW_MINUS_YZ = (0, 0, 0, 1, 0, -1, 0, 0, 0, 0)
# 三条互相异面、位于 Q 上的直线：L1 = {y=w=0}，L2 = {x=z=0}，L3 = {x=y, z=w}
L1 = line_through(ProjPoint([1, 0, 0, 0]), ProjPoint([0, 0, 1, 0]))
L2 = line_through(ProjPoint([0, 1, 0, 0]), ProjPoint([0, 0, 0, 1]))
L3 = line_through(ProjPoint([1, 1, 0, 0]), ProjPoint([0, 0, 1, 1]))


def random_point(rng, dim=3, box=9):
    while True:
        coords = [rng.randint(-box, box) for _ in range(dim + 1)]
        if any(coords):
            return ProjPoint(coords)


def column(j_param):
    """Q 另一族中过 L1 上参数点 [1:0:t:0] 的直线"""
    t = Fraction(j_param)
    return line_through(ProjPoint([1, 0, t, 0]), ProjPoint([0, 1, 0, t]))


def test_point_equality_is_projective():
    assert ProjPoint([2, 4, 6, 8]) == ProjPoint([1, 2, 3, 4])
    assert hash(ProjPoint([2, 4, 6, 8])) == hash(ProjPoint([1, 2, 3, 4]))
    assert ProjPoint([1, 0, 0, 0]) != ProjPoint([1, 1, 0, 0])
    with pytest.raises(DegenerateInputError):
        ProjPoint([0, 0, 0, 0])


def test_pluecker_relation_is_checked():
    with pytest.raises(DegenerateInputError):
        ProjLine3([1, 0, 0, 0, 0, 1])


def test_line_through_and_planes(rng):
    for _ in range(50):
        p, q = random_point(rng), random_point(rng)
        if p == q:
            continue
        line = line_through(p, q)
        assert on_line(p, line) and on_line(q, line)
        for h in line.planes():
            assert h.contains(p) and h.contains(q)
        a, b = line.points()
        assert line_through(a, b) == line
    with pytest.raises(DegenerateInputError):
        line_through(ProjPoint([1, 2, 3, 4]), ProjPoint([2, 4, 6, 8]))


def test_meet_planes_and_line_plane():
    line = meet_planes(Plane3([1, 0, 0, 0]), Plane3([0, 1, 0, 0]))
    assert on_line(ProjPoint([0, 0, 1, 0]), line)
    assert on_line(ProjPoint([0, 0, 0, 1]), line)
    assert meet_line_plane(line, Plane3([0, 0, 1, -1])) == ProjPoint([0, 0, 1, 1])
    h = plane_through(L1, ProjPoint([0, 1, 0, 0]))
    assert h == Plane3([0, 0, 0, 1])


def test_skewness_and_intersection():
    assert are_skew(L1, L2) and are_skew(L1, L3) and are_skew(L2, L3)
    m = line_through(ProjPoint([1, 0, 0, 0]), ProjPoint([0, 1, 0, 0]))
    assert not are_skew(L1, m)
    assert lines_meet(L1, m) == ProjPoint([1, 0, 0, 0])
    assert lines_meet(L1, L2) is None
    with pytest.raises(DegenerateInputError):
        lines_meet(L1, L1)


def test_transversal_through_point():
    p = ProjPoint([1, 2, 3, 5])
    t = transversal_through_point(p, L1, L2)
    assert on_line(p, t)
    assert lines_meet(t, L1) is not None
    assert lines_meet(t, L2) is not None
    with pytest.raises(DegenerateInputError):
        transversal_through_point(ProjPoint([1, 0, 0, 0]), L1, L2)


def test_cross_ratio_of_normalized_quadruple():
    for q in (Fraction(-1), Fraction(5), Fraction(1, 3)):
        pts = [ProjPoint([1, 0]), ProjPoint([0, 1]), ProjPoint([1, 1]), ProjPoint([1, q])]
        assert cross_ratio(*pts).value == 1 / q
    harmonic = [ProjPoint([1, 0]), ProjPoint([0, 1]), ProjPoint([1, 1]), ProjPoint([1, -1])]
    assert cross_ratio(*harmonic).kind == CrossRatioKind.HARMONIC


KLEIN_GROUP = ((1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0))


def check_klein_invariance(rng, samples):
    done = 0
    while done < samples:
        pts = [random_point(rng, dim=1, box=50) for _ in range(4)]
        if len(set(pts)) < 4:
            continue
        value = cross_ratio(*pts).value
        for perm in KLEIN_GROUP:
            assert cross_ratio(*[pts[k] for k in perm]).value == value
        done += 1


def test_cross_ratio_invariant_under_klein_group(rng):
    """双对合置换 (2143)、(3412)、(4321) 保持任意四点的交比"""
    check_klein_invariance(rng, 300)


@pytest.mark.slow
def test_cross_ratio_invariant_under_klein_group_full_sample(rng):
    check_klein_invariance(rng, 1000)


def test_points_over_different_conductors_share_set_membership():
    i4, i8 = CycElem.zeta(4), CycElem.zeta(8, 2)
    assert ProjPoint([1, i8]) == ProjPoint([1, i4])
    assert ProjPoint([1, i8]) in {ProjPoint([1, i4])}
    assert ProjPoint([2, 2 * i8, 0, 1]) in {ProjPoint([1, i4, 0, Fraction(1, 2)]): 'p'}


def test_cross_ratio_on_a_line_in_space():
    pts = [ProjPoint([1, 0, 0, 0]), ProjPoint([0, 0, 1, 0]), ProjPoint([1, 0, 1, 0]), ProjPoint([1, 0, -1, 0])]
    assert cross_ratio(*pts).value == -1
    with pytest.raises(DegenerateInputError):
        cross_ratio(pts[0], pts[1], pts[2], ProjPoint([0, 1, 0, 0]))
    with pytest.raises(DegenerateInputError):
        cross_ratio(pts[0], pts[1], pts[2], pts[2])


def test_cross_ratio_orbit_and_anharmonic_class():
    assert set(cross_ratio_orbit(as_elem(-1))) == {as_elem(-1), as_elem(2), as_elem(Fraction(1, 2))}
    zeta6 = CycElem.zeta(6)
    pts = [ProjPoint([1, 0], 6), ProjPoint([0, 1], 6), ProjPoint([1, 1], 6),
           ProjPoint([as_elem(1, 6), zeta6 ** -1])]
    result = cross_ratio(*pts)
    assert result.value == zeta6
    assert result.kind == CrossRatioKind.ANHARMONIC
    assert set(cross_ratio_orbit(zeta6)) == {zeta6, zeta6 ** -1}


def test_quadric_through_three_skew_lines():
    quadric = quadric_through_three_skew_lines(L1, L2, L3)
    assert quadric == Quadric3.from_coefficients(XW_MINUS_YZ)
    assert quadric.contains_line(L1) and quadric.contains_line(column(3))
    assert not quadric.contains(ProjPoint([1, 1, 1, 2]))
    with pytest.raises(DegenerateInputError):
        quadric_through_three_skew_lines(L1, L1, L2)


def test_second_intersection_with_quadric():
    quadric = Quadric3.from_coefficients(XW_MINUS_YZ)
    known = ProjPoint([1, 0, -1, 0])
    line = line_through(known, ProjPoint([0, 1, -1, 0]))
    assert second_intersection_with_quadric(line, quadric, known) == ProjPoint([-1, 1, 0, 0])


def test_second_line_meeting_four():
    """Q 上的直线 L1 与四条同族直线都相交，另一条公共截线也在 Q 上"""
    n = [line_through(ProjPoint([1, 0, 0, 0]), ProjPoint([0, 1, 1, 0])),
         line_through(ProjPoint([0, 0, 1, 0]), ProjPoint([0, 1, 0, 1])),
         line_through(ProjPoint([1, 0, 1, 0]), ProjPoint([1, 2, 0, 3])),
         line_through(ProjPoint([1, 0, -1, 0]), ProjPoint([0, 1, 5, 7]))]
    result = second_line_meeting_four(*n, L1)
    assert result != L1
    for line in n:
        assert lines_meet(result, line) is not None


def test_second_line_meeting_four_degenerate_pencil():
    """四条同一族的直线有无穷多条公共截线"""
    columns = [column(t) for t in (0, 1, -1, 2)]
    with pytest.raises(DegenerateInputError):
        second_line_meeting_four(*columns, L1)


def test_projective_transform_from_five_points(rng):
    frame = [ProjPoint([1, 0, 0, 0]), ProjPoint([0, 1, 0, 0]), ProjPoint([0, 0, 1, 0]),
             ProjPoint([0, 0, 0, 1]), ProjPoint([1, 1, 1, 1])]
    assert in_general_position(frame)
    done = 0
    while done < 10:
        target = [random_point(rng) for _ in range(5)]
        if not in_general_position(target):
            continue
        matrix = transform_from_point_correspondence(frame, target)
        for p, q in zip(frame, target):
            assert apply_matrix(matrix, p) == q
        done += 1
    coplanar = frame[:3] + [ProjPoint([1, 1, 1, 0]), frame[4]]
    assert not in_general_position(coplanar)
    with pytest.raises(DegenerateInputError):
        transform_from_point_correspondence(coplanar, frame)
