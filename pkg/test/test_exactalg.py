#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""分圆域算术与线性代数的测试"""

from fractions import Fraction
from math import gcd

import pytest
import sympy

from halfgrids.core.errors import (
    DivisionByZeroError, FieldError, InputFormatError, NotInFieldError
)
from halfgrids.core.exactalg import (
    CycElem, as_elem, cyclotomic_polynomial, descend, determinant, embed, inverse, kernel,
    mat_mul, mat_vec, parse_rational, format_rational, rank, solve, sqrt_in_field, totient
)

CONDUCTORS = (1, 3, 4, 5, 8, 12)


def random_elem(rng, n, box=5):
    """Q(ζ_n) 中系数在 [-box, box] 内的随机元素"""
    coeffs = [Fraction(rng.randint(-box, box), rng.randint(1, 3)) for _ in range(totient(n))]
    return CycElem.from_coeffs(n, coeffs)


def random_matrix(rng, rows, cols, box=4):
    return [[rng.randint(-box, box) for _ in range(cols)] for _ in range(rows)]


@pytest.mark.parametrize("n", range(1, 31))
def test_cyclotomic_polynomial_matches_sympy(n):
    """Φ_n 与 sympy 的结果一致（系数升幂排列）"""
    x = sympy.Symbol('x')
    expected = [Fraction(int(c)) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs())]
    assert list(cyclotomic_polynomial(n)) == expected
    assert totient(n) == int(sympy.totient(n))


def check_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert (a + b) * c == a * c + b * c
    assert a - a == 0
    if a:
        assert a * a.inverse() == 1
        assert (b / a) * a == b


def check_cyclotomic_identities(n, k):
    """ζ_n^k 是 n 次单位根；k 与 n 互素时它是 Φ_n 的根"""
    z = CycElem.zeta(n, k)
    assert z ** n == 1
    value = sum((c * z ** j for j, c in enumerate(cyclotomic_polynomial(n))), as_elem(0, n))
    assert (value == 0) == (gcd(k, n) == 1)


@pytest.mark.parametrize("n", CONDUCTORS)
def test_field_axioms_on_random_samples(rng, n):
    """随机抽样检查交换律、结合律、分配律与逆元"""
    for _ in range(40):
        check_field_axioms(*(random_elem(rng, n) for _ in range(3)))


def test_cyclotomic_identities_on_random_samples(rng):
    for _ in range(60):
        n = rng.randint(1, 30)
        check_cyclotomic_identities(n, rng.randrange(n))


@pytest.mark.slow
def test_field_axioms_full_sample(rng):
    """每个导体 1000 组随机三元组"""
    for n in CONDUCTORS:
        for _ in range(1000):
            check_field_axioms(*(random_elem(rng, n) for _ in range(3)))


@pytest.mark.slow
def test_cyclotomic_identities_full_sample(rng):
    for _ in range(1000):
        n = rng.randint(1, 30)
        check_cyclotomic_identities(n, rng.randrange(n))


@pytest.mark.parametrize("n", [3, 4, 5, 8, 12])
def test_roots_of_unity(n):
    z = CycElem.zeta(n)
    assert z ** n == 1
    assert all(z ** k != 1 for k in range(1, n))
    assert sum((z ** k for k in range(n)), as_elem(0, n)) == 0
    if n % 2 == 0:
        assert z ** (n // 2) == -1
    assert z ** -1 == CycElem.zeta(n, n - 1)


def test_embedding_and_mixed_conductors():
    i4 = CycElem.zeta(4)
    assert embed(i4, 8) == CycElem.zeta(8, 2)
    assert embed(i4, 12) == CycElem.zeta(12, 3)
    # 不同导体的元素相等性按公共扩域判断
    assert i4 == CycElem.zeta(8, 2)
    assert i4 + CycElem.zeta(8) == embed(i4, 8) + CycElem.zeta(8)
    with pytest.raises(FieldError):
        _ = i4 + CycElem.zeta(3)
    with pytest.raises(FieldError):
        embed(i4, 6)


def test_rational_elements_hash_like_fractions():
    assert hash(as_elem(Fraction(3, 7), 12)) == hash(Fraction(3, 7))
    assert {as_elem(2, 4), as_elem(2, 8)} == {as_elem(2, 4)}


def test_equal_elements_across_conductors_hash_equal():
    """同一数值在不同导体下的哈希一致，可作为集合与字典的键"""
    i4, i8 = CycElem.zeta(4), CycElem.zeta(8, 2)
    assert i4 == i8 and hash(i4) == hash(i8)
    assert hash(CycElem.zeta(3)) == hash(embed(CycElem.zeta(3), 12)) == hash(-CycElem.zeta(6, 5))
    sqrt2 = CycElem.zeta(8) + CycElem.zeta(8, 7)
    assert hash(sqrt2) == hash(embed(sqrt2, 24))
    assert i8 in {i4} and len({i4, i8, embed(i4, 12)}) == 1
    assert embed(i4, 8).canonical().conductor == 4
    assert CycElem.zeta(6).canonical().conductor == 3


def test_descend():
    i8 = embed(CycElem.zeta(4), 8)
    assert descend(i8, 4) == CycElem.zeta(4)
    with pytest.raises(NotInFieldError):
        descend(CycElem.zeta(8), 4)


def test_division_by_zero():
    with pytest.raises(DivisionByZeroError):
        as_elem(0, 4).inverse()
    with pytest.raises(DivisionByZeroError):
        _ = CycElem.zeta(4) / 0


@pytest.mark.parametrize("value, n", [(-1, 4), (2, 8), (3, 12), (5, 5), (-3, 3), (Fraction(9, 4), 1), (-2, 8)])
def test_sqrt_in_field(value, n):
    r = as_elem(value, n)
    root = sqrt_in_field(r)
    assert root is not None
    assert root * root == r
    assert root.conductor == n


@pytest.mark.parametrize("value, n", [(2, 4), (-1, 1), (3, 4), (-1, 3), (7, 12)])
def test_sqrt_not_in_field(value, n):
    assert sqrt_in_field(as_elem(value, n)) is None


def test_sqrt_of_root_of_unity():
    """i 在 Q(i) 中不是平方，在 Q(ζ8) 中是"""
    i = CycElem.zeta(4)
    root = sqrt_in_field(i)
    assert root is None
    root = sqrt_in_field(embed(i, 8))
    assert root is not None and root * root == i
    root = sqrt_in_field(CycElem.zeta(12, 2))
    assert root * root == CycElem.zeta(12, 2)


def test_sqrt_of_non_monomial_radicand():
    """非单项式被开方数：是平方时求出根，否则返回 None"""
    i = CycElem.zeta(4)
    root = sqrt_in_field(3 + 4 * i)
    assert root is not None and root * root == 3 + 4 * i
    assert root in (2 + i, -2 - i)
    a = CycElem.from_coeffs(5, [1, 2, 0, Fraction(-1, 3)])
    root = sqrt_in_field(a * a)
    assert root in (a, -a)
    assert root.conductor == 5
    # 1+i 与 -1+i 的范数都是 2，不是平方
    assert sqrt_in_field(1 + i) is None
    assert sqrt_in_field(-1 + i) is None
    assert sqrt_in_field(CycElem.zeta(5) + 2) is None


def test_rank_matches_sympy(rng):
    for _ in range(30):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        m = random_matrix(rng, rows, cols, box=2)
        assert rank(m) == sympy.Matrix(m).rank()


def test_kernel_vectors_annihilate(rng):
    for _ in range(20):
        m = random_matrix(rng, rng.randint(1, 4), 6)
        basis = kernel(m)
        assert len(basis) == 6 - rank(m)
        for v in basis:
            assert all(not x for x in mat_vec(m, v))


def test_kernel_of_empty_matrix():
    basis = kernel([], ncols=3, conductor=4)
    assert len(basis) == 3
    assert all(v[k].conductor == 4 for v in basis for k in range(3))
    with pytest.raises(FieldError):
        kernel([])


def test_determinant_and_inverse_over_gaussian_rationals(rng):
    for _ in range(15):
        m = [[random_elem(rng, 4, box=3) for _ in range(3)] for _ in range(3)]
        det = determinant(m)
        if not det:
            continue
        inv = inverse(m)
        product = mat_mul(m, inv)
        assert all(product[r][c] == int(r == c) for r in range(3) for c in range(3))
    integer = random_matrix(rng, 4, 4)
    assert determinant(integer) == int(sympy.Matrix(integer).det())


def test_singular_inverse_raises():
    with pytest.raises(DivisionByZeroError):
        inverse([[1, 2], [2, 4]])


def test_solve():
    i = CycElem.zeta(4)
    sol = solve([[1, i], [i, 1]], [1 + i, 2 * i])
    assert sol is not None
    assert mat_vec([[1, i], [i, 1]], sol) == [1 + i, 2 * i]
    assert solve([[1, 1], [1, 1]], [1, 2]) is None


def test_rational_text():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational("-4") == -4
    assert format_rational(Fraction(-2, 4)) == "-1/2"
    for bad in ("abc", "1/0", True):
        with pytest.raises(InputFormatError):
            parse_rational(bad)


def test_json_form():
    a = CycElem.from_coeffs(12, [1, Fraction(-1, 3), 0, 2])
    assert a.to_json() == {"conductor": 12, "coeffs": ["1/1", "-1/3", "0/1", "2/1"]}
    assert CycElem.from_json(a.to_json()) == a
    assert CycElem.from_json("5/2", 4) == as_elem(Fraction(5, 2), 4)
    with pytest.raises(InputFormatError):
        CycElem.from_json({"conductor": 12, "coeffs": ["1"]})
