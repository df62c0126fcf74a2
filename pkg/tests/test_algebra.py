from __future__ import annotations

import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from incidences.algebra import (
    IntPoly,
    QuadExt,
    annihilator_shifted_square,
    cyclotomic,
    degree_of_shifted_square,
    format_scalar,
    k_of_d,
    minpoly_two_cos,
    parse_scalar,
    quadratic_cosines,
    rational_cosines,
    rational_roots,
    resultant,
    shifted_square_exact,
    shifted_square_is_rational,
    squarefree_part,
    totient,
)
from incidences.algebra.poly import gcd, interpolate
from incidences.errors import DomainError, FieldMismatchError

X = sympy.Symbol("x")


def brute_totient(n):
    return sum(1 for i in range(1, n + 1) if math.gcd(i, n) == 1)


def to_sympy(p: IntPoly):
    return sum(c * X**i for i, c in enumerate(p.coeffs))


def sylvester_det(p: IntPoly, q: IntPoly) -> int:
    """Resultant from its definition as a Sylvester determinant (highest coefficient first)."""
    m, n = p.degree, q.degree
    a, b = list(reversed(p.coeffs)), list(reversed(q.coeffs))
    rows = [[0] * i + a + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + b + [0] * (m - 1 - i) for i in range(m)]
    return int(sympy.Matrix(rows).det())


# totient / cyclotomic

@pytest.mark.parametrize("n", range(1, 121))
def test_totient_matches_brute_force(n):
    assert totient(n) == brute_totient(n)


def test_totient_examples():
    assert totient(1) == 1
    assert totient(5) == 4
    assert totient(12) == 4


@pytest.mark.parametrize("n", [1, 2, 3, 6, 12, 15, 30, 105])
def test_cyclotomic_against_sympy(n):
    assert to_sympy(cyclotomic(n)).expand() == sympy.cyclotomic_poly(n, X)


# minimal polynomial of 2cos(2pi/n)

def test_minpoly_examples():
    assert minpoly_two_cos(6) == IntPoly([-1, 1])
    assert minpoly_two_cos(5) == IntPoly([-1, 1, 1])
    p7 = minpoly_two_cos(7)
    assert p7.degree == 3 and p7.is_monic()
    assert abs(p7(2 * math.cos(2 * math.pi / 7))) < 1e-12


@pytest.mark.parametrize("n", range(3, 61))
def test_minpoly_degree_and_root(n):
    p = minpoly_two_cos(n)
    assert p.degree == totient(n) // 2
    assert p.is_monic() and p.content() == 1
    scale = max(abs(c) for c in p.coeffs)
    assert abs(p(2 * math.cos(2 * math.pi / n))) / scale < 1e-8


@pytest.mark.parametrize("n", [5, 7, 9, 11, 13, 16, 20, 24])
def test_minpoly_against_sympy(n):
    expected = sympy.minimal_polynomial(2 * sympy.cos(2 * sympy.pi / n), X)
    assert (to_sympy(minpoly_two_cos(n)) - expected).expand() == 0


def test_minpoly_domain():
    with pytest.raises(DomainError):
        minpoly_two_cos(2)


# annihilator and degree

@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 17])
def test_annihilator_matches_sympy_resultant(n):
    Y = sympy.Symbol("y")
    M = to_sympy(minpoly_two_cos(n))
    res = sympy.resultant(M, Y - (1 + X) ** 2, X)
    ours = sum(c * Y**i for i, c in enumerate(annihilator_shifted_square(n).coeffs))
    assert sympy.expand(res - ours) == 0


@pytest.mark.parametrize("n", range(3, 41))
def test_annihilator_graeffe_identity(n):
    # with M~(u) = M(u - 1): A(u^2) = (-1)^D M~(u) M~(-u)
    M = minpoly_two_cos(n)
    D = M.degree
    shifted = M.compose(IntPoly([-1, 1]))
    neg = shifted.compose(IntPoly([0, -1]))
    lhs = annihilator_shifted_square(n).compose(IntPoly([0, 0, 1]))
    assert lhs == shifted * neg * ((-1) ** D)


def test_annihilator_examples():
    assert 4 in rational_roots(annihilator_shifted_square(6))
    a5 = annihilator_shifted_square(5)
    assert abs(a5((3 + math.sqrt(5)) / 2)) < 1e-12
    a8 = annihilator_shifted_square(8)
    assert abs(a8(3 + 2 * math.sqrt(2))) < 1e-9


@pytest.mark.parametrize("k", range(3, 41))
def test_degree_matches_sympy_factorization(k):
    y = (1 + 2 * sympy.cos(2 * sympy.pi / k)) ** 2
    if k <= 24:
        expected = sympy.degree(sympy.minimal_polynomial(y, X), X)
    else:
        Y = sympy.Symbol("y")
        A = sum(c * Y**i for i, c in enumerate(annihilator_shifted_square(k).coeffs))
        facs = sympy.factor_list(A)[1]
        expected = {sympy.degree(f, Y) for f, _ in facs}
        assert len(expected) == 1
        expected = expected.pop()
    assert degree_of_shifted_square(k) == expected


def test_degree_examples():
    assert degree_of_shifted_square(6) == 1
    assert degree_of_shifted_square(5) == 2
    assert degree_of_shifted_square(11) >= 3


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23, 29, 31])
def test_prime_degree_lower_bound(p):
    assert 4 * degree_of_shifted_square(p) >= p + 1


# rational roots

def test_rational_roots_examples():
    assert rational_roots(IntPoly([-4, 1])) == {4}
    assert rational_roots(IntPoly([-2, 0, 1])) == set()
    assert rational_roots(IntPoly([-1, -1, 2])) == {Fraction(1), Fraction(-1, 2)}
    assert rational_roots(IntPoly([0, 0, 1])) == {0}


def test_rational_roots_zero_polynomial():
    with pytest.raises(DomainError):
        rational_roots(IntPoly())


fractions = st.fractions(min_value=-20, max_value=20, max_denominator=6)


@given(st.lists(fractions, min_size=1, max_size=4), st.integers(1, 5))
@settings(max_examples=150, deadline=None)
def test_rational_roots_recovers_planted(roots, irr):
    p = IntPoly([irr, 0, 1])  # no real roots
    for r in roots:
        p = p * IntPoly([-r.numerator, r.denominator])
    assert rational_roots(p) == set(roots)


# rationality classification

def test_shifted_square_rational_exceptions():
    assert shifted_square_is_rational(3) == 0
    assert shifted_square_is_rational(4) == 1
    assert shifted_square_is_rational(6) == 4
    assert shifted_square_is_rational(5) is None


def test_shifted_square_exact_quadratics():
    s5 = QuadExt(5, Fraction(3, 2), Fraction(1, 2))
    assert shifted_square_exact(5) == s5
    assert shifted_square_exact(8) == QuadExt(2, 3, 2)
    assert shifted_square_exact(10) == QuadExt(5, Fraction(7, 2), Fraction(3, 2))
    assert shifted_square_exact(12) == QuadExt(3, 4, 2)
    assert shifted_square_exact(7) is None


def test_niven_style_tables():
    assert set(rational_cosines(60)) == {1, 2, 3, 4, 6}
    assert set(quadratic_cosines(60)) == {5, 8, 10, 12}


def test_k_of_d():
    assert k_of_d(1, 1) == 5
    assert k_of_d(2, 1) == 11
    assert k_of_d(1, 3) == 5
    assert k_of_d(2, Fraction(3, 2)) == 11  # 3 > 2^1.5
    assert k_of_d(3, Fraction(3, 2)) == 23  # 19 fails: 5 < 3^1.5
    with pytest.raises(DomainError):
        k_of_d(0)


# polynomial arithmetic

small_polys = st.lists(st.integers(-9, 9), min_size=1, max_size=6).map(IntPoly)


@given(small_polys, small_polys)
@settings(max_examples=200, deadline=None)
def test_exact_division_round_trip(p, q):
    if q.is_zero():
        return
    prod = p * q
    assert prod // q == p if not prod.is_zero() else True
    assert q.divides(prod)


@given(small_polys, small_polys)
@settings(max_examples=150, deadline=None)
def test_resultant_matches_sylvester_determinant(p, q):
    if p.degree < 1 or q.degree < 1:
        return
    # sympy.resultant disagrees in sign with the Sylvester determinant on e.g. (x + 1, x^3)
    assert resultant(p, q) == sylvester_det(p, q)


@given(small_polys, small_polys)
@settings(max_examples=100, deadline=None)
def test_gcd_divides_both(p, q):
    if p.is_zero() or q.is_zero():
        return
    g = gcd(p, q)
    assert g.divides(p) and g.divides(q)


def test_squarefree_part():
    p = IntPoly([-1, 1]) ** 3 * IntPoly([2, 0, 1])
    assert squarefree_part(p) == IntPoly([-1, 1]) * IntPoly([2, 0, 1])


def test_interpolate_exact():
    xs = [0, 1, 2, 3]
    p = IntPoly([5, -2, 0, 3])
    assert interpolate(xs, [p(x) for x in xs]) == [5, -2, 0, 3]


# quadratic field

bounded = st.fractions(min_value=-50, max_value=50, max_denominator=20)
ms = st.sampled_from([2, 3, 5, 6, 7, 10])


@given(ms, bounded, bounded, bounded, bounded)
@settings(max_examples=300, deadline=None)
def test_quadext_matches_float(m, a, b, c, d):
    x, y = QuadExt(m, a, b), QuadExt(m, c, d)
    fx, fy = float(x), float(y)
    assert abs(float(x + y) - (fx + fy)) < 1e-10 * max(1, abs(fx) + abs(fy))
    assert abs(float(x * y) - fx * fy) < 1e-10 * max(1, abs(fx * fy))
    if y != 0:
        q = float(x / y)
        assert abs(q - fx / fy) < 1e-10 * max(1, abs(fx / fy))
    assert (x < y) == (fx < fy) or abs(fx - fy) < 1e-12


def test_quadext_field_mismatch():
    with pytest.raises(FieldMismatchError):
        QuadExt(2, 1, 1) + QuadExt(3, 1, 1)


def test_quadext_requires_squarefree():
    with pytest.raises(DomainError):
        QuadExt(4, 1, 1)


@given(ms, bounded, bounded)
@settings(max_examples=100, deadline=None)
def test_scalar_string_round_trip(m, a, b):
    x = QuadExt(m, a, b)
    assert parse_scalar(format_scalar(x)) == (x if b else a)
    assert parse_scalar(format_scalar(a)) == a


def test_scalar_rendering():
    assert format_scalar(QuadExt(5, Fraction(3, 2), Fraction(1, 2))) == "3/2+1/2*sqrt(5)"
    assert format_scalar(Fraction(-7, 3)) == "-7/3"
    assert parse_scalar("2.5") == 2.5
