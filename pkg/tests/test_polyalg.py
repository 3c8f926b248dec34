from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.polyalg import (
    MonomialOrder,
    Polynomial,
    RingMismatchError,
    coefficients_in,
    determinant,
    differentiate,
    minors_ideal,
    polynomial_ring,
    substitute,
    weighted_degree,
)

RING = ("x", "y", "z")


@st.composite
def polys(draw, ring=RING, max_deg=4, max_terms=5):
    n = len(ring)
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = tuple(draw(st.integers(0, max_deg)) for _ in range(n))
        if sum(exps) > max_deg:
            continue
        num = draw(st.integers(-9, 9))
        den = draw(st.integers(1, 4))
        terms[exps] = Fraction(num, den)
    return Polynomial(ring, terms)


def test_basic_products():
    x, y = polynomial_ring("x y")
    assert (x + y) * (x - y) == x**2 - y**2
    assert (x + y) * 0 == Polynomial(("x", "y"), {})
    t, x0, y1 = polynomial_ring("t x0 y1")
    assert (t**2 + x0) * (3 * t**2 + y1) == 3 * t**4 + (y1 + 3 * x0) * t**2 + x0 * y1


def test_ring_mismatch_is_an_error():
    (x,) = polynomial_ring("x")
    (y,) = polynomial_ring("y")
    with pytest.raises(RingMismatchError):
        x + y


def test_differentiate_examples():
    t, x0, y0, y1 = polynomial_ring("t x0 y0 y1")
    assert differentiate(t**2 + x0, "t") == 2 * t
    assert differentiate(t**3 + y1 * t + y0, "t") == 3 * t**2 + y1
    x, y = polynomial_ring("x y")
    assert differentiate(y**2, "x").is_zero()


def test_substitute_examples():
    x, y = polynomial_ring("x y")
    (t,) = polynomial_ring("t")
    assert substitute(y**2 - x**3, {"x": t**2, "y": t**3}).is_zero()
    assert substitute(x**2, {"x": x + 1}) == x**2 + 2 * x + 1
    p = x**3 - 2 * x * y + 7
    assert substitute(p, {"x": x, "y": y}) == p
    assert substitute(p, {}) == p


def test_coefficients_in_torus_example():
    t, x0, y0, y1 = polynomial_ring("t x0 y0 y1")
    p = (4 * y1 - 6 * x0) * t**2 + 6 * y0 * t - 2 * x0 * y1
    got = coefficients_in(p, ["t"])
    rest = ("x0", "y0", "y1")
    X0, Y0, Y1 = polynomial_ring(rest)
    assert got == [((2,), 4 * Y1 - 6 * X0), ((1,), 6 * Y0), ((0,), -2 * X0 * Y1)]
    assert coefficients_in(Polynomial.constant(("t", "x0"), 5), ["t"]) == [((0,), Polynomial.constant(("x0",), 5))]
    assert coefficients_in(Polynomial(("t", "x0"), {}), ["t"]) == []


def test_weighted_degree_examples():
    x0, y0, y1 = polynomial_ring("x0 y0 y1")
    w = (2, 3, 2)
    assert weighted_degree(4 * y1 - 6 * x0, w) == 2
    assert weighted_degree(x0 * y1, w) == 4
    assert weighted_degree(x0 + y0, w) is None


def test_minors():
    x, y = polynomial_ring("x y")
    M = [[x, y], [y, x**2]]
    assert set(minors_ideal(M, 1)) == {x, y, x**2}
    assert minors_ideal(M, 2) == [x**3 - y**2]
    one = Polynomial.constant(("x", "y"), 1)
    zero = Polynomial(("x", "y"), {})
    assert minors_ideal([[one, zero], [zero, one]], 2) == [one]
    assert determinant([[x, y], [y, x**2]]) == x**3 - y**2
    with pytest.raises(ValueError):
        minors_ideal(M, 3)


def test_orders_and_leading_terms():
    x, y = polynomial_ring("x y")
    p = x * y**2 + x**3 + y
    assert p.leading_term(MonomialOrder.grevlex())[0] == (3, 0)
    assert (x * y**2 + x**2 * y).leading_term()[0] == (2, 1)
    assert p.leading_term(MonomialOrder.lex())[0] == (3, 0)
    assert p.leading_term(MonomialOrder.weighted([1, 3]))[0] == (1, 2)
    with pytest.raises(ValueError):
        MonomialOrder.weighted([1, 0])


def test_rendering():
    x, y = polynomial_ring("x y")
    assert str(x**2 - y**2) == "x^2 - y^2"
    assert str(Fraction(3, 2) * x) == "3/2*x"
    assert str(Polynomial(("x", "y"), {})) == "0"


@settings(max_examples=1000)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a + b) + c == a + (b + c)
    assert a - a == Polynomial(RING, {})


@given(polys(), polys(), st.integers(-5, 5))
def test_derivative_linear_and_leibniz(a, b, k):
    for v in RING:
        assert differentiate(a + k * b, v) == differentiate(a, v) + k * differentiate(b, v)
        assert differentiate(a * b, v) == differentiate(a, v) * b + a * differentiate(b, v)


@given(polys(max_deg=5, max_terms=8))
def test_coefficients_in_round_trip(p):
    back = Polynomial(RING, {})
    for exps, coeff in coefficients_in(p, ["x", "z"]):
        mono = Polynomial.monomial(RING, (exps[0], 0, exps[1]))
        back = back + mono * coeff.in_ring(RING)
    assert back == p


@given(polys(), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_evaluation_is_a_homomorphism(a, u, v, w):
    pt = {"x": u, "y": v, "z": w}
    b = a * a + 3
    assert b.evaluate(pt) == a.evaluate(pt) ** 2 + 3
