from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from astk.algebra.poly import IdealGens, LaurentPoly, Ring, format_coeff, parse_coeff
from astk.errors import DomainError, RingMismatch

R = Ring(("x", "y"), "laurent", "Q")
P = Ring(("x", "y"), "poly", "Q")

terms = st.dictionaries(
    st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
    st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5)), max_size=5)
nonzero = st.builds(Fraction, st.integers(1, 9), st.integers(1, 4)) | st.builds(
    Fraction, st.integers(-9, -1), st.integers(1, 4))


def lp(d):
    return LaurentPoly(R, d)


def test_parse_and_format_coeff():
    assert parse_coeff("3/6") == Fraction(1, 2)
    assert parse_coeff(4) == 4
    assert format_coeff(Fraction(-2, 4)) == "-1/2"
    with pytest.raises(TypeError):
        parse_coeff(True)


def test_basic_arithmetic():
    x, y = R.gens()
    p = (x + y) ** 2
    assert p == x * x + 2 * x * y + y * y
    assert (x * x.inverse()) == R.one()
    assert (x ** -2) * x ** 2 == R.one()
    assert (x - 1).evaluate((1, 5)) == 0


def test_inverse_requires_monomial():
    x, y = R.gens()
    with pytest.raises(DomainError):
        (x + 1).inverse()


def test_polynomial_ring_rejects_negative_exponents():
    with pytest.raises(Exception):
        LaurentPoly(P, {(-1, 0): 1})


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        R.gen(0) + P.gen(0)


def test_substitute_and_json_roundtrip():
    x, y = R.gens()
    p = x ** 2 - 3 * y.inverse() + Fraction(1, 2)
    assert LaurentPoly.from_json(R, p.to_json()) == p
    q = p.substitute([y, x], R, [y.inverse(), x.inverse()])
    assert q == y ** 2 - 3 * x.inverse() + Fraction(1, 2)
    assert Ring.from_json(R.to_json()) == R
    ideal = IdealGens(R, (x - 1, y - 1))
    assert IdealGens.from_json(ideal.to_json()) == ideal


def test_mixed_ring_units():
    M = Ring(("a", "b"), "mixed", "Q", (1,))
    a, b = M.gens()
    assert b * b.inverse() == M.one()
    with pytest.raises(DomainError):
        a.inverse()


@given(terms, terms, terms)
def test_ring_axioms(a, b, c):
    a, b, c = lp(a), lp(b), lp(c)
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == R.zero()
    assert a * R.one() == a


@given(terms, terms, st.tuples(nonzero, nonzero))
def test_evaluation_is_a_homomorphism(a, b, pt):
    a, b = lp(a), lp(b)
    assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)
    assert (a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt)
