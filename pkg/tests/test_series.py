from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from astk.algebra import univariate as up
from astk.algebra.series import (TruncSeries, log1p_power, series_compose, series_exp,
                                 series_log)
from astk.errors import DomainError

U = ("u",)
coeffs = st.lists(st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4)), min_size=1,
                  max_size=6)


def series(cs, prec=8, const=0):
    terms = {(i + 1,): c for i, c in enumerate(cs)}
    terms[(0,)] = Fraction(const)
    return TruncSeries(U, prec, terms)


def test_log_of_one_plus_u():
    u = TruncSeries.var(U, 6, "u")
    log = series_log(u + 1)
    assert [log.coeff((k,)) for k in range(7)] == [0, 1, Fraction(-1, 2), Fraction(1, 3),
                                                   Fraction(-1, 4), Fraction(1, 5),
                                                   Fraction(-1, 6)]


def test_log_domain():
    with pytest.raises(DomainError):
        series_log(TruncSeries.var(U, 3, "u"))
    with pytest.raises(DomainError):
        series_exp(TruncSeries.one(U, 3))


@given(coeffs)
def test_exp_log_inverse(cs):
    f = series(cs)
    assert series_log(series_exp(f)) == f
    g = series(cs, const=1)
    assert series_exp(series_log(g)) == g


@given(coeffs, coeffs)
def test_log_turns_products_into_sums(a, b):
    f, g = series(a, const=1), series(b, const=1)
    assert series_log(f * g) == series_log(f) + series_log(g)


@given(coeffs, coeffs)
def test_compose_is_associative(a, b):
    f, g, h = series(a), series(b), series([1, 2])
    assert series_compose(series_compose(f, g), h) == series_compose(f, series_compose(g, h))


@pytest.mark.parametrize("ell", [2, 3, 5])
def test_log_power_eigen_equation(ell):
    u = TruncSeries.var(U, 12, "u")
    for j in range(7):
        f = log1p_power(j, 12)
        assert series_compose(f, (u + 1) ** ell - 1) == f.scale(ell ** j)


def test_log_of_power_is_not_an_eigenvector():
    u = TruncSeries.var(U, 8, "u")
    f = series_log((u + 1) ** 2)  # log((1+u)^2) = 2 log(1+u): eigenvalue ell, not ell^2
    assert series_compose(f, (u + 1) ** 3 - 1) == f.scale(3)
    assert series_compose(f, (u + 1) ** 3 - 1) != f.scale(9)


def test_inverse():
    u = TruncSeries.var(U, 5, "u")
    f = u + 1
    assert f * f.inverse() == TruncSeries.one(U, 5)


def test_univariate_helpers():
    a = (Fraction(-1), Fraction(0), Fraction(1))   # x^2 - 1
    b = (Fraction(-1), Fraction(1))                # x - 1
    q, r = up.divmod_(a, b)
    assert q == (1, 1) and r == ()
    g, s, t = up.xgcd(a, (Fraction(1), Fraction(1), Fraction(1)))
    assert g == (1,)
    assert up.add(up.mul(s, a), up.mul(t, (1, 1, 1))) == (1,)
    assert up.gcd(a, up.derivative(a)) == (1,)
    assert up.evaluate(a, 3) == 8
    assert up.to_str(a) == "x^2 - 1"
