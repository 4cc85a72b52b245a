from math import comb

import pytest

from astk.algebra.poly import Ring
from astk.errors import DomainError
from astk.koszul import koszul_completion_check, quotient_dim


def test_two_variables_precision_four():
    ring = Ring(("x", "y"), "poly", "Q")
    rep = koszul_completion_check(ring, ring.gens(), 4)
    assert rep.status == "pass"
    assert rep.koszul_dim == 25
    assert rep.koszul_quotient_dim == rep.adic_dim == 15
    assert rep.tower == (1, 3, 6, 10, 15)
    assert rep.witness_rank == 15 and rep.witness_multiplicative
    assert not rep.cube.violations()


@pytest.mark.parametrize("k,N", [(1, 5), (2, 2), (3, 2)])
def test_adic_dims_are_binomials(k, N):
    ring = Ring(tuple(f"x{i}" for i in range(k)), "poly", "Q")
    rep = koszul_completion_check(ring, ring.gens(), N)
    assert rep.status == "pass" and rep.adic_dim == comb(N + k, k)


def test_nonlinear_regular_element():
    ring = Ring(("x",), "poly", "Q")
    x = ring.gen(0)
    rep = koszul_completion_check(ring, [x ** 2], 2)
    assert rep.status == "pass"
    assert rep.tower == (2, 4, 6)
    assert [rep.cube.nodes[(i,)] for i in (1, 2, 3)] == [2, 4, 6]


def test_non_regular_sequence_flagged():
    ring = Ring(("x", "y"), "poly", "Q")
    x, y = ring.gens()
    rep = koszul_completion_check(ring, [x, x * y], 2)
    assert rep.status == "fail"


def test_quotient_dim():
    ring = Ring(("x", "y"), "poly", "Q")
    x, y = ring.gens()
    assert quotient_dim(ring, [x ** 2, y ** 3]) == 6
    assert quotient_dim(ring, [x]) is None
    assert quotient_dim(Ring((), "poly", "Q"), []) == 1


def test_requires_polynomial_ring():
    ring = Ring(("x",), "laurent", "Q")
    with pytest.raises(DomainError):
        koszul_completion_check(ring, ring.gens(), 1)
