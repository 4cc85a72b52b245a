import dataclasses
from fractions import Fraction

import pytest

from astk.cech import (SparseMap, cech_cohomology, cech_nerve, descent_gap, hopf_from_group,
                       normalized_cohomology)
from astk.errors import IntegrityError, UnsupportedGroup
from astk.groups.finite import bundled_group
from astk.groups.spec import SL2, Mu


@pytest.mark.parametrize("n", range(1, 7))
def test_mu_hopf_axioms(n):
    h = hopf_from_group(Mu(n))
    assert h.dim == n and not h.axiom_failures()


def test_finite_group_hopf_axioms():
    h = hopf_from_group(bundled_group("s3"))
    assert h.dim == 6 and not h.axiom_failures()


def test_broken_antipode_detected():
    h = hopf_from_group(Mu(3))
    bad = dataclasses.replace(h, antipode=tuple({k: Fraction(1)} for k in range(3)))
    assert bad.axiom_failures()
    with pytest.raises(IntegrityError):
        bad.check()


def test_broken_counit_detected():
    h = hopf_from_group(Mu(2))
    bad = dataclasses.replace(h, counit=(Fraction(1), Fraction(0)))
    with pytest.raises(IntegrityError):
        bad.check()


def test_unsupported_group():
    with pytest.raises(UnsupportedGroup):
        hopf_from_group(SL2())


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cosimplicial_identities(n):
    cs = cech_nerve(hopf_from_group(Mu(n)), 3)
    assert cs.level_dims == tuple(n ** m for m in range(4))
    assert cs.identity_failures() == []
    for m in range(2):
        assert cs.differential(m + 1).compose(cs.differential(m)).is_zero()


def test_nerve_truncation_bounds():
    h = hopf_from_group(Mu(2))
    with pytest.raises(ValueError):
        cech_nerve(h, 1)
    with pytest.raises(ValueError):
        normalized_cohomology(cech_nerve(h, 2), 2)


@pytest.mark.parametrize("n", range(1, 7))
def test_mu_cohomology(n):
    rep = cech_cohomology(Mu(n), 4, 2)
    assert rep.cohomology == (1, 0, 0)
    assert rep.normalized_dims == tuple((n - 1) ** m for m in range(4))
    assert rep.consistent
    assert rep.equalizer_dim == 1 and rep.coinvariant_dim == 1
    assert rep.genuine_dim == n
    assert rep.h0_basis == ((Fraction(1),),)


def test_s3_levels_and_h0():
    rep = cech_cohomology(bundled_group("s3"), 2, 1)
    assert rep.level_dims == (1, 6, 36)
    assert rep.cohomology[0] == 1 and rep.consistent
    assert rep.genuine_dim == 3


def test_trivial_group_levels():
    cs = cech_nerve(hopf_from_group(Mu(1)), 4)
    assert cs.level_dims == (1, 1, 1, 1, 1)


@pytest.mark.parametrize("n", range(1, 6))
def test_descent_gap(n):
    rep = descent_gap(Mu(n))
    assert (rep.genuine_dim, rep.totalization_h0, rep.completed_dim) == (n, 1, 1)
    assert rep.gap == (n >= 2) and rep.consistent
    assert rep.to_json()["triple"] == [n, 1, 1]


def test_descent_gap_rejects_finite_group():
    with pytest.raises(UnsupportedGroup):
        descent_gap(bundled_group("s3"))


def test_sparse_map_algebra():
    a = SparseMap(2, 2, ({1: Fraction(1)}, {0: Fraction(1)}))
    ident = SparseMap(2, 2, ({0: Fraction(1)}, {1: Fraction(1)}))
    assert a.compose(a) == ident
    assert (a + a.scale(-1)).is_zero()
    assert a.apply({0: Fraction(2)}) == {1: Fraction(2)}
    assert a.to_matrix().rank() == 2
    with pytest.raises(ValueError):
        a.compose(SparseMap(1, 3, ({0: Fraction(1)},)))
