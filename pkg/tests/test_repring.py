import pytest
from hypothesis import given, strategies as st

from astk.algebra.poly import Ring
from astk.errors import DomainError, RingMismatch, UnsupportedGroup
from astk.groups.finite import bundled_group
from astk.groups.repring import (adams, augmentation, elementary_relations,
                                 regular_representation, rep_ring, restriction)
from astk.groups.spec import GL, SL2, Mu, SplitTorus, group_label
from astk.groups.symmetric import (e_ring, from_elementary, is_symmetric, power_sum_in_c,
                                   symmetric_to_c, to_elementary)

GROUPS = [SplitTorus(1), SplitTorus(2), GL(2), GL(3), SL2(), Mu(3), Mu(5), bundled_group("s3")]


def sample_elements(pres):
    """A few elements spanning low degrees of R(G)."""
    one = pres.one()
    if pres.is_finite_free:
        gens = [pres.gen(ch.name) for ch in pres.finite.characters]
    elif pres.named:
        gens = [pres.gen(k) for k in sorted(pres.named)]
    else:
        gens = [pres.element(g) for g in pres.ring.gens()]
    out = [one, one * 3] + gens
    if len(gens) >= 1:
        out.append(gens[0] * gens[0] - gens[-1] * 2 + 1)
    return out


@pytest.mark.parametrize("g", GROUPS, ids=group_label)
def test_adams_laws(g):
    pres = rep_ring(g)
    elems = sample_elements(pres)
    for v in elems:
        assert adams(1, v) == v
        assert augmentation(adams(3, v)) == augmentation(v)
        assert adams(2, adams(3, v)) == adams(6, v)
    for a in elems:
        for b in elems[:4]:
            assert adams(2, a * b) == adams(2, a) * adams(2, b)
            assert adams(3, a + b) == adams(3, a) + adams(3, b)


def test_adams_rejects_nonpositive():
    v = rep_ring(SL2()).one()
    with pytest.raises(ValueError):
        adams(0, v)


def test_adams_gl2_and_sl2_closed_forms():
    pres = rep_ring(GL(2))
    e1, e2 = pres.gen("e1"), pres.gen("e2")
    assert adams(2, e1) == e1 * e1 - e2 * 2
    sl = rep_ring(SL2())
    c = sl.element(sl.ring.gen(0))
    assert adams(3, c) == c ** 3 - c * 3
    assert adams(2, c) == c * c - 2


def test_mu_adams_reduces_exponents():
    pres = rep_ring(Mu(4))
    t = pres.element(pres.ring.gen(0))
    assert adams(4, t) == pres.one()
    assert adams(5, t) == t
    assert t ** 4 == pres.one()


def test_augmentation_values():
    assert augmentation(rep_ring(GL(3)).gen("e2")) == 3
    sl = rep_ring(SL2())
    assert augmentation(sl.element(sl.ring.gen(0))) == 2
    s3 = rep_ring(bundled_group("s3"))
    assert augmentation(s3.gen("std")) == 2
    assert augmentation(regular_representation(bundled_group("s3"))) == 6
    assert augmentation(regular_representation(Mu(5))) == 5


def test_finite_structure_constants():
    pres = rep_ring(bundled_group("s3"))
    std, sgn, triv = pres.gen("std"), pres.gen("sgn"), pres.gen("triv")
    assert std * std == triv + sgn + std
    assert sgn * sgn == triv
    assert std * sgn == std


def test_restriction_sl2_to_torus():
    sl = rep_ring(SL2())
    t1 = rep_ring(SplitTorus(1))
    c = sl.element(sl.ring.gen(0))
    x = t1.ring.gen(0)
    assert restriction(SL2(), SplitTorus(1), c - 2).value == x - 2 + x.inverse()


def test_restriction_gl_to_torus_and_torus_to_mu():
    gl = rep_ring(GL(2))
    r = restriction(GL(2), SplitTorus(2), gl.gen("e2"))
    ring = rep_ring(SplitTorus(2)).ring
    assert r.value == ring.gen(0) * ring.gen(1)
    t1 = rep_ring(SplitTorus(1))
    r = restriction(SplitTorus(1), Mu(3), t1.element(t1.ring.gen(0).inverse()))
    mu = rep_ring(Mu(3))
    assert r == mu.element(mu.ring.gen(0)) ** 2


def test_restriction_commutes_with_adams():
    sl = rep_ring(SL2())
    c = sl.element(sl.ring.gen(0))
    for ell in (2, 3, 5):
        lhs = restriction(SL2(), SplitTorus(1), adams(ell, c))
        rhs = adams(ell, restriction(SL2(), SplitTorus(1), c))
        assert lhs == rhs


def test_restriction_finite_subgroup():
    s3 = bundled_group("s3")
    c2 = bundled_group("c2")
    pres = rep_ring(s3)
    invols = [i for i in range(s3.order) if i != s3.identity and s3.mul(i, i) == s3.identity]
    emb = [s3.identity, invols[0]]
    r = restriction(s3, c2, pres.gen("std"), embedding=emb)
    assert augmentation(r) == 2
    dst = rep_ring(c2)
    assert r == dst.one() + dst.gen([ch.name for ch in c2.characters
                                      if ch.name != c2.characters[c2.trivial_index].name][0])


def test_restriction_ring_mismatch():
    with pytest.raises(RingMismatch):
        restriction(SL2(), SplitTorus(1), rep_ring(GL(2)).one())


def test_regular_rep_rejects_infinite():
    with pytest.raises(UnsupportedGroup):
        regular_representation(GL(2))


def test_elementary_relations_vanish():
    assert elementary_relations(3, 4) == 0
    assert elementary_relations(2, 5) == 0


def test_symmetric_rewriting_roundtrip():
    ring = Ring(("t1", "t2", "t3"), "laurent", "Q")
    t1, t2, t3 = ring.gens()
    p = t1 ** 2 + t2 ** 2 + t3 ** 2 + (t1 * t2 * t3).inverse()
    assert is_symmetric(p)
    q = to_elementary(p)
    assert q.ring == e_ring(3)
    assert from_elementary(q, ring) == p
    with pytest.raises(DomainError):
        to_elementary(t1 + 2 * t2)


def test_power_sum_in_c():
    c_ring = Ring(("c",), "poly", "Z")
    x_ring = Ring(("x",), "laurent", "Z")
    x = x_ring.gen(0)
    cx = x + x.inverse()
    for ell in range(0, 7):
        p = power_sum_in_c(ell, c_ring)
        assert p.substitute([cx], x_ring) == x ** ell + x ** (-ell)
        assert symmetric_to_c(x ** ell + x ** (-ell), c_ring) == p
    with pytest.raises(DomainError):
        symmetric_to_c(x + 1, c_ring)


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_gl2_adams_multiplicative_property(coeffs):
    pres = rep_ring(GL(2))
    e1, e2 = pres.gen("e1"), pres.gen("e2")
    v = e1 * coeffs[0] + e2 * coeffs[1] + coeffs[2]
    w = e1 * e1 * coeffs[3] + 1
    assert adams(2, v * w) == adams(2, v) * adams(2, w)
    assert adams(2, adams(2, v)) == adams(4, v)


def test_finite_adams_needs_power_maps():
    data = bundled_group("s3").to_json()
    data.pop("power_maps", None)
    from astk.groups.finite import FiniteGroup
    g = FiniteGroup.from_json(data)
    with pytest.raises(UnsupportedGroup, match="power_maps"):
        adams(2, rep_ring(g).gen("std"))


def test_finite_adams_uses_class_powers():
    pres = rep_ring(bundled_group("s3"))
    std = pres.gen("std")
    # psi_2(std)(g) = std(g^2): values (2, 2, -1) = triv - sgn + std
    assert adams(2, std) == pres.gen("triv") - pres.gen("sgn") + std
    # psi_3(std)(g) = std(g^3): values (2, 0, 2) = triv + sgn
    assert adams(3, std) == pres.gen("triv") + pres.gen("sgn")
