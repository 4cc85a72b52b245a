from fractions import Fraction

import pytest

from astk.algebra.findim import FinDimAlgebra
from astk.algebra.poly import IdealGens, Ring
from astk.completion import (complete_truncated, completion_tower, factor_over_q,
                             ideal_power_generators, idempotent_split)
from astk.errors import DomainError, NotFiniteDimensional, RingMismatch
from astk.groups.repring import rep_ring
from astk.groups.spec import GL, SL2, Mu, SplitTorus

CYCLIC_DIMS = {1: (1,), 2: (1, 1), 3: (1, 2), 4: (1, 1, 2), 5: (1, 4), 6: (1, 1, 2, 2)}


def laurent_x():
    ring = Ring(("x",), "laurent", "Z")
    return ring, IdealGens(ring, (ring.gen(0) - 1,))


@pytest.mark.parametrize("N", [0, 1, 4, 8])
def test_gm_completion_is_power_series(N):
    ring, ideal = laurent_x()
    q = complete_truncated(ring, ideal, N)
    assert q.dim == N + 1 and q.is_integral()
    x = ring.gen(0)
    xi = q.image(x)
    if N:
        assert xi[:2] == (1, 1) and not any(xi[2:])
    assert q.algebra.mul(xi, q.image(x.inverse())) == q.algebra.unit
    # 1/x = sum (-u)^k
    assert q.image(x.inverse()) == tuple(Fraction((-1) ** k) for k in range(N + 1))


def test_projections_compose():
    ring, ideal = laurent_x()
    qs = [complete_truncated(ring, ideal, s) for s in range(5)]
    for s in range(4):
        assert qs[s + 1].project(qs[s]).rank() == s + 1
    direct = qs[4].project(qs[1])
    via = qs[2].project(qs[1]) @ qs[3].project(qs[2]) @ qs[4].project(qs[3])
    assert direct == via
    with pytest.raises(ValueError):
        qs[1].project(qs[3])


def test_completion_is_a_homomorphism():
    ring, ideal = laurent_x()
    q = complete_truncated(ring, ideal, 5)
    x = ring.gen(0)
    samples = [(x ** 3 - 2, x.inverse() + 5), (x ** -2, x ** 4 - x)]
    assert q.check_homomorphism(samples)


def test_gl2_completion_tower_matches_two_variable_series():
    tower = completion_tower(rep_ring(GL(2)), None, 3)
    assert tower == [1, 3, 6, 10]


def test_sl2_and_mu_towers():
    assert completion_tower(rep_ring(SL2()), None, 4) == [1, 2, 3, 4, 5]
    # over Q the augmentation ideal of mu_n is idempotent past degree 1
    assert completion_tower(rep_ring(Mu(3)), None, 3) == [1, 1, 1, 1]


def test_groebner_path_with_relations():
    ring = Ring(("t",), "poly", "Q")
    t = ring.gen(0)
    q = complete_truncated(ring, IdealGens(ring, (t,)), 3, relations=(t ** 2,))
    assert q.dim == 2


def test_errors():
    ring, ideal = laurent_x()
    with pytest.raises(ValueError):
        complete_truncated(ring, ideal, -1)
    other = Ring(("y",), "poly", "Q")
    with pytest.raises(RingMismatch):
        complete_truncated(ring, IdealGens(other, (other.gen(0),)), 2)
    with pytest.raises(NotFiniteDimensional):
        complete_truncated(Ring(("a", "b"), "poly", "Q"),
                           IdealGens(Ring(("a", "b"), "poly", "Q"),
                                     (Ring(("a", "b"), "poly", "Q").gen(0),)), 1)


def test_ideal_power_generators():
    ring = Ring(("a", "b"), "poly", "Q")
    a, b = ring.gens()
    assert set(map(str, ideal_power_generators([a, b], 2))) == {str(a * a), str(a * b),
                                                                 str(b * b)}


@pytest.mark.parametrize("n", sorted(CYCLIC_DIMS))
def test_cyclic_splits(n):
    s = idempotent_split(FinDimAlgebra.cyclic(n))
    assert s.validate() and s.complete
    assert s.factor_dims == CYCLIC_DIMS[n]
    assert sum(s.factor_dims) == n
    e = s.local_idempotent()
    assert s.factor_dims[s.aug_local] == 1
    if n > 1:
        t = FinDimAlgebra.cyclic(n).basis_vector(1)
        assert s.algebra.mul(t, e) == e


def test_dual_numbers_partial_split():
    s = idempotent_split(FinDimAlgebra.dual_numbers())
    assert s.validate()
    assert not s.complete and "not squarefree" in s.note
    assert s.factor_dims == (2,)


def test_split_rejects_noncommutative():
    # 2x2 matrices
    labels = ("e11", "e12", "e21", "e22")
    def unitvec(i):
        return tuple(Fraction(int(k == i)) for k in range(4))
    idx = {(0, 0): 0, (0, 1): 1, (1, 0): 2, (1, 1): 3}
    inv = {v: k for k, v in idx.items()}
    mult = []
    for a in range(4):
        row = []
        for b in range(4):
            (i, j), (k, l) = inv[a], inv[b]
            row.append(unitvec(idx[(i, l)]) if j == k else (Fraction(0),) * 4)
        mult.append(row)
    alg = FinDimAlgebra(labels, mult, tuple(Fraction(c) for c in (1, 0, 0, 1)))
    with pytest.raises(DomainError):
        idempotent_split(alg)


def test_factor_over_q():
    # z^4 - 1 = (z - 1)(z + 1)(z^2 + 1)
    factors = factor_over_q((Fraction(-1), 0, 0, 0, Fraction(1)))
    assert [len(f) - 1 for f, _ in factors] == [1, 1, 2]
    assert all(m == 1 for _, m in factors)
    sq = factor_over_q((Fraction(1), Fraction(-2), Fraction(1)))
    assert sq == [((Fraction(-1), Fraction(1)), 2)]


def test_torus_rank_two_dims():
    pres = rep_ring(SplitTorus(2))
    assert completion_tower(pres.ring, pres.as_ideal(), 3) == [1, 3, 6, 10]
