"""Truncated I-adic completions R/I^{N+1} and idempotent splitting."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product

from astk.algebra import univariate as up
from astk.algebra.findim import FinDimAlgebra
from astk.algebra.groebner import SAT_VAR, groebner_basis
from astk.algebra.linalg import ExactMatrix
from astk.algebra.poly import IdealGens, LaurentPoly, Ring, format_coeff
from astk.algebra.series import TruncSeries
from astk.errors import DomainError, NotFiniteDimensional, RingMismatch, UnsupportedOperation
from astk.groups.repring import RepRingPresentation
from astk.groups.symmetric import e_ring, to_elementary


def _mono_label(variables, exp) -> str:
    parts = [v if e == 1 else f"{v}^{e}" if e > 0 else f"{v}^({e})"
             for v, e in zip(variables, exp) if e]
    return "*".join(parts) or "1"


def ideal_power_generators(gens, k: int) -> list:
    """All products of ``k`` generators (with repetition); they generate I^k."""
    gens = [g for g in gens if not g.is_zero()]
    out = []
    for combo in combinations_with_replacement(range(len(gens)), k):
        p = gens[0].ring.one()
        for i in combo:
            p = p * gens[i]
        out.append(p)
    return out


@dataclass(frozen=True, eq=False)
class TruncatedQuotient:
    """R/I^{N+1} with an explicit basis.

    ``lifts[i]`` is an element of the source ring mapping to basis vector i;
    ``image`` sends any source element to its coordinate vector.
    """

    ring: Ring
    relations: tuple
    ideal: IdealGens
    precision: int
    method: str
    algebra: FinDimAlgebra
    lifts: tuple
    _image: object = field(repr=False, compare=False, default=None)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def labels(self) -> tuple:
        return self.algebra.labels

    def image(self, p: LaurentPoly) -> tuple:
        if p.ring.variables != self.ring.variables:
            raise RingMismatch(f"{p.ring} is not {self.ring}")
        return self._image(p.change_ring(self.ring.with_coeffs("Q")))

    def generator_images(self) -> dict:
        out = {}
        for i, v in enumerate(self.ring.variables):
            x = self.ring.gen(i)
            out[v] = self.image(x)
            if i in self.ring.units:
                out[f"{v}^-1"] = self.image(x.inverse())
        return out

    def project(self, target: "TruncatedQuotient") -> ExactMatrix:
        """Matrix of the canonical surjection onto a lower-precision truncation."""
        if target.precision > self.precision or target.ring.variables != self.ring.variables:
            raise ValueError("can only project to a lower precision of the same ring")
        return ExactMatrix.from_columns([target.image(p) for p in self.lifts], rows=target.dim)

    def is_integral(self) -> bool:
        """All structure constants and generator images are integers."""
        vecs = [v for row in self.algebra.mult for v in row]
        vecs += list(self.generator_images().values())
        return all(c.denominator == 1 for v in vecs for c in v)

    def check_homomorphism(self, samples) -> bool:
        """image(f*g) = image(f)*image(g) and image(f+g) = image(f)+image(g)."""
        alg = self.algebra
        for f, g in samples:
            if self.image(f * g) != alg.mul(self.image(f), self.image(g)):
                return False
            if self.image(f + g) != alg.add(self.image(f), self.image(g)):
                return False
        return self.image(self.ring.one()) == alg.unit

    def to_json(self) -> dict:
        return {"ring": self.ring.to_json(), "ideal": [g.to_json() for g in self.ideal],
                "relations": [r.to_json() for r in self.relations],
                "precision": self.precision, "method": self.method, "dim": self.dim,
                "basis": list(self.labels),
                "generator_images": {k: [format_coeff(c) for c in v]
                                     for k, v in sorted(self.generator_images().items())},
                "structure_constants": self.algebra.to_json()["mult"]}


def _is_torus_augmentation(ring: Ring, gens, relations) -> bool:
    if relations or ring.mode != "laurent":
        return False
    want = {x - 1 for x in ring.gens()}
    have = {g.change_ring(ring) for g in gens if not g.is_zero()}
    return want == have


def _unit_substitution(ring: Ring, ideal: IdealGens, N: int) -> TruncatedQuotient:
    """Z[x_i^{+-1}] at (x_i - 1): basis u^a with |a| <= N, x_i = 1 + u_i."""
    n = ring.nvars
    uvars = tuple(f"u{i + 1}" if n > 1 else "u" for i in range(n))
    basis = [e for d in range(N + 1) for e in _exps_of_degree(n, d)]
    index = {e: k for k, e in enumerate(basis)}
    dim = len(basis)

    def vec(series: TruncSeries) -> tuple:
        out = [Fraction(0)] * dim
        for e, c in series.terms.items():
            out[index[e]] = c
        return tuple(out)

    mult = []
    for a in basis:
        row = []
        for b in basis:
            v = [Fraction(0)] * dim
            s = tuple(x + y for x, y in zip(a, b))
            if sum(s) <= N:
                v[index[s]] = Fraction(1)
            row.append(tuple(v))
        mult.append(row)
    aug = tuple(Fraction(int(not any(e))) for e in basis)
    alg = FinDimAlgebra(tuple(_mono_label(uvars, e) for e in basis), mult,
                        aug, aug)
    us = [TruncSeries.var(uvars, N, u) for u in uvars]
    one = TruncSeries.one(uvars, N)
    xs = [one + u for u in us]
    xinv = [x.inverse() for x in xs]

    def image(p: LaurentPoly) -> tuple:
        total = TruncSeries.zero(uvars, N)
        for exp, c in p.items():
            term = TruncSeries.const(uvars, N, c)
            for i, e in enumerate(exp):
                if e > 0:
                    term = term * xs[i] ** e
                elif e < 0:
                    term = term * xinv[i] ** (-e)
            total = total + term
        return vec(total)

    lifts = []
    for e in basis:
        p = ring.one()
        for i, a in enumerate(e):
            p = p * (ring.gen(i) - 1) ** a
        lifts.append(p)
    return TruncatedQuotient(ring, (), ideal, N, "unit-substitution", alg, tuple(lifts), image)


def _exps_of_degree(n: int, d: int):
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _exps_of_degree(n - 1, d - first):
            yield (first,) + rest


def _groebner_quotient(ring: Ring, ideal: IdealGens, N: int, relations) -> TruncatedQuotient:
    R = ring.with_coeffs("Q")
    units = ring.units
    if units:
        W = Ring((SAT_VAR,) + ring.variables, "poly", "Q")
    else:
        W = R
    unit_exp = tuple(1 if i in units else 0 for i in range(ring.nvars))

    def lift(p: LaurentPoly) -> LaurentPoly:
        p = p.change_ring(R)
        if not units:
            return p
        k = max([0] + [-m for m in p.min_exponents()])
        return LaurentPoly(W, {(k,) + tuple(x + k * u for x, u in zip(e, unit_exp)): c
                               for e, c in p.items()})

    gens = [g.change_ring(R) for g in ideal if not g.is_zero()]
    polys = [lift(r) for r in relations]
    if units:
        polys.append(W.monomial((1,) + unit_exp) - 1)
    if gens:
        polys.extend(lift(p) for p in ideal_power_generators(gens, N + 1))
    if not polys:
        raise NotFiniteDimensional(f"{ring} is infinite-dimensional and the ideal is zero")
    gb = groebner_basis(IdealGens(W, tuple(polys)))
    basis = gb.standard_monomials()
    index = {e: k for k, e in enumerate(basis)}
    dim = len(basis)

    def coords(p: LaurentPoly) -> tuple:
        nf = gb.normal_form(p)
        out = [Fraction(0)] * dim
        for e, c in nf.items():
            out[index[e]] = c
        return tuple(out)

    mult = [[coords(W.monomial(tuple(x + y for x, y in zip(a, b)))) for b in basis]
            for a in basis]
    unit = coords(W.one())

    def back(e) -> LaurentPoly:
        if not units:
            return R.monomial(e)
        k = e[0]
        return R.monomial(tuple(x - k * u for x, u in zip(e[1:], unit_exp)))

    lifts = tuple(back(e) for e in basis)
    labels = tuple(_mono_label(ring.variables, next(iter(q.terms))) for q in lifts)
    alg = FinDimAlgebra(labels, mult, unit)
    return TruncatedQuotient(ring, tuple(relations), ideal, N, "groebner", alg, lifts,
                             lambda p: coords(lift(p)))


def _invariant_window(pres: RepRingPresentation):
    """For GL(n): the invariant subring Q[e_1..e_{n-1}, e_n^{+-1}] and the ideal
    rewritten in it."""
    n = pres.ring.nvars
    E = e_ring(n, "Z")
    gens = [to_elementary(g, E) for g in pres.ideal_gens]
    return E, IdealGens(E, tuple(gens))


def complete_truncated(ring, ideal: IdealGens | None, N: int, relations=()) -> TruncatedQuotient:
    """R/I^{N+1}.

    ``ring`` is a :class:`Ring` (with optional ``relations``) or a representation
    ring presentation; for the latter ``ideal`` defaults to its augmentation
    ideal.  GL(n) presentations are completed on their invariant subring.
    """
    if N < 0:
        raise ValueError("precision must be >= 0")
    if isinstance(ring, RepRingPresentation):
        pres = ring
        if pres.is_finite_free:
            ring, relations = pres.ring, pres.relations
        elif pres.weyl:
            if pres.model != "laurent-invariant":
                raise UnsupportedOperation("invariant windows are implemented for GL(n) only")
            ring, default = _invariant_window(pres)
            if ideal is None:
                ideal = default
            relations = ()
        else:
            ring, relations = pres.ring, pres.relations
        if ideal is None:
            ideal = pres.as_ideal()
    if not isinstance(ideal, IdealGens):
        ideal = IdealGens(ring, tuple(ideal))
    if ideal.ring.variables != ring.variables:
        raise RingMismatch("ideal generators live in a different ring")
    relations = tuple(r.change_ring(ring) if r.ring != ring else r for r in relations)
    if _is_torus_augmentation(ring, list(ideal), relations):
        return _unit_substitution(ring, ideal, N)
    return _groebner_quotient(ring, ideal, N, relations)


def completion_tower(ring, ideal, N_max: int, relations=()) -> list:
    return [complete_truncated(ring, ideal, N, relations).dim for N in range(N_max + 1)]


# ----- idempotents -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class IdempotentSet:
    algebra: FinDimAlgebra
    idempotents: tuple
    factor_dims: tuple
    factor_polys: tuple        # the coprime prime-power factors of the minimal polynomial
    aug_local: int | None      # index of the factor where the augmentation is 1
    separating_element: tuple
    min_poly: tuple
    complete: bool
    note: str = ""

    def validate(self) -> bool:
        alg = self.algebra
        total = alg.zero()
        for i, e in enumerate(self.idempotents):
            if alg.mul(e, e) != e:
                return False
            for j in range(i):
                if any(alg.mul(e, self.idempotents[j])):
                    return False
            total = alg.add(total, e)
        return total == alg.unit

    def local_idempotent(self) -> tuple:
        if self.aug_local is None:
            raise ValueError("no augmentation-local factor recorded")
        return self.idempotents[self.aug_local]

    def to_json(self) -> dict:
        return {"dim": self.algebra.dim, "basis": list(self.algebra.labels),
                "idempotents": [[format_coeff(c) for c in e] for e in self.idempotents],
                "factor_dims": list(self.factor_dims),
                "factors": [up.to_str(p, "z") for p in self.factor_polys],
                "min_poly": up.to_str(self.min_poly, "z"),
                "augmentation_local": self.aug_local, "complete": self.complete,
                "separating_element": [format_coeff(c) for c in self.separating_element],
                "note": self.note}


def factor_over_q(p) -> list:
    """Irreducible factorization over Q as [(monic factor, multiplicity)]."""
    import sympy

    z = sympy.Symbol("z")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * z ** k
               for k, c in enumerate(up.trim(p)))
    _, factors = sympy.factor_list(expr, z, domain="QQ")
    out = []
    for f, mult in factors:
        coeffs = sympy.Poly(f, z).all_coeffs()[::-1]
        out.append((up.monic([Fraction(int(c.p), int(c.q)) for c in coeffs]), mult))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return out


def _split_along(alg: FinDimAlgebra, a) -> tuple:
    m = alg.min_poly(a)
    factors = factor_over_q(m)
    blocks = [up.power(f, k) for f, k in factors]
    idems = []
    for i, P in enumerate(blocks):
        Q = (Fraction(1),)
        for j, other in enumerate(blocks):
            if j != i:
                Q = up.mul(Q, other)
        g, s, _ = up.xgcd(Q, P)
        if g != (Fraction(1),):
            raise ArithmeticError("factors of the minimal polynomial are not coprime")
        idems.append(alg.evaluate_poly(up.mul(s, Q), a))
    separable = all(k == 1 for _, k in factors)
    return m, blocks, idems, separable


def idempotent_split(alg, aug=None, generator=None, seed: int = 0,
                     tries: int = 8) -> IdempotentSet:
    """Split a commutative finite-dimensional algebra along the factorization of
    the minimal polynomial of a separating element."""
    if isinstance(alg, TruncatedQuotient):
        alg = alg.algebra
    if aug is not None:
        alg = FinDimAlgebra(alg.labels, alg.mult, alg.unit, aug)
    if not alg.is_commutative():
        raise DomainError("idempotent_split needs a commutative algebra")
    candidates = []
    if generator is not None:
        candidates.append(tuple(Fraction(c) for c in generator))
    elif alg.dim > 1:
        candidates.append(alg.basis_vector(1))
    rng = random.Random(seed)
    while len(candidates) < tries:
        candidates.append(tuple(Fraction(rng.randint(-3, 3)) for _ in range(alg.dim)))
    if alg.dim <= 1:
        candidates = [alg.unit]
    best = None
    for a in candidates:
        m, blocks, idems, separable = _split_along(alg, a)
        generating = up.degree(m) == alg.dim
        score = (len(idems), separable and generating)
        if best is None or score > best[0]:
            best = (score, a, m, blocks, idems, separable, generating)
        if separable and generating:
            break
    _, a, m, blocks, idems, separable, generating = best
    dims = tuple(alg.ideal_dimension(e) for e in idems)
    local = None
    if alg.augmentation is not None:
        hits = [i for i, e in enumerate(idems) if alg.aug(e) != 0]
        local = hits[0] if len(hits) == 1 else None
    complete = separable and generating
    note = ""
    if not separable:
        note = "minimal polynomial is not squarefree: factors may be non-reduced (partial split)"
    elif not generating:
        note = "no separating element found among the candidates: split may be partial"
    return IdempotentSet(alg, tuple(idems), dims, tuple(blocks), local, a, m, complete, note)


def cyclic_algebra(n: int) -> FinDimAlgebra:
    return FinDimAlgebra.cyclic(n)
