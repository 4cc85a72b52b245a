"""Buchberger's algorithm over Q with cofactor tracking, and ideal membership.

Every basis element can carry its expression in terms of the source
generators, which is what turns a zero remainder into a
:class:`MembershipCertificate`.  Laurent (and partially inverted) rings are
handled by saturation: negative exponents are cleared with a monomial shift
and an auxiliary variable ``s`` with ``s * prod(units) - 1`` is adjoined.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from astk.algebra.order import GREVLEX, TermOrder
from astk.algebra.poly import IdealGens, LaurentPoly, Ring, poly_sum
from astk.errors import DomainError, NotFiniteDimensional, RingMismatch

SAT_VAR = "_s"


# ---------------------------------------------------------------------------
# raw dict helpers: polynomials are {exp: Fraction}

def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _sub_exp(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _lcm_exp(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _axpy(target: dict, src: dict, coef, shift):
    """target -= coef * x^shift * src (in place)."""
    for e, c in src.items():
        e2 = tuple(x + y for x, y in zip(e, shift))
        v = target.get(e2, 0) - coef * c
        if v:
            target[e2] = v
        else:
            target.pop(e2, None)


class _Elem:
    __slots__ = ("poly", "lead", "cof")

    def __init__(self, poly, lead, cof):
        self.poly = poly
        self.lead = lead
        self.cof = cof


def _normalize(poly: dict, cof, key):
    lead = max(poly, key=key)
    lc = poly[lead]
    if lc != 1:
        inv = 1 / lc
        poly = {e: c * inv for e, c in poly.items()}
        if cof is not None:
            cof = [{e: c * inv for e, c in q.items()} for q in cof]
    return _Elem(poly, lead, cof)


def _reduce(f: dict, basis: Sequence[_Elem], key, want_quotients: bool):
    """Full reduction of ``f``; returns (quotients or None, remainder)."""
    p = dict(f)
    rem: dict = {}
    quot = [dict() for _ in basis] if want_quotients else None
    heap = [(_neg(key(e)), e) for e in p]
    heapq.heapify(heap)
    seen = set(p)
    while heap:
        _, e = heapq.heappop(heap)
        seen.discard(e)
        c = p.get(e)
        if not c:
            continue
        for i, g in enumerate(basis):
            if _divides(g.lead, e):
                shift = _sub_exp(e, g.lead)
                for ge, gc in g.poly.items():
                    e2 = tuple(x + y for x, y in zip(ge, shift))
                    v = p.get(e2, 0) - c * gc
                    if v:
                        p[e2] = v
                        if e2 not in seen:
                            seen.add(e2)
                            heapq.heappush(heap, (_neg(key(e2)), e2))
                    else:
                        p.pop(e2, None)
                if quot is not None:
                    quot[i][shift] = quot[i].get(shift, 0) + c
                break
        else:
            rem[e] = c
            del p[e]
    return quot, rem


class _Neg:
    """Reverses comparison so heapq pops the largest key first."""

    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return self.k > other.k

    def __eq__(self, other):
        return self.k == other.k


def _neg(k):
    return _Neg(k)


def _combine_cofactors(quot, basis, base_cof):
    """base_cof - sum_i quot[i] * basis[i].cof"""
    out = [dict(q) for q in base_cof]
    for qi, g in zip(quot, basis):
        for shift, c in qi.items():
            for j, gc in enumerate(g.cof):
                _axpy(out[j], gc, c, shift)
    return out


def _buchberger(polys: list, key, nvars: int, track: bool):
    basis: list = []
    ngens = len(polys)
    zero = (0,) * nvars
    for idx, p in enumerate(polys):
        if not p:
            continue
        cof = None
        if track:
            cof = [dict() for _ in range(ngens)]
            cof[idx] = {zero: Fraction(1)}
        basis.append(_normalize(dict(p), cof, key))

    pairs: list = []  # heap of (lcm degree, i, j)
    pending: set = set()

    def push_pairs(j):
        for i in range(j):
            lcm = _lcm_exp(basis[i].lead, basis[j].lead)
            heapq.heappush(pairs, (sum(lcm), i, j))
            pending.add((i, j))

    for j in range(1, len(basis)):
        push_pairs(j)

    def chain_skip(i, j, lcm):
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
                continue
            if _divides(basis[k].lead, lcm):
                return True
        return False

    while pairs:
        _, i, j = heapq.heappop(pairs)
        gi, gj = basis[i], basis[j]
        lcm = _lcm_exp(gi.lead, gj.lead)
        pending.discard((i, j))
        if all(not (a and b) for a, b in zip(gi.lead, gj.lead)):
            continue  # coprime leading monomials
        if chain_skip(i, j, lcm):
            continue
        si, sj = _sub_exp(lcm, gi.lead), _sub_exp(lcm, gj.lead)
        s: dict = {}
        _axpy(s, gi.poly, -1, si)
        _axpy(s, gj.poly, 1, sj)
        cof = None
        if track:
            cof = [dict() for _ in range(ngens)]
            for k in range(ngens):
                _axpy(cof[k], gi.cof[k], -1, si)
                _axpy(cof[k], gj.cof[k], 1, sj)
        quot, rem = _reduce(s, basis, key, track)
        if not rem:
            continue
        if track:
            cof = _combine_cofactors(quot, basis, cof)
        basis.append(_normalize(rem, cof, key))
        push_pairs(len(basis) - 1)
    return basis


def _reduced(basis: list, key, track: bool) -> list:
    # drop elements whose leading monomial is divisible by another one
    keep = []
    for i, g in enumerate(basis):
        redundant = False
        for j, h in enumerate(basis):
            if i == j:
                continue
            if _divides(h.lead, g.lead) and (h.lead != g.lead or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(g)
    # fully interreduce the tails
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        quot, rem = _reduce(g.poly, others, key, track)
        cof = _combine_cofactors(quot, others, g.cof) if track else None
        out.append(_normalize(rem, cof, key))
        keep[i] = out[-1]
    out.sort(key=lambda g: key(g.lead), reverse=True)
    return out


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Gröbner basis of ``source`` under ``order``.

    ``cofactors[i][j]`` is the coefficient of source generator j in basis[i].
    """

    ring: Ring
    order: TermOrder
    source: IdealGens
    basis: tuple
    cofactors: tuple | None = None
    _key: object = field(default=None, repr=False, compare=False)

    @property
    def key(self):
        return self._key or self.order.key(self.ring.nvars)

    def _elems(self):
        key = self.key
        return [_Elem(dict(g.items()), g.leading(key)[0], None) for g in self.basis]

    def leading_monomials(self) -> list:
        key = self.key
        return [g.leading(key)[0] for g in self.basis]

    def reduce(self, f: LaurentPoly):
        """Return ``(quotients, remainder)`` with f = sum q_i*basis_i + remainder."""
        _check_ring(f, self.ring)
        quot, rem = _reduce(dict(f.items()), self._elems(), self.key, True)
        R = self.ring
        return ([LaurentPoly(R, q) for q in quot], LaurentPoly(R, rem))

    def normal_form(self, f: LaurentPoly) -> LaurentPoly:
        _check_ring(f, self.ring)
        _, rem = _reduce(dict(f.items()), self._elems(), self.key, False)
        return LaurentPoly(self.ring, rem)

    def contains(self, f: LaurentPoly) -> bool:
        return self.normal_form(f).is_zero()

    def s_polynomial(self, i: int, j: int) -> LaurentPoly:
        key = self.key
        gi, gj = self.basis[i], self.basis[j]
        li, ci = gi.leading(key)
        lj, cj = gj.leading(key)
        lcm = _lcm_exp(li, lj)
        return gi.shift(_sub_exp(lcm, li)).scale(1 / ci) - gj.shift(_sub_exp(lcm, lj)).scale(1 / cj)

    def satisfies_buchberger(self) -> bool:
        n = len(self.basis)
        return all(self.normal_form(self.s_polynomial(i, j)).is_zero()
                   for i in range(n) for j in range(i + 1, n))

    def generates_source(self) -> bool:
        return all(self.contains(g) for g in self.source)

    def cofactors_valid(self) -> bool:
        if self.cofactors is None:
            return True
        gens = self.source.generators
        return all(
            poly_sum((c * g for c, g in zip(cof, gens)), self.ring) == b
            for b, cof in zip(self.basis, self.cofactors))

    def standard_monomials(self) -> list:
        """Monomials outside the leading-term ideal (finite case only)."""
        leads = self.leading_monomials()
        n = self.ring.nvars
        if any(not any(l) for l in leads):
            return []
        bounds = []
        for i in range(n):
            pure = [l[i] for l in leads if l[i] and all(not l[j] for j in range(n) if j != i)]
            if not pure:
                raise NotFiniteDimensional(
                    f"quotient is infinite-dimensional in {self.ring.variables[i]}")
            bounds.append(min(pure))
        out = []

        def rec(prefix):
            if len(prefix) == n:
                exp = tuple(prefix)
                if not any(_divides(l, exp) for l in leads):
                    out.append(exp)
                return
            for e in range(bounds[len(prefix)]):
                rec(prefix + [e])
        rec([])
        out.sort(key=self.key)
        return out

    def to_json(self) -> dict:
        return {"ring": self.ring.to_json(), "order": self.order.to_json(),
                "basis": [g.to_json() for g in self.basis]}


def _check_ring(f, ring):
    if not isinstance(f, LaurentPoly) or f.ring != ring:
        raise RingMismatch(f"{getattr(f, 'ring', f)} is not {ring}")


def groebner_basis(gens: IdealGens | Sequence[LaurentPoly], order: TermOrder = GREVLEX,
                   *, track: bool = False) -> GroebnerBasis:
    """Reduced Gröbner basis of a polynomial ideal over Q."""
    if not isinstance(gens, IdealGens):
        gens = IdealGens.of(gens)
    ring = gens.ring
    if ring.coeffs != "Q":
        raise DomainError("Gröbner bases are computed over Q; lift the generators first")
    if not ring.is_polynomial:
        raise DomainError("groebner_basis needs a polynomial ring; use laurent_member")
    key = order.key(ring.nvars)
    raw = [dict(g.items()) for g in gens]
    basis = _reduced(_buchberger(raw, key, ring.nvars, track), key, track)
    polys = tuple(LaurentPoly(ring, g.poly) for g in basis)
    cofs = None
    if track:
        cofs = tuple(tuple(LaurentPoly(ring, q) for q in g.cof) for g in basis)
    return GroebnerBasis(ring, order, gens, polys, cofs, key)


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MembershipCertificate:
    """Witness that ``target = sum coefficients[i]*generators[i]
    + sum relation_coefficients[j]*relations[j]`` holds exactly."""

    target: LaurentPoly
    generators: tuple
    coefficients: tuple
    relations: tuple = ()
    relation_coefficients: tuple = ()

    def evaluate(self) -> LaurentPoly:
        ring = self.target.ring
        parts = [c * g for c, g in zip(self.coefficients, self.generators)]
        parts += [c * r for c, r in zip(self.relation_coefficients, self.relations)]
        return poly_sum(parts, ring)

    def validate(self) -> bool:
        if len(self.coefficients) != len(self.generators):
            return False
        if len(self.relation_coefficients) != len(self.relations):
            return False
        return self.evaluate() == self.target

    def to_json(self) -> dict:
        out = {"ring": self.target.ring.to_json(), "target": self.target.to_json(),
               "generators": [g.to_json() for g in self.generators],
               "coefficients": [c.to_json() for c in self.coefficients]}
        if self.relations:
            out["relations"] = [r.to_json() for r in self.relations]
            out["relation_coefficients"] = [c.to_json() for c in self.relation_coefficients]
        return out

    @classmethod
    def from_json(cls, data) -> "MembershipCertificate":
        ring = Ring.from_json(data["ring"])

        def load(seq):
            return tuple(LaurentPoly.from_json(ring, p) for p in seq)
        return cls(LaurentPoly.from_json(ring, data["target"]), load(data["generators"]),
                   load(data["coefficients"]), load(data.get("relations", [])),
                   load(data.get("relation_coefficients", [])))


def _as_list(gens) -> list:
    return list(gens.generators) if isinstance(gens, IdealGens) else list(gens)


def ideal_member(f: LaurentPoly, gens, order: TermOrder = GREVLEX, relations=()):
    """Certificate that ``f`` lies in the ideal of a polynomial ring, or None."""
    gens = _as_list(gens)
    relations = list(relations)
    for g in gens + relations:
        _check_ring(g, f.ring)
    if not f.ring.is_polynomial:
        raise DomainError("ideal_member needs a polynomial ring; use laurent_member")
    ring = f.ring.with_coeffs("Q")
    f = f.change_ring(ring)
    gens = [g.change_ring(ring) for g in gens]
    relations = [r.change_ring(ring) for r in relations]
    if f.is_zero():
        return MembershipCertificate(f, tuple(gens), tuple(ring.zero() for _ in gens),
                                     tuple(relations), tuple(ring.zero() for _ in relations))
    allgens = gens + relations
    if not allgens:
        return None
    gb = groebner_basis(IdealGens(ring, tuple(allgens)), order, track=True)
    quot, rem = gb.reduce(f)
    if not rem.is_zero():
        return None
    coeffs = [ring.zero() for _ in allgens]
    for q, cof in zip(quot, gb.cofactors):
        if q.is_zero():
            continue
        for j, c in enumerate(cof):
            if c:
                coeffs[j] = coeffs[j] + q * c
    cert = MembershipCertificate(f, tuple(gens), tuple(coeffs[:len(gens)]),
                                 tuple(relations), tuple(coeffs[len(gens):]))
    assert cert.validate()
    return cert


def _clearing_shift(p: LaurentPoly) -> tuple:
    return tuple(max(0, -m) for m in p.min_exponents())


def laurent_member(f: LaurentPoly, gens, relations=()):
    """Membership in a ring with inverted variables via saturation.

    Works for Laurent rings and mixed rings such as Q[e1, e2^{+-1}]; in a
    polynomial ring it falls through to :func:`ideal_member`.
    """
    gens = _as_list(gens)
    relations = list(relations)
    for g in gens + relations:
        _check_ring(g, f.ring)
    R = f.ring.with_coeffs("Q")
    f = f.change_ring(R)
    gens = [g.change_ring(R) for g in gens]
    relations = [r.change_ring(R) for r in relations]
    if R.is_polynomial:
        return ideal_member(f, gens, relations=relations)
    if f.is_zero():
        return MembershipCertificate(f, tuple(gens), tuple(R.zero() for _ in gens),
                                     tuple(relations), tuple(R.zero() for _ in relations))
    n = R.nvars
    P = Ring((SAT_VAR,) + R.variables, "poly", "Q")

    def lift(p: LaurentPoly):
        a = _clearing_shift(p)
        return a, LaurentPoly(P, {(0,) + tuple(x + y for x, y in zip(e, a)): c
                                  for e, c in p.items()})

    lifted = [lift(p) for p in gens + relations]
    b, f_lift = lift(f)
    unit_exp = tuple(1 if i in R.units else 0 for i in range(n))
    sat = P.monomial((1,) + unit_exp) - 1
    order = TermOrder("elimination", (1, n))
    cert = ideal_member(f_lift, [p for _, p in lifted] + [sat], order)
    if cert is None:
        return None
    # translate back: s -> (prod units)^{-1}
    m_inv = R.monomial(tuple(-e for e in unit_exp))
    images = [m_inv] + R.gens()
    coeffs = []
    for (a, _), c in zip(lifted, cert.coefficients):
        back = c.substitute(images, R, inverses=[None] + [None] * n)
        coeffs.append(back.shift(tuple(x - y for x, y in zip(a, b))))
    k = len(gens)
    out = MembershipCertificate(f, tuple(gens), tuple(coeffs[:k]),
                                tuple(relations), tuple(coeffs[k:]))
    if not out.validate():
        raise AssertionError("saturation certificate failed to translate back")
    return out


def member(f: LaurentPoly, gens, relations=()):
    """Dispatch to :func:`ideal_member` or :func:`laurent_member` by ring mode."""
    if f.ring.is_polynomial:
        return ideal_member(f, gens, relations=relations)
    return laurent_member(f, gens, relations)
