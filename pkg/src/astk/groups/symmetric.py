"""Symmetric Laurent polynomials: elementary-symmetric rewriting and the
x <-> 1/x symmetric case used for SL2."""
from __future__ import annotations

from itertools import combinations

from astk.algebra.poly import LaurentPoly, Ring
from astk.errors import DomainError


def elementary(ring: Ring, i: int, variables=None) -> LaurentPoly:
    """e_i in the given variables (default: all variables of ``ring``)."""
    idx = list(range(ring.nvars)) if variables is None else list(variables)
    terms = {}
    for combo in combinations(idx, i):
        exp = [0] * ring.nvars
        for j in combo:
            exp[j] = 1
        terms[tuple(exp)] = 1
    return LaurentPoly(ring, terms)


def is_symmetric(p: LaurentPoly) -> bool:
    """Invariance under the adjacent transpositions, which generate S_n."""
    n = p.ring.nvars
    for i in range(n - 1):
        swapped = p.map_exponents(lambda e, i=i: e[:i] + (e[i + 1], e[i]) + e[i + 2:])
        if swapped != p:
            return False
    return True


def e_ring(n: int, coeffs: str = "Q") -> Ring:
    """Q[e_1, ..., e_{n-1}, e_n^{+-1}]."""
    return Ring(tuple(f"e{i}" for i in range(1, n + 1)), "mixed", coeffs, (n - 1,))


def to_elementary(p: LaurentPoly, target: Ring | None = None) -> LaurentPoly:
    """Rewrite a symmetric Laurent polynomial in t_1..t_n as a polynomial in
    e_1..e_{n-1} and a Laurent polynomial in e_n."""
    n = p.ring.nvars
    target = target or e_ring(n, p.ring.coeffs)
    if not is_symmetric(p):
        raise DomainError(f"{p} is not symmetric")
    if p.is_zero():
        return target.zero()
    k = max(0, -min(p.min_exponents()))
    q = p.shift((k,) * n) if k else p
    es = [elementary(q.ring, i) for i in range(1, n + 1)]
    cache = {}

    def e_power(i, a):
        if (i, a) not in cache:
            cache[(i, a)] = es[i] ** a
        return cache[(i, a)]

    out = {}
    while not q.is_zero():
        lead = max(q.terms)
        c = q.coeff(lead)
        if any(lead[i] < lead[i + 1] for i in range(n - 1)):
            raise DomainError("leading exponent not a partition; input not symmetric")
        e_exp = tuple(lead[i] - lead[i + 1] for i in range(n - 1)) + (lead[-1],)
        term = q.ring.one()
        for i, a in enumerate(e_exp):
            if a:
                term = term * e_power(i, a)
        q = q - term.scale(c)
        out[e_exp] = out.get(e_exp, 0) + c
    result = LaurentPoly(target, out)
    if k:
        result = result * target.monomial((0,) * (n - 1) + (-k,))
    return result


def from_elementary(q: LaurentPoly, t_ring: Ring) -> LaurentPoly:
    n = t_ring.nvars
    images = [elementary(t_ring, i) for i in range(1, n + 1)]
    inverses = [None] * (n - 1) + [t_ring.monomial((-1,) * n)]
    return q.substitute(images, t_ring, inverses)


def power_sum_in_c(ell: int, c_ring: Ring) -> LaurentPoly:
    """x^l + x^{-l} written in c = x + 1/x (p_0 = 2, p_1 = c, p_{k+1} = c p_k - p_{k-1})."""
    c = c_ring.gen(0)
    prev, cur = c_ring.const(2), c
    if ell == 0:
        return prev
    for _ in range(ell - 1):
        prev, cur = cur, c * cur - prev
    return cur


def symmetric_to_c(p: LaurentPoly, c_ring: Ring) -> LaurentPoly:
    """Rewrite a Laurent polynomial in one variable x, invariant under x -> 1/x,
    as a polynomial in c = x + 1/x."""
    if p.ring.nvars != 1:
        raise DomainError("expected a univariate Laurent polynomial")
    if p.map_exponents(lambda e: (-e[0],)) != p:
        raise DomainError(f"{p} is not invariant under x -> 1/x")
    x = p.ring.gen(0)
    cx = x + x.inverse()
    out = {}
    q = p
    powers = {0: p.ring.one()}
    while not q.is_zero():
        d = max(e[0] for e in q.terms)
        coef = q.coeff((d,))
        if d not in powers:
            powers[d] = cx ** d
        q = q - powers[d].scale(coef)
        out[(d,)] = out.get((d,), 0) + coef
    return LaurentPoly(c_ring, out)
