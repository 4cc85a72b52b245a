"""Degree-bounded ideal membership by brute-force linear algebra.

Independent of the Gröbner engine: it searches for cofactors supported on a
fixed window of monomials and solves the resulting linear system exactly.  A
positive answer is a proof of membership; a negative answer only means no
certificate exists inside the window.
"""
from __future__ import annotations

from itertools import product

from astk.algebra.groebner import MembershipCertificate
from astk.algebra.linalg import sparse_solve
from astk.algebra.poly import LaurentPoly


def window_monomials(ring, bound: int) -> list:
    """Polynomial variables: total degree <= bound.  Inverted variables: |e| <= bound."""
    n = ring.nvars
    ranges = [range(-bound, bound + 1) if i in ring.units else range(bound + 1)
              for i in range(n)]
    out = []
    for exp in product(*ranges):
        poly_part = sum(e for i, e in enumerate(exp) if i not in ring.units)
        if poly_part <= bound:
            out.append(exp)
    return out


def linear_member(f: LaurentPoly, gens, bound: int, relations=()):
    """Search cofactors c_i supported on the window of size ``bound``.

    In polynomial rings the window is cut down so deg(c_i * g_i) <= bound.
    """
    gens = list(gens)
    relations = list(relations)
    ring = f.ring.with_coeffs("Q")
    allgens = [g.change_ring(ring) for g in gens + relations]
    f = f.change_ring(ring)
    columns = []
    labels = []
    for gi, g in enumerate(allgens):
        if g.is_zero():
            continue
        gdeg = max(sum(e for i, e in enumerate(exp) if i not in ring.units) for exp in g.terms)
        for m in window_monomials(ring, bound):
            if ring.is_polynomial and sum(m) + gdeg > bound:
                continue
            col = {}
            for e, c in g.items():
                key = tuple(a + b for a, b in zip(e, m))
                col[key] = col.get(key, 0) + c
            columns.append(col)
            labels.append((gi, m))
    rhs = dict(f.items())
    x = sparse_solve(columns, rhs)
    if x is None:
        return None
    coeffs = [dict() for _ in allgens]
    for v, (gi, m) in zip(x, labels):
        if v:
            coeffs[gi][m] = v
    polys = [LaurentPoly(ring, c) for c in coeffs]
    k = len(gens)
    return MembershipCertificate(f, tuple(allgens[:k]), tuple(polys[:k]),
                                 tuple(allgens[k:]), tuple(polys[k:]))
