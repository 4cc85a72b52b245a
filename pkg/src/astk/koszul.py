"""Degree-0 Koszul-limit check: R/(r_1^{N+1}, ..., r_k^{N+1}) against R/I^{N+1}."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from astk.algebra.groebner import groebner_basis, ideal_member
from astk.algebra.linalg import ExactMatrix
from astk.algebra.poly import IdealGens, Ring
from astk.completion import complete_truncated, ideal_power_generators
from astk.errors import DomainError, NotFiniteDimensional

DERIVED_NOTE = ("degree-0 (underived) comparison only; higher Koszul homology "
                "is not computed")


def quotient_dim(ring: Ring, polys) -> int | None:
    """dim_Q R/(polys), or None when infinite."""
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return None if ring.nvars else 1
    gb = groebner_basis(IdealGens(ring, tuple(polys)))
    try:
        return len(gb.standard_monomials())
    except NotFiniteDimensional:
        return None


@dataclass(frozen=True, eq=False)
class KoszulCube:
    ring: Ring
    sequence: tuple
    bound: tuple
    nodes: dict            # multi-index -> dim R/(r_j^{i_j})

    def predicted(self, index) -> int | None:
        base = self.nodes.get((1,) * len(self.sequence))
        if base is None:
            return None
        out = base
        for i in index:
            out *= i
        return out

    def violations(self) -> list:
        return [idx for idx, d in self.nodes.items() if d != self.predicted(idx)]


@dataclass(frozen=True, eq=False)
class KoszulReport:
    ring: Ring
    sequence: tuple
    precision: int
    koszul_dim: int | None          # R/(r^{N+1})
    koszul_quotient_dim: int | None  # R/(r^{N+1}) / I^{N+1}
    adic_dim: int | None             # R/I^{N+1}
    tower: tuple                    # dims of R/I^{s+1}, s = 0..N
    cube: KoszulCube
    powers_in_ideal: tuple          # certificates r_i^{N+1} in I^{N+1}
    witness_rank: int
    witness_multiplicative: bool
    status: str
    notes: tuple = field(default=(DERIVED_NOTE,))

    def to_json(self) -> dict:
        return {
            "ring": self.ring.to_json(), "sequence": [r.to_json() for r in self.sequence],
            "precision": self.precision, "koszul_dim": self.koszul_dim,
            "koszul_quotient_dim": self.koszul_quotient_dim, "adic_dim": self.adic_dim,
            "tower": list(self.tower),
            "nodes": [{"index": list(k), "dim": v, "predicted": self.cube.predicted(k)}
                      for k, v in sorted(self.cube.nodes.items())],
            "regular_prediction_violations": [list(v) for v in self.cube.violations()],
            "powers_in_ideal": [c.to_json() for c in self.powers_in_ideal],
            "isomorphism_witness": {"rank": self.witness_rank,
                                    "multiplicative": self.witness_multiplicative},
            "status": self.status, "notes": list(self.notes)}


def koszul_completion_check(ring: Ring, seq, N: int, full_cube_max_k: int = 2) -> KoszulReport:
    if not ring.is_polynomial or ring.coeffs != "Q":
        raise DomainError("the Koszul check runs in a polynomial ring over Q")
    seq = tuple(seq)
    k = len(seq)
    ideal = IdealGens(ring, seq)

    indices = (product(range(1, N + 2), repeat=k) if k <= full_cube_max_k
               else [(i,) * k for i in range(1, N + 2)])
    nodes = {}
    for idx in indices:
        nodes[tuple(idx)] = quotient_dim(ring, [r ** i for r, i in zip(seq, idx)])
    cube = KoszulCube(ring, seq, (N + 1,) * k, nodes)

    top = [r ** (N + 1) for r in seq]
    koszul_dim = quotient_dim(ring, top)
    try:
        koszul_side = complete_truncated(ring, ideal, N, relations=top)
        adic_side = complete_truncated(ring, ideal, N)
    except NotFiniteDimensional as exc:
        return KoszulReport(ring, seq, N, koszul_dim, None, None, (), cube, (), 0, False,
                            "fail", (DERIVED_NOTE, f"R/I^{N + 1} is not finite: {exc}"))
    tower = tuple(complete_truncated(ring, ideal, s).dim for s in range(N + 1))

    power_gens = ideal_power_generators(list(seq), N + 1)
    certs = []
    for p in top:
        cert = ideal_member(p, power_gens)
        if cert is None:
            raise AssertionError(f"{p} not in I^{N + 1}")
        certs.append(cert)

    # the identity on R induces koszul_side -> adic_side; it must be an isomorphism
    cols = [adic_side.image(p) for p in koszul_side.lifts]
    witness = ExactMatrix.from_columns(cols, rows=adic_side.dim) if cols else None
    rank = witness.rank() if witness is not None else 0
    alg_k, alg_a = koszul_side.algebra, adic_side.algebra
    mult_ok = True
    for i in range(alg_k.dim):
        for j in range(alg_k.dim):
            lhs = adic_side.image(koszul_side.lifts[i] * koszul_side.lifts[j])
            if lhs != alg_a.mul(cols[i], cols[j]):
                mult_ok = False
    ok = (koszul_side.dim == adic_side.dim == rank and mult_ok and not cube.violations())
    return KoszulReport(ring, seq, N, koszul_dim, koszul_side.dim, adic_side.dim, tower, cube,
                        tuple(certs), rank, mult_ok, "pass" if ok else "fail")
