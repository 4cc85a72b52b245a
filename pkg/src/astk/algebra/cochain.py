"""Finite cochain complexes of Q-vector spaces and their cohomology."""
from __future__ import annotations

from dataclasses import dataclass

from astk.algebra.linalg import ExactMatrix, SparseEchelon
from astk.errors import IntegrityError


@dataclass(frozen=True)
class CochainComplexQ:
    """``differentials[k]`` is the matrix of the map degree k -> k+1 (shape d_{k+1} x d_k)."""

    dims: tuple
    differentials: tuple

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        diffs = tuple(self.differentials)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "differentials", diffs)
        if len(diffs) != max(len(dims) - 1, 0):
            raise ValueError("need one differential between consecutive degrees")
        for k, d in enumerate(diffs):
            if d.shape != (dims[k + 1], dims[k]):
                raise ValueError(f"differential {k} has shape {d.shape}, "
                                 f"expected {(dims[k + 1], dims[k])}")
        self.check()

    def check(self):
        for k in range(len(self.differentials) - 1):
            comp = self.differentials[k + 1] @ self.differentials[k]
            if not comp.is_zero():
                raise IntegrityError(f"d^{k + 1} o d^{k} != 0")

    @property
    def levels(self) -> int:
        return len(self.dims)

    def differential(self, k: int) -> ExactMatrix:
        if 0 <= k < len(self.differentials):
            return self.differentials[k]
        rows = self.dims[k + 1] if 0 <= k + 1 < self.levels else 0
        cols = self.dims[k] if 0 <= k < self.levels else 0
        return ExactMatrix.zeros(rows, cols)


def complex_cohomology(cx: CochainComplexQ, k: int):
    """Return ``(dim H^k, representatives)`` where the representatives are
    cocycles whose classes form a basis of H^k."""
    if not 0 <= k < cx.levels:
        raise ValueError(f"degree {k} out of range 0..{cx.levels - 1}")
    out_map = cx.differential(k)
    in_map = cx.differential(k - 1)
    cocycles = out_map.nullspace()
    rank_in = in_map.rank()
    dim = len(cocycles) - rank_in
    # extend a basis of the coboundaries by cocycles
    ech = SparseEchelon()
    for v in in_map.column_space():
        ech.add(dict(enumerate(v)))
    reps = []
    for z in cocycles:
        if ech.add(dict(enumerate(z))):
            reps.append(z)
    if len(reps) != dim:
        raise IntegrityError("cohomology rank formula disagrees with quotient basis")
    return dim, reps
