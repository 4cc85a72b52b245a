"""Čech nerves of Spec Q -> BG for finite group schemes, as cosimplicial
tensor powers of the coordinate Hopf algebra, and their normalized cohomology."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from astk.algebra.cochain import CochainComplexQ, complex_cohomology
from astk.algebra.findim import FinDimAlgebra
from astk.algebra.linalg import ExactMatrix, sparse_kernel
from astk.algebra.poly import format_coeff
from astk.errors import IntegrityError, UnsupportedGroup
from astk.groups.finite import FiniteGroup
from astk.groups.spec import Mu, group_label

LEVEL_NOTE = ("each level is finite etale over Q, so its Hochschild homology is its "
              "function algebra; levels are taken to be H^(tensor m)")


def _add(target: dict, key, c):
    v = target.get(key, 0) + c
    if v:
        target[key] = v
    else:
        target.pop(key, None)


@dataclass(frozen=True, eq=False)
class HopfAlgebraData:
    """Sparse structure maps on the basis 0..d-1.

    ``mult[(i, j)]``, ``comult[i]`` and ``antipode[i]`` are dicts from basis
    indices (pairs for ``comult``) to coefficients.
    """

    labels: tuple
    mult: dict
    unit: dict
    comult: tuple
    counit: tuple
    antipode: tuple
    name: str = ""

    @property
    def dim(self) -> int:
        return len(self.labels)

    # bilinear helpers on sparse vectors
    def mul(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for i, x in a.items():
            for j, y in b.items():
                for k, c in self.mult.get((i, j), {}).items():
                    _add(out, k, x * y * c)
        return out

    def delta(self, a: dict) -> dict:
        out: dict = {}
        for i, x in a.items():
            for k, c in self.comult[i].items():
                _add(out, k, x * c)
        return out

    def eps(self, a: dict) -> Fraction:
        return sum((x * self.counit[i] for i, x in a.items()), Fraction(0))

    def S(self, a: dict) -> dict:
        out: dict = {}
        for i, x in a.items():
            for k, c in self.antipode[i].items():
                _add(out, k, x * c)
        return out

    def e(self, i) -> dict:
        return {i: Fraction(1)}

    def axiom_failures(self) -> list:
        d = self.dim
        bad = []
        one = dict(self.unit)
        for i in range(d):
            if self.mul(one, self.e(i)) != self.e(i) or self.mul(self.e(i), one) != self.e(i):
                bad.append(f"unit fails on {self.labels[i]}")
        for i, j in product(range(d), repeat=2):
            if self.mul(self.e(i), self.e(j)) != self.mul(self.e(j), self.e(i)):
                bad.append(f"not commutative at ({i}, {j})")
        for i, j, k in product(range(d), repeat=3):
            lhs = self.mul(self.mul(self.e(i), self.e(j)), self.e(k))
            if lhs != self.mul(self.e(i), self.mul(self.e(j), self.e(k))):
                bad.append(f"not associative at ({i}, {j}, {k})")
                break
        for i in range(d):
            dl = self.comult[i]
            left, right, co_l, co_r = {}, {}, {}, {}
            for (a, b), c in dl.items():
                for (a1, a2), c1 in self.comult[a].items():
                    _add(left, (a1, a2, b), c * c1)
                for (b1, b2), c2 in self.comult[b].items():
                    _add(right, (a, b1, b2), c * c2)
                _add(co_l, b, c * self.counit[a])
                _add(co_r, a, c * self.counit[b])
            if left != right:
                bad.append(f"not coassociative on {self.labels[i]}")
            if co_l != self.e(i) or co_r != self.e(i):
                bad.append(f"counit fails on {self.labels[i]}")
            conv_l, conv_r = {}, {}
            for (a, b), c in dl.items():
                for k, v in self.mul(self.S(self.e(a)), self.e(b)).items():
                    _add(conv_l, k, c * v)
                for k, v in self.mul(self.e(a), self.S(self.e(b))).items():
                    _add(conv_r, k, c * v)
            target = {k: v * self.counit[i] for k, v in one.items() if v * self.counit[i]}
            if conv_l != target or conv_r != target:
                bad.append(f"antipode fails on {self.labels[i]}")
        # comultiplication and counit are algebra maps
        if self.delta(one) != {(a, b): x * y for a, x in one.items() for b, y in one.items()
                               if x * y}:
            bad.append("comultiplication does not preserve the unit")
        if self.eps(one) != 1:
            bad.append("counit does not preserve the unit")
        for i, j in product(range(d), repeat=2):
            prod_ij = self.mul(self.e(i), self.e(j))
            lhs = self.delta(prod_ij)
            rhs: dict = {}
            for (a, b), c in self.comult[i].items():
                for (a2, b2), c2 in self.comult[j].items():
                    for k1, v1 in self.mult.get((a, a2), {}).items():
                        for k2, v2 in self.mult.get((b, b2), {}).items():
                            _add(rhs, (k1, k2), c * c2 * v1 * v2)
            if lhs != rhs:
                bad.append(f"comultiplication not multiplicative at ({i}, {j})")
                break
            if self.eps(prod_ij) != self.counit[i] * self.counit[j]:
                bad.append(f"counit not multiplicative at ({i}, {j})")
                break
        return bad

    def check(self):
        bad = self.axiom_failures()
        if bad:
            raise IntegrityError("Hopf axioms fail: " + "; ".join(bad[:5]))

    def algebra(self) -> FinDimAlgebra:
        d = self.dim
        table = [[[self.mult.get((i, j), {}).get(k, 0) for k in range(d)] for j in range(d)]
                 for i in range(d)]
        return FinDimAlgebra(self.labels, table, [self.unit.get(k, 0) for k in range(d)],
                             self.counit)

    def to_json(self) -> dict:
        return {"name": self.name, "dim": self.dim, "basis": list(self.labels),
                "counit": [format_coeff(c) for c in self.counit]}


def hopf_from_group(g) -> HopfAlgebraData:
    if isinstance(g, Mu):
        n = g.n
        labels = tuple("1" if k == 0 else "t" if k == 1 else f"t^{k}" for k in range(n))
        mult = {(i, j): {(i + j) % n: Fraction(1)} for i in range(n) for j in range(n)}
        comult = tuple({(k, k): Fraction(1)} for k in range(n))
        antipode = tuple({(n - k) % n: Fraction(1)} for k in range(n))
        h = HopfAlgebraData(labels, mult, {0: Fraction(1)}, comult, (Fraction(1),) * n,
                            antipode, f"O(mu_{n})")
    elif isinstance(g, FiniteGroup):
        n = g.order
        labels = tuple(f"delta[{x}]" for x in g.elements)
        mult = {(i, i): {i: Fraction(1)} for i in range(n)}
        comult = []
        for x in range(n):
            comult.append({(a, b): Fraction(1) for a in range(n) for b in range(n)
                           if g.mul(a, b) == x})
        counit = tuple(Fraction(int(x == g.identity)) for x in range(n))
        antipode = tuple({g.inverses[x]: Fraction(1)} for x in range(n))
        h = HopfAlgebraData(labels, mult, {i: Fraction(1) for i in range(n)}, tuple(comult),
                            counit, antipode, f"O({g.name})")
    else:
        raise UnsupportedGroup(f"{group_label(g)} is not a finite group scheme")
    h.check()
    return h


# ----- sparse linear maps between tensor-power levels ---------------------------

@dataclass(frozen=True, eq=False)
class SparseMap:
    src: int
    dst: int
    cols: tuple     # cols[j] = {row: coefficient}

    def apply(self, v: dict) -> dict:
        out: dict = {}
        for j, x in v.items():
            for i, c in self.cols[j].items():
                _add(out, i, x * c)
        return out

    def compose(self, first: "SparseMap") -> "SparseMap":
        """self o first."""
        if first.dst != self.src:
            raise ValueError("dimension mismatch in composition")
        return SparseMap(first.src, self.dst, tuple(self.apply(c) for c in first.cols))

    def __add__(self, other: "SparseMap") -> "SparseMap":
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            for k, v in b.items():
                _add(c, k, v)
            cols.append(c)
        return SparseMap(self.src, self.dst, tuple(cols))

    def scale(self, s) -> "SparseMap":
        return SparseMap(self.src, self.dst,
                         tuple({k: s * v for k, v in c.items()} for c in self.cols))

    def __eq__(self, other):
        return (isinstance(other, SparseMap) and (self.src, self.dst) == (other.src, other.dst)
                and self.cols == other.cols)

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(self.cols)

    def rows(self) -> list:
        out = [dict() for _ in range(self.dst)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                out[i][j] = v
        return out

    def to_matrix(self) -> ExactMatrix:
        return ExactMatrix.from_sparse(self.dst, self.src, list(self.cols))


def _identity(n: int) -> SparseMap:
    return SparseMap(n, n, tuple({j: Fraction(1)} for j in range(n)))


@dataclass(frozen=True, eq=False)
class CosimplicialAlgebra:
    hopf: HopfAlgebraData
    truncation: int
    cofaces: dict          # (m, i) -> SparseMap level m -> m+1
    codegeneracies: dict   # (m, j) -> SparseMap level m+1 -> m

    def level_dim(self, m: int) -> int:
        return self.hopf.dim ** m

    @property
    def level_dims(self) -> tuple:
        return tuple(self.level_dim(m) for m in range(self.truncation + 1))

    def differential(self, m: int) -> SparseMap:
        """Alternating sum of cofaces, level m -> m+1."""
        out = self.cofaces[(m, 0)]
        for i in range(1, m + 2):
            out = out + self.cofaces[(m, i)].scale((-1) ** i)
        return out

    def identity_failures(self) -> list:
        M = self.truncation
        d, s = self.cofaces, self.codegeneracies
        bad = []
        for m in range(M - 1):
            for j in range(m + 3):
                for i in range(j):
                    if d[(m + 1, j)].compose(d[(m, i)]) != d[(m + 1, i)].compose(d[(m, j - 1)]):
                        bad.append(f"d^{j} d^{i} at level {m}")
        for m in range(M):
            # s^j: level m+1 -> m (j = 0..m); d^i: level m -> m+1 (i = 0..m+1)
            for j in range(m + 1):
                for i in range(m + 2):
                    lhs = s[(m, j)].compose(d[(m, i)])
                    if i < j:
                        rhs = d[(m - 1, i)].compose(s[(m - 1, j - 1)])
                    elif i in (j, j + 1):
                        rhs = _identity(self.level_dim(m))
                    else:
                        rhs = d[(m - 1, i - 1)].compose(s[(m - 1, j)])
                    if lhs != rhs:
                        bad.append(f"s^{j} d^{i} at level {m}")
        for m in range(1, M):
            # s^j s^i = s^i s^{j+1} for i <= j, level m+1 -> m-1
            for j in range(m):
                for i in range(j + 1):
                    if s[(m - 1, j)].compose(s[(m, i)]) != s[(m - 1, i)].compose(s[(m, j + 1)]):
                        bad.append(f"s^{j} s^{i} at level {m + 1}")
        for m in range(M - 1):
            if not self.differential(m + 1).compose(self.differential(m)).is_zero():
                bad.append(f"alternating differential squares to nonzero at level {m}")
        return bad


def _decode(idx: int, d: int, m: int) -> tuple:
    out = []
    for _ in range(m):
        idx, r = divmod(idx, d)
        out.append(r)
    return tuple(reversed(out))


def _encode(t, d: int) -> int:
    idx = 0
    for x in t:
        idx = idx * d + x
    return idx


def cech_nerve(h: HopfAlgebraData, M: int = 4, check: bool = True) -> CosimplicialAlgebra:
    if M < 2:
        raise ValueError("truncation must be >= 2")
    d = h.dim
    unit = h.unit
    cofaces, codeg = {}, {}
    for m in range(M):
        basis = [_decode(k, d, m) for k in range(d ** m)]
        for i in range(m + 2):
            cols = []
            for t in basis:
                col: dict = {}
                if i == 0:
                    for u, c in unit.items():
                        _add(col, _encode((u,) + t, d), c)
                elif i == m + 1:
                    for u, c in unit.items():
                        _add(col, _encode(t + (u,), d), c)
                else:
                    for (a, b), c in h.comult[t[i - 1]].items():
                        _add(col, _encode(t[:i - 1] + (a, b) + t[i:], d), c)
                cols.append(col)
            cofaces[(m, i)] = SparseMap(d ** m, d ** (m + 1), tuple(cols))
        up_basis = [_decode(k, d, m + 1) for k in range(d ** (m + 1))]
        for j in range(m + 1):
            cols = []
            for t in up_basis:
                c = h.counit[t[j]]
                cols.append({_encode(t[:j] + t[j + 1:], d): c} if c else {})
            codeg[(m, j)] = SparseMap(d ** (m + 1), d ** m, tuple(cols))
    cs = CosimplicialAlgebra(h, M, cofaces, codeg)
    if check:
        bad = cs.identity_failures()
        if bad:
            raise IntegrityError("cosimplicial identities fail: " + "; ".join(bad[:5]))
    return cs


# ----- normalized cohomology ---------------------------------------------------

@dataclass(frozen=True, eq=False)
class CohomologyReport:
    group: str
    truncation: int
    max_degree: int
    level_dims: tuple
    normalized_dims: tuple
    predicted_normalized_dims: tuple
    cohomology: tuple              # dim H^k, k = 0..D
    h0_basis: tuple                # vectors in level 0
    equalizer_dim: int             # ker(d^0 - d^1) on level 0, computed directly
    coinvariant_dim: int           # {x in H : comultiplication(x) = 1 (x) x}
    genuine_dim: int | None
    notes: tuple = (LEVEL_NOTE,)

    @property
    def consistent(self) -> bool:
        return (self.normalized_dims == self.predicted_normalized_dims
                and self.cohomology[0] == self.equalizer_dim)

    def to_json(self) -> dict:
        return {"group": self.group, "truncation": self.truncation,
                "max_degree": self.max_degree, "level_dims": list(self.level_dims),
                "normalized_dims": list(self.normalized_dims),
                "predicted_normalized_dims": list(self.predicted_normalized_dims),
                "cohomology": {str(k): v for k, v in enumerate(self.cohomology)},
                "h0_basis": [[format_coeff(c) for c in v] for v in self.h0_basis],
                "equalizer_dim": self.equalizer_dim, "coinvariant_dim": self.coinvariant_dim,
                "genuine_dim": self.genuine_dim, "notes": list(self.notes)}


def _normalized(cs: CosimplicialAlgebra, m: int):
    """Basis and free-column coordinates of the intersection of codegeneracy kernels."""
    dim = cs.level_dim(m)
    if m == 0:
        return [{0: Fraction(1)}], [0]
    rows = []
    for j in range(m):
        rows.extend(r for r in cs.codegeneracies[(m - 1, j)].rows() if r)
    return sparse_kernel(rows, dim)


def genuine_dimension(g) -> int | None:
    if isinstance(g, Mu):
        return g.n
    if isinstance(g, FiniteGroup):
        return g.nclasses
    return None


def normalized_cohomology(cs: CosimplicialAlgebra, D: int, group=None) -> CohomologyReport:
    if D >= cs.truncation:
        raise ValueError("max degree must be below the truncation")
    spaces = [_normalized(cs, m) for m in range(D + 2)]
    dims = tuple(len(b) for b, _ in spaces)
    d = cs.hopf.dim
    predicted = tuple((d - 1) ** m for m in range(D + 2))
    diffs = []
    for m in range(D + 1):
        delta = cs.differential(m)
        basis_hi, free_hi = spaces[m + 1]
        cols = []
        for v in spaces[m][0]:
            w = delta.apply(v)
            coords = [w.get(f, Fraction(0)) for f in free_hi]
            recon: dict = {}
            for c, b in zip(coords, basis_hi):
                if c:
                    for k, x in b.items():
                        _add(recon, k, c * x)
            if recon != w:
                raise IntegrityError(f"differential leaves the normalized subcomplex at {m}")
            cols.append(coords)
        diffs.append(ExactMatrix.from_columns(cols, rows=len(basis_hi)) if cols
                     else ExactMatrix.zeros(len(basis_hi), 0))
    cx = CochainComplexQ(dims, tuple(diffs))
    cohom = []
    h0 = []
    for k in range(D + 1):
        dim, reps = complex_cohomology(cx, k)
        cohom.append(dim)
        if k == 0:
            h0 = [tuple(r) for r in reps]
    eq = (cs.cofaces[(0, 0)].to_matrix() - cs.cofaces[(0, 1)].to_matrix()).nullity()
    co = (cs.cofaces[(1, 0)].to_matrix() - cs.cofaces[(1, 1)].to_matrix()).nullity()
    label = group_label(group) if group is not None else cs.hopf.name
    return CohomologyReport(label, cs.truncation, D, cs.level_dims, dims, predicted,
                            tuple(cohom), tuple(h0), eq, co,
                            genuine_dimension(group) if group is not None else None)


def cech_cohomology(g, M: int = 4, D: int = 2) -> CohomologyReport:
    return normalized_cohomology(cech_nerve(hopf_from_group(g), M), D, g)


@dataclass(frozen=True)
class GapReport:
    n: int
    genuine_dim: int
    totalization_h0: int
    completed_dim: int
    completed_dims_tower: tuple = field(default=())

    @property
    def gap(self) -> bool:
        return self.genuine_dim != self.totalization_h0

    @property
    def consistent(self) -> bool:
        expected_gap = self.n >= 2
        return (self.totalization_h0 == self.completed_dim and self.gap == expected_gap
                and all(x == self.completed_dim for x in self.completed_dims_tower))

    def to_json(self) -> dict:
        return {"n": self.n, "triple": [self.genuine_dim, self.totalization_h0,
                                        self.completed_dim],
                "genuine_dim": self.genuine_dim, "totalization_h0": self.totalization_h0,
                "completed_dim": self.completed_dim, "gap": self.gap,
                "completion_tower": list(self.completed_dims_tower),
                "consistent": self.consistent}


def descent_gap(g, M: int = 2) -> GapReport:
    from astk.completion import completion_tower, idempotent_split
    from astk.groups.repring import rep_ring

    if not isinstance(g, Mu):
        raise UnsupportedGroup("descent_gap is implemented for mu_n")
    n = g.n
    report = normalized_cohomology(cech_nerve(hopf_from_group(g), M), 0, g)
    split = idempotent_split(FinDimAlgebra.cyclic(n))
    local = split.factor_dims[split.aug_local]
    tower = tuple(completion_tower(rep_ring(g), None, n))
    return GapReport(n, n, report.cohomology[0], local, tower)
