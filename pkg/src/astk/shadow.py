"""Graded module shadow of the negative cyclic comparison for B G_a over the dual numbers."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from astk.algebra import univariate as up
from astk.algebra.findim import FinDimAlgebra
from astk.algebra.linalg import ExactMatrix, sparse_rank
from astk.algebra.poly import format_coeff, parse_coeff
from astk.errors import DomainError, UsageError

BASES = ("Q", "Q[eps]")
STOP_NOTE = ("module-level shadow only; HC^- summands are opaque labels and no S^1 "
             "fixed points or K-theory are computed")
CONTROL_NOTE = "square cartesian at implemented level"


def normalize_base(base: str) -> str:
    key = base.strip().lower().replace(" ", "")
    if key in ("q", "qq", "rationals"):
        return "Q"
    if key in ("q[eps]", "q[e]", "eps", "dual", "dual-numbers", "q[x]/x^2", "q[epsilon]"):
        return "Q[eps]"
    raise UsageError(f"unknown base {base!r}; choose Q or Q[eps]")


def base_algebra(base: str) -> FinDimAlgebra:
    return FinDimAlgebra.rationals() if normalize_base(base) == "Q" else FinDimAlgebra.dual_numbers()


@dataclass(frozen=True)
class GradedDims:
    dims: tuple     # dims[i] = dimension in degree i

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def __getitem__(self, i: int) -> int:
        return self.dims[i] if 0 <= i < len(self.dims) else 0

    def loop(self) -> "GradedDims":
        """Omega shift: degree d of the result is degree d + 1 of self."""
        return GradedDims(self.dims[1:])

    def minus(self, other: "GradedDims") -> "GradedDims":
        return GradedDims(tuple(self[i] - other[i] for i in range(len(self.dims))))

    def as_dict(self) -> dict:
        return dict(enumerate(self.dims))

    def to_json(self) -> dict:
        return {str(i): d for i, d in enumerate(self.dims)}


# ----- Hochschild homology -----------------------------------------------------

def hh_truncated_small(m: int, N: int) -> GradedDims:
    """HH_i(Q[x]/x^m) for i <= N from the 2-periodic complex on free rank-1 modules.

    Odd differentials are zero; even ones multiply by m x^(m-1).
    """
    if m < 1 or N < 0:
        raise DomainError("need m >= 1 and N >= 0")
    alg = FinDimAlgebra.truncated_polynomial((0,) * m + (1,), "x")
    mult = alg.left_matrix(alg.scale(alg.basis_vector(m - 1), m))
    zero = ExactMatrix.zeros(m, m)

    def d(i):   # C_i -> C_{i-1}
        if i <= 0:
            return ExactMatrix.zeros(0, m)
        return mult if i % 2 == 0 else zero

    dims = []
    for i in range(N + 1):
        out = d(i)
        ker = m - out.rank() if i > 0 else m
        dims.append(ker - d(i + 1).rank())
    return GradedDims(tuple(dims))


def hh_dual_numbers(N: int, base: str = "Q[eps]") -> GradedDims:
    if N < 0:
        raise DomainError("N must be >= 0")
    if normalize_base(base) == "Q":
        return GradedDims((1,) + (0,) * N)
    return hh_truncated_small(2, N)


class _BarComplex:
    """Normalized Hochschild complex A (x) Abar^(x)n of a finite-dimensional algebra."""

    def __init__(self, alg: FinDimAlgebra):
        self.alg = alg
        self.p = next(i for i, c in enumerate(alg.unit) if c)
        self.bar = [i for i in range(alg.dim) if i != self.p]

    def project(self, v) -> dict:
        """Coordinates of v modulo Q*1, indexed by positions in self.bar."""
        c = v[self.p] / self.alg.unit[self.p]
        out = {}
        for k, i in enumerate(self.bar):
            x = v[i] - c * self.alg.unit[i]
            if x:
                out[k] = x
        return out

    def chain_dim(self, n: int) -> int:
        return self.alg.dim * len(self.bar) ** n

    def _index(self, a0: int, js) -> int:
        idx = a0
        for j in js:
            idx = idx * len(self.bar) + j
        return idx

    def boundary_columns(self, n: int) -> list:
        """Columns of b: C_n -> C_{n-1} as sparse dicts."""
        alg, k = self.alg, len(self.bar)
        cols = []
        for a0 in range(alg.dim):
            for js in product(range(k), repeat=n):
                col: dict = {}

                def put(idx, c):
                    v = col.get(idx, 0) + c
                    if v:
                        col[idx] = v
                    else:
                        col.pop(idx, None)

                lift = [alg.basis_vector(self.bar[j]) for j in js]
                first = alg.mul(alg.basis_vector(a0), lift[0])
                for i, c in enumerate(first):
                    if c:
                        put(self._index(i, js[1:]), c)
                for i in range(1, n):
                    sign = (-1) ** i
                    for j, c in self.project(alg.mul(lift[i - 1], lift[i])).items():
                        put(self._index(a0, js[:i - 1] + (j,) + js[i + 1:]), sign * c)
                last = alg.mul(lift[-1], alg.basis_vector(a0))
                for i, c in enumerate(last):
                    if c:
                        put(self._index(i, js[:-1]), (-1) ** n * c)
                cols.append(col)
        return cols

    def homology(self, N: int) -> GradedDims:
        ranks = [0] + [sparse_rank(self.boundary_columns(n)) for n in range(1, N + 2)]
        return GradedDims(tuple(self.chain_dim(n) - ranks[n] - ranks[n + 1]
                                for n in range(N + 1)))


def hh_bar_oracle(alg: FinDimAlgebra, N: int) -> GradedDims:
    """HH_i(alg) for i <= N by exact ranks of the normalized Hochschild complex."""
    return _BarComplex(alg).homology(N)


def reduced_hh(base: str, N: int) -> GradedDims:
    """Kernel of HH(R) -> HH(Q) along the augmentation; Q is a retract, so dims subtract."""
    return hh_dual_numbers(N, base).minus(hh_dual_numbers(N, "Q"))


# ----- rational functions regular at 0 -------------------------------------------

@dataclass(frozen=True)
class RationalSeries:
    """num/den in lowest terms with den(0) = 1."""

    num: tuple
    den: tuple = (Fraction(1),)

    def __post_init__(self):
        num, den = up.trim(self.num), up.trim(self.den)
        if not den or not den[0]:
            raise DomainError("denominator must be nonzero at 0")
        if not num:
            den = (Fraction(1),)
        g = up.gcd(num, den) if num else (Fraction(1),)
        num = up.divmod_(num, g)[0]
        den = up.divmod_(den, g)[0]
        c = den[0]
        object.__setattr__(self, "num", up.scale(num, 1 / c))
        object.__setattr__(self, "den", up.scale(den, 1 / c))

    @classmethod
    def polynomial(cls, coeffs) -> "RationalSeries":
        return cls(tuple(coeffs))

    @classmethod
    def geometric(cls) -> "RationalSeries":
        return cls((Fraction(1),), (Fraction(1), Fraction(-1)))

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        """Decided by division: num/den is a polynomial iff den divides num."""
        return not up.divmod_(self.num, self.den)[1]

    def expand(self, precision: int) -> tuple:
        """Taylor coefficients at 0 through x^precision."""
        out = []
        for k in range(precision + 1):
            c = self.num[k] if k < len(self.num) else Fraction(0)
            for i in range(1, min(k, len(self.den) - 1) + 1):
                c -= self.den[i] * out[k - i]
            out.append(c)
        return tuple(out)

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        return RationalSeries(up.add(up.mul(self.num, other.den), up.mul(other.num, self.den)),
                              up.mul(self.den, other.den))

    def __mul__(self, other: "RationalSeries") -> "RationalSeries":
        return RationalSeries(up.mul(self.num, other.num), up.mul(self.den, other.den))

    def __str__(self):
        n = up.to_str(self.num)
        if self.den == (1,):
            return n
        return f"({n})/({up.to_str(self.den)})"

    def to_json(self) -> dict:
        return {"num": [format_coeff(c) for c in self.num],
                "den": [format_coeff(c) for c in self.den], "text": str(self)}

    @classmethod
    def from_json(cls, data) -> "RationalSeries":
        return cls(tuple(parse_coeff(c) for c in data["num"]),
                   tuple(parse_coeff(c) for c in data["den"]))


# ----- the shadow pair and the comparison square ----------------------------------

@dataclass(frozen=True)
class ShadowDegree:
    degree: int
    coefficient_dim: int
    polynomial_rank: int
    series_rank: int
    inclusion_kernel: int

    def to_json(self) -> dict:
        return {"degree": self.degree, "coefficient_dim": self.coefficient_dim,
                "polynomial_rank": self.polynomial_rank, "series_rank": self.series_rank,
                "inclusion_kernel": self.inclusion_kernel}


@dataclass(frozen=True)
class ShadowPair:
    base: str
    N: int
    precision: int
    shared_label: str
    coefficients: GradedDims     # reduced HH after the Omega shift
    degrees: tuple
    notes: tuple = (STOP_NOTE,)

    def to_json(self) -> dict:
        return {"base": self.base, "N": self.N, "precision": self.precision,
                "shared_summand": self.shared_label,
                "coefficient_dims": self.coefficients.to_json(),
                "degrees": [d.to_json() for d in self.degrees], "notes": list(self.notes)}


def bga_shadow(base: str, N: int, P: int) -> ShadowPair:
    """Polynomial and series corners, per degree d <= N, truncated at x-degree P.

    The series corner is compared through its Taylor truncation, so both
    corners have rank coefficient_dim * (P + 1) and the inclusion is checked
    injective by an exact kernel computation.
    """
    if N < 0 or P < 0:
        raise DomainError("N and P must be >= 0")
    base = normalize_base(base)
    coeff = reduced_hh(base, N + 1).loop()
    rows = []
    for d in range(N + 1):
        c = coeff[d]
        size = c * (P + 1)
        # coefficient vectors of c_i * x^k go to the same truncated Taylor vectors
        cols = [[Fraction(int(r == j)) for r in range(size)] for j in range(size)]
        inclusion = ExactMatrix.from_columns(cols, rows=size) if size else ExactMatrix.zeros(0, 0)
        rows.append(ShadowDegree(d, c, size, size, inclusion.nullity() if size else 0))
    return ShadowPair(base, N, P, f"HC^-({base})", coeff, tuple(rows))


@dataclass(frozen=True)
class DefectWitness:
    degree: int
    coefficient_index: int
    series: RationalSeries
    top_row_dim: int        # reduced coefficient dim over Q[eps] in this degree
    bottom_row_dim: int     # reduced coefficient dim over Q in this degree

    def in_pullback(self) -> bool:
        # the bottom row has no reduced summand here, so the image there is zero
        return (0 <= self.coefficient_index < self.top_row_dim and self.bottom_row_dim == 0
                and not self.series.is_zero())

    def outside_polynomial_image(self) -> bool:
        den = up.trim(self.series.den)
        return len(den) > 1 and not self.series.is_polynomial()

    def verify(self) -> bool:
        return self.in_pullback() and self.outside_polynomial_image()

    def to_json(self) -> dict:
        return {"degree": self.degree, "coefficient_index": self.coefficient_index,
                "series": self.series.to_json(), "top_row_dim": self.top_row_dim,
                "bottom_row_dim": self.bottom_row_dim, "in_pullback": self.in_pullback(),
                "outside_polynomial_image": self.outside_polynomial_image(),
                "valid": self.verify()}

    @classmethod
    def from_json(cls, data) -> "DefectWitness":
        return cls(data["degree"], data["coefficient_index"],
                   RationalSeries.from_json(data["series"]), data["top_row_dim"],
                   data["bottom_row_dim"])


@dataclass(frozen=True)
class DefectReport:
    base: str
    N: int
    coefficient_dims: GradedDims
    corner_dims: tuple         # per degree: (poly/top, series/top, poly/bottom, series/bottom)
    witnesses: tuple
    cartesian: bool
    notes: tuple = field(default=(STOP_NOTE,))

    def to_json(self) -> dict:
        return {"base": self.base, "N": self.N,
                "coefficient_dims": self.coefficient_dims.to_json(),
                "corners": [{"degree": d, "poly_top": a, "series_top": b, "poly_bottom": c,
                             "series_bottom": e}
                            for d, (a, b, c, e) in enumerate(self.corner_dims)],
                "witnesses": [w.to_json() for w in self.witnesses],
                "cartesian": self.cartesian, "notes": list(self.notes)}


def pullback_defect(N: int, base: str = "Q[eps]", precision: int = 0) -> DefectReport:
    """Search degrees 1..N for elements of the pullback corner missing from the polynomial corner."""
    if N < 1:
        raise DomainError("N must be >= 1")
    base = normalize_base(base)
    top = bga_shadow(base, N, precision)
    bottom = bga_shadow("Q", N, precision)
    corners = tuple((t.polynomial_rank, t.series_rank, b.polynomial_rank, b.series_rank)
                    for t, b in zip(top.degrees, bottom.degrees))
    witnesses = []
    for d in range(1, N + 1):
        c_top, c_bottom = top.coefficients[d], bottom.coefficients[d]
        if c_top > c_bottom:
            w = DefectWitness(d, 0, RationalSeries.geometric(), c_top, c_bottom)
            if not w.verify():
                raise AssertionError(f"witness in degree {d} failed its own check")
            witnesses.append(w)
    if base == "Q[eps]" and not witnesses:
        raise AssertionError("no defect found over the dual numbers")
    notes = (STOP_NOTE,) if witnesses else (STOP_NOTE, CONTROL_NOTE)
    return DefectReport(base, N, top.coefficients, corners, tuple(witnesses), not witnesses,
                        notes)
