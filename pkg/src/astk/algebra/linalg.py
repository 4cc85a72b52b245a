"""Exact rational linear algebra.

Dense work goes through fraction-free Bareiss elimination followed by
rational back-substitution.  Large sparse systems (membership oracles, Čech
levels) use :class:`SparseEchelon`, an incremental row-echelon form over
``Fraction``.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from astk.algebra.poly import parse_coeff


def _integer_row(row) -> list:
    d = 1
    for x in row:
        if x:
            d = lcm(d, x.denominator)
    return [int(x * d) for x in row]


def bareiss_echelon(rows: Sequence[Sequence[int]], ncols: int):
    """Fraction-free row echelon form of an integer matrix.

    Returns ``(echelon_rows, pivot_columns)``; only the first
    ``len(pivot_columns)`` rows are nonzero and are returned.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        prow = m[r]
        for i in range(r + 1, nrows):
            row = m[i]
            a = row[c]
            if a:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j] - a * prow[j]) // prev
            elif p != prev:
                for j in range(c + 1, ncols):
                    if row[j]:
                        row[j] = (p * row[j]) // prev
            row[c] = 0
        prev = p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _back_substitute(echelon, pivots, ncols, free_values: dict, rhs=None) -> list:
    x = [Fraction(0)] * ncols
    for j, v in free_values.items():
        x[j] = Fraction(v)
    for k in range(len(pivots) - 1, -1, -1):
        row = echelon[k]
        p = pivots[k]
        s = Fraction(rhs[k]) if rhs is not None else Fraction(0)
        for j in range(p + 1, ncols):
            if row[j] and x[j]:
                s -= row[j] * x[j]
        x[p] = s / row[p]
    return x


class ExactMatrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "_data", "_ech")

    def __init__(self, rows: int, cols: int, data: Iterable[Iterable] | None = None):
        self.rows = rows
        self.cols = cols
        if data is None:
            self._data = tuple((Fraction(0),) * cols for _ in range(rows))
        else:
            self._data = tuple(tuple(parse_coeff(x) for x in row) for row in data)
            if len(self._data) != rows or any(len(r) != cols for r in self._data):
                raise ValueError("matrix data does not match its shape")
        self._ech = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "ExactMatrix":
        rows = list(rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "ExactMatrix":
        columns = list(columns)
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls(rows, len(columns), [[col[i] for col in columns] for i in range(rows)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_sparse(cls, rows: int, cols: int, columns: Sequence[dict]) -> "ExactMatrix":
        """Build from column dicts ``{row_index: value}``."""
        data = [[Fraction(0)] * cols for _ in range(rows)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                data[i][j] = parse_coeff(v)
        return cls(rows, cols, data)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i) -> tuple:
        return self._data[i]

    def column(self, j) -> tuple:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list:
        return [list(r) for r in self._data]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows, [self.column(j) for j in range(self.cols)])

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            ocols = [other.column(j) for j in range(other.cols)]
            return ExactMatrix(self.rows, other.cols, [
                [sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in ocols]
                for r in self._data])
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * b for a, b in zip(r, vec) if a and b), Fraction(0))
                     for r in self._data)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ExactMatrix(self.rows, self.cols, [
            [a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __neg__(self):
        return ExactMatrix(self.rows, self.cols, [[-a for a in r] for r in self._data])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ExactMatrix":
        c = parse_coeff(c)
        return ExactMatrix(self.rows, self.cols, [[c * a for a in r] for r in self._data])

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch")
        return ExactMatrix(self.rows + other.rows, self.cols, self._data + other._data)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._data)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.shape, self._data))

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"

    # ----- elimination --------------------------------------------------
    def echelon(self):
        if self._ech is None:
            ints = [_integer_row(r) for r in self._data]
            self._ech = bareiss_echelon(ints, self.cols)
        return self._ech

    def rank(self) -> int:
        return len(self.echelon()[1])

    def nullity(self) -> int:
        return self.cols - self.rank()

    def pivot_columns(self) -> list:
        return list(self.echelon()[1])

    def nullspace(self) -> list:
        """Basis of the right kernel; vector k has a 1 in the k-th free column."""
        ech, pivots = self.echelon()
        pivset = set(pivots)
        basis = []
        for f in range(self.cols):
            if f in pivset:
                continue
            basis.append(tuple(_back_substitute(ech, pivots, self.cols, {f: 1})))
        return basis

    def column_space(self) -> list:
        return [self.column(j) for j in self.pivot_columns()]

    def solve(self, b: Sequence):
        """A particular solution of ``self @ x == b`` or None."""
        b = [parse_coeff(v) for v in b]
        if len(b) != self.rows:
            raise ValueError("right-hand side length mismatch")
        aug = [_integer_row(list(r) + [v]) for r, v in zip(self._data, b)]
        ech, pivots = bareiss_echelon(aug, self.cols + 1)
        if pivots and pivots[-1] == self.cols:
            return None
        rhs = [row[self.cols] for row in ech]
        return tuple(_back_substitute(ech, pivots, self.cols, {}, rhs))


def rank_of_vectors(vectors: Sequence[Sequence]) -> int:
    vectors = [list(v) for v in vectors]
    if not vectors:
        return 0
    return ExactMatrix.from_rows(vectors).rank()


class SparseEchelon:
    """Incremental row echelon form over Q with sparse ``{col: value}`` rows.

    Each stored row has its pivot at its smallest column and a pivot value 1.
    """

    def __init__(self):
        self.pivot_rows: dict = {}

    def reduce(self, row: dict) -> dict:
        row = {j: v for j, v in row.items() if v}
        while row:
            # eliminate the smallest column that has a pivot
            j = min((c for c in row if c in self.pivot_rows), default=None)
            if j is None:
                return row
            coef = row[j]
            for c, v in self.pivot_rows[j].items():
                nv = row.get(c, 0) - coef * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; return True if it increased the rank."""
        row = self.reduce(dict(row))
        if not row:
            return False
        p = min(row)
        inv = 1 / Fraction(row[p])
        self.pivot_rows[p] = {c: Fraction(v) * inv for c, v in row.items()}
        return True

    def rank(self) -> int:
        return len(self.pivot_rows)

    def contains(self, row: dict) -> bool:
        return not self.reduce(dict(row))


def sparse_solve(columns: Sequence[dict], rhs: dict, ncols: int | None = None):
    """Solve ``sum_j x_j * columns[j] == rhs`` exactly.

    ``columns[j]`` maps an equation key to a coefficient; keys are arbitrary
    hashables.  Returns the solution vector (free variables set to 0) or None.
    """
    ncols = len(columns) if ncols is None else ncols
    eqs: dict = {}
    for j, col in enumerate(columns):
        for key, v in col.items():
            if v:
                eqs.setdefault(key, {})[j] = parse_coeff(v)
    for key, v in rhs.items():
        if v:
            eqs.setdefault(key, {})[ncols] = parse_coeff(v)
    ech = SparseEchelon()
    for key in sorted(eqs, key=repr):
        ech.add(eqs[key])
    if ncols in ech.pivot_rows:
        return None
    x = [Fraction(0)] * ncols
    for p in sorted(ech.pivot_rows, reverse=True):
        row = ech.pivot_rows[p]
        s = row.get(ncols, Fraction(0))
        for c, v in row.items():
            if c != p and c != ncols:
                s -= v * x[c]
        x[p] = s
    return x


def sparse_rank(columns: Sequence[dict]) -> int:
    """Rank of the matrix whose columns are given as sparse dicts."""
    ech = SparseEchelon()
    for col in columns:
        ech.add(col)
    return ech.rank()


def sparse_kernel(rows: Sequence[dict], ncols: int) -> tuple:
    """Kernel of the linear system given by sparse rows over columns 0..ncols-1.

    Returns ``(basis, free)``: basis vector ``k`` (a sparse dict) has value 1
    at column ``free[k]`` and 0 at every other free column, so the values at
    the free columns are coordinates on the kernel.
    """
    ech = SparseEchelon()
    for r in rows:
        ech.add(r)
    pivots = sorted(ech.pivot_rows, reverse=True)
    free = [j for j in range(ncols) if j not in ech.pivot_rows]
    basis = []
    for f in free:
        x = {f: Fraction(1)}
        for p in pivots:
            s = Fraction(0)
            for c, v in ech.pivot_rows[p].items():
                if c != p and c in x:
                    s -= v * x[c]
            if s:
                x[p] = s
        basis.append(x)
    return basis, free
