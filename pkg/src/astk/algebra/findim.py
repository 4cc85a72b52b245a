"""Finite-dimensional algebras over Q given by structure constants."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from astk.algebra import univariate as up
from astk.algebra.linalg import ExactMatrix
from astk.algebra.poly import format_coeff, parse_coeff
from astk.errors import IntegrityError


def _vec(values) -> tuple:
    return tuple(parse_coeff(v) for v in values)


@dataclass(frozen=True, eq=False)
class FinDimAlgebra:
    """``mult[i][j]`` is the coordinate vector of ``b_i * b_j``."""

    labels: tuple
    mult: tuple
    unit: tuple
    augmentation: tuple | None = None

    def __post_init__(self):
        n = len(self.labels)
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        mult = tuple(tuple(_vec(self.mult[i][j]) for j in range(n)) for i in range(n))
        if len(self.mult) != n or any(len(v) != n for row in mult for v in row):
            raise ValueError("structure constants must be an n x n x n tensor")
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "unit", _vec(self.unit))
        if self.augmentation is not None:
            object.__setattr__(self, "augmentation", _vec(self.augmentation))

    @property
    def dim(self) -> int:
        return len(self.labels)

    def basis_vector(self, i: int) -> tuple:
        return tuple(Fraction(int(i == j)) for j in range(self.dim))

    def zero(self) -> tuple:
        return (Fraction(0),) * self.dim

    def add(self, a, b) -> tuple:
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b) -> tuple:
        return tuple(x - y for x, y in zip(a, b))

    def scale(self, a, c) -> tuple:
        return tuple(c * x for x in a)

    def mul(self, a, b) -> tuple:
        out = [Fraction(0)] * self.dim
        for i, x in enumerate(a):
            if not x:
                continue
            row = self.mult[i]
            for j, y in enumerate(b):
                if not y:
                    continue
                xy = x * y
                for k, c in enumerate(row[j]):
                    if c:
                        out[k] += xy * c
        return tuple(out)

    def power(self, a, k: int) -> tuple:
        out = self.unit
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def evaluate_poly(self, p, a) -> tuple:
        """p(a) for a univariate coefficient tuple ``p`` (low degree first)."""
        out = self.zero()
        for c in reversed(up.trim(p)):
            out = self.add(self.mul(out, a), self.scale(self.unit, c))
        return out

    def aug(self, a) -> Fraction:
        if self.augmentation is None:
            raise ValueError("algebra carries no augmentation")
        return sum((x * y for x, y in zip(self.augmentation, a)), Fraction(0))

    # ----- checks ---------------------------------------------------------
    def is_commutative(self) -> bool:
        return all(self.mult[i][j] == self.mult[j][i]
                   for i in range(self.dim) for j in range(i))

    def is_associative(self, limit: int | None = None) -> bool:
        idx = range(self.dim if limit is None else min(self.dim, limit))
        for i, j, k in product(idx, idx, idx):
            e = self.basis_vector
            if self.mul(self.mult[i][j], e(k)) != self.mul(e(i), self.mult[j][k]):
                return False
        return True

    def is_unital(self) -> bool:
        return all(self.mul(self.unit, self.basis_vector(i)) == self.basis_vector(i)
                   == self.mul(self.basis_vector(i), self.unit) for i in range(self.dim))

    def augmentation_is_multiplicative(self) -> bool:
        if self.augmentation is None:
            return False
        if self.aug(self.unit) != 1:
            return False
        return all(self.aug(self.mult[i][j]) == self.augmentation[i] * self.augmentation[j]
                   for i in range(self.dim) for j in range(self.dim))

    def validate(self):
        if not self.is_unital():
            raise IntegrityError("unit vector is not a two-sided unit")
        if not self.is_associative(limit=12):
            raise IntegrityError("multiplication is not associative")

    # ----- linear algebra -----------------------------------------------
    def left_matrix(self, a) -> ExactMatrix:
        return ExactMatrix.from_columns([self.mul(a, self.basis_vector(j))
                                         for j in range(self.dim)], rows=self.dim)

    def ideal_dimension(self, a) -> int:
        """dim of the principal ideal a*A."""
        return self.left_matrix(a).rank()

    def min_poly(self, a) -> tuple:
        """Monic minimal polynomial of ``a`` (Krylov sequence of powers)."""
        powers = [self.unit]
        while True:
            nxt = self.mul(powers[-1], a)
            mat = ExactMatrix.from_columns(powers, rows=self.dim)
            sol = mat.solve(nxt)
            if sol is not None:
                return tuple(-c for c in sol) + (Fraction(1),)
            powers.append(nxt)

    # ----- serialization --------------------------------------------------
    def to_json(self) -> dict:
        out = {"basis": list(self.labels),
               "mult": [[[format_coeff(c) for c in v] for v in row] for row in self.mult],
               "unit": [format_coeff(c) for c in self.unit]}
        if self.augmentation is not None:
            out["augmentation"] = [format_coeff(c) for c in self.augmentation]
        return out

    @classmethod
    def from_json(cls, data) -> "FinDimAlgebra":
        alg = cls(tuple(data["basis"]), data["mult"], data["unit"], data.get("augmentation"))
        alg.validate()
        return alg

    # ----- standard examples ----------------------------------------------
    @classmethod
    def truncated_polynomial(cls, modulus, var: str = "t", augmentation_point=None):
        """Q[var]/(modulus) in the basis 1, var, ..., var^{d-1}."""
        modulus = up.monic(modulus)
        d = up.degree(modulus)
        labels = tuple("1" if k == 0 else var if k == 1 else f"{var}^{k}" for k in range(d))

        def reduce(k):
            _, r = up.divmod_((0,) * k + (1,), modulus)
            return tuple(r) + (Fraction(0),) * (d - len(r))

        table = [[reduce(i + j) for j in range(d)] for i in range(d)]
        unit = reduce(0)
        aug = None
        if augmentation_point is not None:
            aug = tuple(parse_coeff(augmentation_point) ** k for k in range(d))
        return cls(labels, table, unit, aug)

    @classmethod
    def cyclic(cls, n: int):
        """Q[t]/(t^n - 1) with augmentation t -> 1."""
        return cls.truncated_polynomial((-1,) + (0,) * (n - 1) + (1,), "t", 1)

    @classmethod
    def dual_numbers(cls):
        return cls.truncated_polynomial((0, 0, 1), "eps", 0)

    @classmethod
    def rationals(cls):
        return cls(("1",), [[(1,)]], (1,), (1,))
