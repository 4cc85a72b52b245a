"""Exact multivariate (Laurent) polynomials over Z or Q.

A :class:`Ring` fixes the variable names, the coefficient domain and which
variables are invertible.  Elements are :class:`LaurentPoly` values: a finite
map from exponent tuples to nonzero rational coefficients.  Values are never
mutated after construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from astk.errors import DomainError, RingMismatch

Exp = tuple  # tuple[int, ...]

MODES = ("poly", "laurent", "mixed")
DOMAINS = ("Q", "Z")


def parse_coeff(value) -> Fraction:
    """Read a coefficient from an int, Fraction or a ``"num/den"`` string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"cannot use {value!r} as an exact coefficient")


def format_coeff(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True)
class Ring:
    """Ambient ring descriptor.

    ``mode="laurent"`` inverts every variable, ``mode="mixed"`` inverts only
    the variables listed in ``units`` (e.g. Q[e1, e2^{+-1}]).
    """

    variables: tuple
    mode: str = "poly"
    coeffs: str = "Q"
    units: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        if self.mode not in MODES:
            raise ValueError(f"unknown ring mode {self.mode!r}")
        if self.coeffs not in DOMAINS:
            raise ValueError(f"unknown coefficient domain {self.coeffs!r}")
        n = len(self.variables)
        if self.mode == "laurent":
            units = tuple(range(n))
        elif self.mode == "poly":
            if self.units:
                raise ValueError("polynomial rings have no inverted variables")
            units = ()
        else:
            units = tuple(sorted(set(self.units)))
            if any(not 0 <= i < n for i in units):
                raise ValueError(f"unit index out of range: {self.units}")
            if len(units) == n:
                object.__setattr__(self, "mode", "laurent")
            elif not units:
                object.__setattr__(self, "mode", "poly")
        object.__setattr__(self, "units", units)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def is_polynomial(self) -> bool:
        return not self.units

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"{name!r} is not a variable of {self}") from None

    def zero_exp(self) -> Exp:
        return (0,) * self.nvars

    def unit_exp(self, i: int) -> Exp:
        return tuple(1 if j == i else 0 for j in range(self.nvars))

    # element constructors
    def zero(self) -> "LaurentPoly":
        return LaurentPoly(self, {}, _trusted=True)

    def one(self) -> "LaurentPoly":
        return self.const(1)

    def const(self, c) -> "LaurentPoly":
        return LaurentPoly(self, {self.zero_exp(): c})

    def gen(self, which) -> "LaurentPoly":
        i = which if isinstance(which, int) else self.index(which)
        return LaurentPoly(self, {self.unit_exp(i): 1})

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exp, coeff=1) -> "LaurentPoly":
        return LaurentPoly(self, {tuple(exp): coeff})

    def __call__(self, terms) -> "LaurentPoly":
        if isinstance(terms, LaurentPoly):
            return terms.change_ring(self)
        if isinstance(terms, Mapping):
            return LaurentPoly(self, terms)
        return self.const(terms)

    def with_coeffs(self, coeffs: str) -> "Ring":
        return Ring(self.variables, self.mode, coeffs, self.units)

    def to_json(self) -> dict:
        out = {"variables": list(self.variables), "mode": self.mode, "coeffs": self.coeffs}
        if self.mode == "mixed":
            out["units"] = list(self.units)
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "Ring":
        return cls(tuple(data["variables"]), data.get("mode", "poly"),
                   data.get("coeffs", "Q"), tuple(data.get("units", ())))

    def __str__(self):
        names = []
        for i, v in enumerate(self.variables):
            names.append(f"{v}^+-1" if i in self.units else v)
        return f"{'ZZ' if self.coeffs == 'Z' else 'QQ'}[{', '.join(names)}]"


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


def grevlex_key(exp):
    return (sum(exp), tuple(-e for e in reversed(exp)))


class LaurentPoly:
    """An element of a :class:`Ring`.  Immutable; arithmetic returns new values."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping | None = None, *, _trusted: bool = False):
        self.ring = ring
        self._hash = None
        if _trusted:
            self._terms = terms
            return
        clean = {}
        n = ring.nvars
        integral = ring.coeffs == "Z"
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n:
                raise ValueError(f"exponent {exp} has wrong length for {ring}")
            c = parse_coeff(c)
            if not c:
                continue
            if integral and c.denominator != 1:
                raise DomainError(f"non-integral coefficient {c} in {ring}")
            for i, e in enumerate(exp):
                if e < 0 and i not in ring.units:
                    raise DomainError(
                        f"negative exponent of {ring.variables[i]} in {ring}")
            clean[exp] = clean.get(exp, 0) + c
            if not clean[exp]:
                del clean[exp]
        self._terms = clean

    # ----- basic access -------------------------------------------------
    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def coeff(self, exp) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def constant_coeff(self) -> Fraction:
        return self.coeff(self.ring.zero_exp())

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degree(self, var) -> int:
        i = var if isinstance(var, int) else self.ring.index(var)
        return max((e[i] for e in self._terms), default=-1)

    def min_exponents(self) -> Exp:
        n = self.ring.nvars
        if not self._terms:
            return (0,) * n
        return tuple(min(e[i] for e in self._terms) for i in range(n))

    def max_exponents(self) -> Exp:
        n = self.ring.nvars
        if not self._terms:
            return (0,) * n
        return tuple(max(e[i] for e in self._terms) for i in range(n))

    def sorted_terms(self, key=grevlex_key) -> list:
        """Terms in descending order (the canonical serialization order)."""
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading(self, key=grevlex_key):
        exp = max(self._terms, key=key)
        return exp, self._terms[exp]

    # ----- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.ring != self.ring:
                raise RingMismatch(f"{other.ring} vs {self.ring}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.ring, {e: -c for e, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = _add_exp(e1, e2)
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return LaurentPoly(self.ring, out, _trusted=True)

    __rmul__ = __mul__

    def scale(self, c) -> "LaurentPoly":
        c = parse_coeff(c)
        if not c:
            return self.ring.zero()
        if self.ring.coeffs == "Z" and c.denominator != 1:
            raise DomainError("cannot scale by a fraction over Z")
        return LaurentPoly(self.ring, {e: c * v for e, v in self._terms.items()}, _trusted=True)

    def shift(self, exp) -> "LaurentPoly":
        """Multiply by the monomial ``x^exp``."""
        exp = tuple(exp)
        out = {}
        units = self.ring.units
        for e, c in self._terms.items():
            e2 = _add_exp(e, exp)
            if any(v < 0 and i not in units for i, v in enumerate(e2)):
                raise DomainError("shift leaves the polynomial ring")
            out[e2] = c
        return LaurentPoly(self.ring, out, _trusted=True)

    def inverse(self) -> "LaurentPoly":
        """Inverse of a unit: a nonzero constant (over Q) times an invertible monomial."""
        if len(self._terms) != 1:
            raise DomainError(f"{self} is not a unit monomial")
        (exp, c), = self._terms.items()
        if self.ring.coeffs == "Z" and abs(c) != 1:
            raise DomainError(f"{c} is not a unit in Z")
        return LaurentPoly(self.ring, {tuple(-e for e in exp): 1 / c})

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # ----- maps ---------------------------------------------------------
    def evaluate(self, point) -> Fraction:
        if isinstance(point, Mapping):
            point = [point[v] for v in self.ring.variables]
        point = [parse_coeff(p) for p in point]
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = c
            for p, e in zip(point, exp):
                if e:
                    term *= p ** e
            total += term
        return total

    def substitute(self, images: Sequence["LaurentPoly"], target: Ring | None = None,
                   inverses: Sequence | None = None) -> "LaurentPoly":
        """Apply the ring map sending variable i to ``images[i]``.

        Negative exponents use ``inverses[i]`` if given, otherwise the image
        must itself be a unit monomial.
        """
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        if target is None:
            target = images[0].ring if images else self.ring
        pos_cache: list = [dict() for _ in images]
        neg_cache: list = [dict() for _ in images]

        def power(i, e):
            if e >= 0:
                cache = pos_cache[i]
                if e not in cache:
                    cache[e] = target(images[i]) ** e
                return cache[e]
            cache = neg_cache[i]
            if -e not in cache:
                inv = inverses[i] if inverses is not None and inverses[i] is not None \
                    else target(images[i]).inverse()
                cache[-e] = target(inv) ** (-e)
            return cache[-e]

        total = target.zero()
        for exp, c in self._terms.items():
            term = target.const(c)
            for i, e in enumerate(exp):
                if e:
                    term = term * power(i, e)
            total = total + term
        return total

    def change_ring(self, ring: Ring) -> "LaurentPoly":
        """Reinterpret the same terms in a compatible ring (same variable count)."""
        if ring == self.ring:
            return self
        if ring.nvars != self.ring.nvars:
            raise RingMismatch(f"cannot move {self.ring} elements into {ring}")
        return LaurentPoly(ring, self._terms)

    def to_rationals(self) -> "LaurentPoly":
        return self.change_ring(self.ring.with_coeffs("Q"))

    def clear_denominators(self) -> tuple:
        """Return ``(d, p)`` with ``d`` a positive integer and ``d*self == p`` integral."""
        from math import lcm
        d = 1
        for c in self._terms.values():
            d = lcm(d, c.denominator)
        return d, self.scale(d)

    def map_exponents(self, fn, ring: Ring | None = None) -> "LaurentPoly":
        ring = ring or self.ring
        out: dict = {}
        for e, c in self._terms.items():
            e2 = tuple(fn(e))
            out[e2] = out.get(e2, 0) + c
        return LaurentPoly(ring, out)

    def derivative(self, var) -> "LaurentPoly":
        i = var if isinstance(var, int) else self.ring.index(var)
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i]
        return LaurentPoly(self.ring, out)

    # ----- serialization ------------------------------------------------
    def to_json(self) -> list:
        return [[list(e), format_coeff(c)] for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, ring: Ring, data: Iterable) -> "LaurentPoly":
        return cls(ring, _sum_terms((tuple(e), parse_coeff(c)) for e, c in data))

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" if e > 0 else f"{v}^({e})"
                for v, e in zip(self.ring.variables, exp) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _sum_terms(pairs) -> dict:
    out: dict = {}
    for e, c in pairs:
        out[e] = out.get(e, 0) + c
    return out


def poly_sum(values: Iterable[LaurentPoly], ring: Ring) -> LaurentPoly:
    out: dict = {}
    for v in values:
        if v.ring != ring:
            raise RingMismatch(f"{v.ring} vs {ring}")
        for e, c in v.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return LaurentPoly(ring, out, _trusted=True)


@dataclass(frozen=True)
class IdealGens:
    """Generators of an ideal, all living in one ring."""

    ring: Ring
    generators: tuple

    def __post_init__(self):
        gens = tuple(self.generators)
        for g in gens:
            if not isinstance(g, LaurentPoly) or g.ring != self.ring:
                raise RingMismatch(f"generator {g!r} is not in {self.ring}")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def of(cls, gens: Sequence[LaurentPoly], ring: Ring | None = None) -> "IdealGens":
        gens = list(gens)
        if ring is None:
            if not gens:
                raise ValueError("ring is required for an empty generator list")
            ring = gens[0].ring
        return cls(ring, tuple(gens))

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __getitem__(self, i):
        return self.generators[i]

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.generators)

    def to_json(self) -> dict:
        out = self.ring.to_json()
        out["generators"] = [g.to_json() for g in self.generators]
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "IdealGens":
        ring = Ring.from_json(data)
        return cls(ring, tuple(LaurentPoly.from_json(ring, g) for g in data.get("generators", [])))
