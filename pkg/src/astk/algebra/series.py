"""Truncated multivariate power series over Q.

Every value carries its precision N: terms of total degree > N are dropped.
Combining values of different precision keeps the smaller one and records the
inputs' precisions in ``mixed_from``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from types import MappingProxyType
from typing import Sequence

from astk.algebra.poly import LaurentPoly, format_coeff, parse_coeff
from astk.errors import DomainError, RingMismatch


def _mul_terms(a: dict, b: dict, prec: int) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        d1 = sum(e1)
        for e2, c2 in b.items():
            if d1 + sum(e2) > prec:
                continue
            e = tuple(x + y for x, y in zip(e1, e2))
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                del out[e]
    return out


@dataclass(frozen=True, eq=False)
class TruncSeries:
    variables: tuple
    precision: int
    terms: object = field(default_factory=dict)
    mixed_from: tuple = ()

    def __post_init__(self):
        if self.precision < 0:
            raise ValueError("precision must be >= 0")
        n = len(self.variables)
        clean = {}
        for e, c in dict(self.terms).items():
            e = tuple(int(x) for x in e)
            if len(e) != n or any(x < 0 for x in e):
                raise ValueError(f"bad exponent {e}")
            c = parse_coeff(c)
            if c and sum(e) <= self.precision:
                clean[e] = clean.get(e, 0) + c
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "terms", MappingProxyType({e: c for e, c in clean.items() if c}))

    # constructors
    @classmethod
    def zero(cls, variables, precision):
        return cls(tuple(variables), precision, {})

    @classmethod
    def one(cls, variables, precision):
        return cls.const(variables, precision, 1)

    @classmethod
    def const(cls, variables, precision, c):
        return cls(tuple(variables), precision, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables, precision, name):
        variables = tuple(variables)
        i = variables.index(name)
        return cls(variables, precision,
                   {tuple(1 if j == i else 0 for j in range(len(variables))): 1})

    @classmethod
    def from_poly(cls, p: LaurentPoly, precision: int):
        if not p.ring.is_polynomial:
            raise DomainError("power series need nonnegative exponents")
        return cls(p.ring.variables, precision, dict(p.items()))

    # access
    def coeff(self, exp) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coeff((0,) * len(self.variables))

    def order(self) -> int:
        """Lowest total degree present (precision+1 for the zero series)."""
        return min((sum(e) for e in self.terms), default=self.precision + 1)

    def coefficients(self) -> list:
        """Univariate convenience: coefficients of u^0..u^N."""
        if len(self.variables) != 1:
            raise ValueError("coefficients() is for univariate series")
        return [self.coeff((k,)) for k in range(self.precision + 1)]

    def truncate(self, m: int) -> "TruncSeries":
        if m > self.precision:
            raise ValueError(f"cannot raise precision {self.precision} to {m}")
        return TruncSeries(self.variables, m, dict(self.terms), self.mixed_from)

    def _align(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = TruncSeries.const(self.variables, self.precision, other)
        if not isinstance(other, TruncSeries):
            return None, None, None
        if other.variables != self.variables:
            raise RingMismatch(f"{other.variables} vs {self.variables}")
        prec = min(self.precision, other.precision)
        mixed = ()
        if self.precision != other.precision:
            mixed = tuple(sorted({self.precision, other.precision}))
        return other, prec, mixed

    def __add__(self, other):
        other, prec, mixed = self._align(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return TruncSeries(self.variables, prec, out, mixed)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.variables, self.precision,
                           {e: -c for e, c in self.terms.items()}, self.mixed_from)

    def __sub__(self, other):
        other, prec, mixed = self._align(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other, prec, mixed = self._align(other)
        if other is None:
            return NotImplemented
        return TruncSeries(self.variables, prec,
                           _mul_terms(dict(self.terms), dict(other.terms), prec), mixed)

    __rmul__ = __mul__

    def scale(self, c) -> "TruncSeries":
        c = parse_coeff(c)
        return TruncSeries(self.variables, self.precision,
                           {e: c * v for e, v in self.terms.items()}, self.mixed_from)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = TruncSeries.one(self.variables, self.precision)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "TruncSeries":
        """1/f for f with nonzero constant term: c^{-1} * sum (1 - f/c)^k."""
        c = self.constant_term()
        if not c:
            raise DomainError("series with zero constant term is not invertible")
        h = TruncSeries.one(self.variables, self.precision) - self.scale(1 / c)
        total = TruncSeries.one(self.variables, self.precision)
        power = total
        for _ in range(self.precision):
            power = power * h
            total = total + power
        return total.scale(1 / c)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.variables == other.variables and self.precision == other.precision
                and dict(self.terms) == dict(other.terms))

    def __hash__(self):
        return hash((self.variables, self.precision, frozenset(self.terms.items())))

    def __repr__(self):
        body = " + ".join(
            f"{c}*" + "*".join(f"{v}^{e}" for v, e in zip(self.variables, exp) if e)
            if any(exp) else str(c)
            for exp, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0])))
        return f"TruncSeries({body or '0'} + O({self.precision + 1}))"

    def to_json(self) -> dict:
        return {"variables": list(self.variables), "precision": self.precision,
                "terms": [[list(e), format_coeff(c)]
                          for e, c in sorted(self.terms.items(),
                                             key=lambda t: (sum(t[0]), t[0]))]}


def series_log(f: TruncSeries) -> TruncSeries:
    """log f = sum_{k>=1} (-1)^{k+1} (f-1)^k / k, for f with constant term 1."""
    if f.constant_term() != 1:
        raise DomainError("series_log needs constant term 1")
    h = f - 1
    total = TruncSeries.zero(f.variables, f.precision)
    power = TruncSeries.one(f.variables, f.precision)
    for k in range(1, f.precision + 1):
        power = power * h
        total = total + power.scale(Fraction((-1) ** (k + 1), k))
    return total


def series_exp(f: TruncSeries) -> TruncSeries:
    if f.constant_term() != 0:
        raise DomainError("series_exp needs constant term 0")
    total = TruncSeries.one(f.variables, f.precision)
    power = total
    for k in range(1, f.precision + 1):
        power = power * f
        total = total + power.scale(Fraction(1, factorial(k)))
    return total


def series_compose(f: TruncSeries, g) -> TruncSeries:
    """Substitute ``g`` for the variables of ``f``.

    ``g`` is a single series (``f`` univariate) or one series per variable of
    ``f``; all of them must have zero constant term.
    """
    gs = [g] if isinstance(g, TruncSeries) else list(g)
    if len(gs) != len(f.variables):
        raise ValueError("need one substitution per variable of f")
    for s in gs:
        if s.constant_term() != 0:
            raise DomainError("substituted series must have zero constant term")
        if s.variables != gs[0].variables:
            raise RingMismatch("substituted series must share variables")
    prec = min([f.precision] + [s.precision for s in gs])
    precs = {f.precision} | {s.precision for s in gs}
    mixed = tuple(sorted(precs)) if len(precs) > 1 else ()
    gs = [s.truncate(prec) for s in gs]
    variables = gs[0].variables
    powers = [[TruncSeries.one(variables, prec)] for _ in gs]
    total = {}
    for exp, c in f.terms.items():
        if sum(exp) > prec:
            continue
        term = TruncSeries.const(variables, prec, c)
        for i, e in enumerate(exp):
            while len(powers[i]) <= e:
                powers[i].append(powers[i][-1] * gs[i])
            term = term * powers[i][e]
        for e2, c2 in term.terms.items():
            total[e2] = total.get(e2, 0) + c2
    return TruncSeries(variables, prec, total, mixed)


def log1p_power(j: int, precision: int, variable: str = "u") -> TruncSeries:
    """log(1+u)^j truncated at the given precision."""
    u = TruncSeries.var((variable,), precision, variable)
    return series_log(u + 1) ** j
