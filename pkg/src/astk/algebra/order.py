"""Monomial term orders.

An order is turned into a sort key on exponent tuples; the larger key is the
larger monomial.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

KINDS = ("grevlex", "lex", "elimination")


def _grevlex(exp):
    return (sum(exp), tuple(-e for e in reversed(exp)))


@dataclass(frozen=True)
class TermOrder:
    """``kind`` is one of grevlex, lex or elimination.

    ``permutation[k]`` is the ring variable index that plays the role of the
    k-th variable for the order.  Elimination orders compare grevlex block by
    block; variables in earlier blocks are eliminated first.
    """

    kind: str = "grevlex"
    blocks: tuple = ()
    permutation: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown term order {self.kind!r}")
        object.__setattr__(self, "blocks", tuple(self.blocks))
        object.__setattr__(self, "permutation", tuple(self.permutation))
        if self.kind == "elimination" and not self.blocks:
            raise ValueError("elimination order needs block sizes")
        if self.permutation and sorted(self.permutation) != list(range(len(self.permutation))):
            raise ValueError(f"not a permutation: {self.permutation}")

    def key(self, nvars: int):
        perm = self.permutation
        if perm and len(perm) != nvars:
            raise ValueError("permutation length does not match the ring")
        if self.kind == "elimination" and sum(self.blocks) != nvars:
            raise ValueError(f"blocks {self.blocks} do not cover {nvars} variables")

        def permuted(exp):
            return tuple(exp[i] for i in perm) if perm else exp

        if self.kind == "grevlex":
            return lambda exp: _grevlex(permuted(exp))
        if self.kind == "lex":
            return permuted
        cuts = []
        start = 0
        for b in self.blocks:
            cuts.append((start, start + b))
            start += b

        def elim(exp):
            exp = permuted(exp)
            return tuple(_grevlex(exp[a:b]) for a, b in cuts)
        return elim

    def to_json(self) -> dict:
        out = {"kind": self.kind, "permutation": list(self.permutation)}
        if self.blocks:
            out["blocks"] = list(self.blocks)
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "TermOrder":
        return cls(data.get("kind", "grevlex"), tuple(data.get("blocks", ())),
                   tuple(data.get("permutation", ())))


GREVLEX = TermOrder()
LEX = TermOrder("lex")
