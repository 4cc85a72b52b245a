"""Group specifications accepted by the catalog."""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from astk.errors import UnsupportedGroup, UsageError
from astk.groups.finite import BUNDLED, FiniteGroup, bundled_group, load_group_file


@dataclass(frozen=True)
class SplitTorus:
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise UnsupportedGroup("torus rank must be >= 1")

    @property
    def label(self) -> str:
        return "gm" if self.rank == 1 else f"t{self.rank}"


@dataclass(frozen=True)
class GL:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise UnsupportedGroup("GL(n) needs n >= 1")

    @property
    def label(self) -> str:
        return f"gl{self.n}"


@dataclass(frozen=True)
class SL2:
    @property
    def label(self) -> str:
        return "sl2"


@dataclass(frozen=True)
class Mu:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise UnsupportedGroup("mu_n needs n >= 1")

    @property
    def label(self) -> str:
        return f"mu{self.n}"


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if len(self.factors) < 2:
            raise UnsupportedGroup("a product needs at least two factors")

    @property
    def label(self) -> str:
        return "*".join(group_label(f) for f in self.factors)


def group_label(g) -> str:
    if isinstance(g, FiniteGroup):
        return g.name
    return g.label


def is_finite(g) -> bool:
    return isinstance(g, (FiniteGroup, Mu))


def parse_group_spec(text: str):
    """Parse ``gm``, ``t2``, ``gl3``, ``sl2``, ``mu5``, a bundled name such as
    ``s3``, a path to a group JSON file, or a ``*``-separated product."""
    text = text.strip()
    if "*" in text:
        return Product(tuple(parse_group_spec(p) for p in text.split("*")))
    low = text.lower()
    if low in ("gm", "g_m"):
        return SplitTorus(1)
    if low == "sl2":
        return SL2()
    m = re.fullmatch(r"t(\d+)", low)
    if m:
        return SplitTorus(int(m.group(1)))
    m = re.fullmatch(r"gl_?(\d+)", low)
    if m:
        return GL(int(m.group(1)))
    m = re.fullmatch(r"mu_?(\d+)", low)
    if m:
        return Mu(int(m.group(1)))
    if low in BUNDLED:
        return bundled_group(low)
    if low.endswith(".json") or Path(text).exists():
        return load_group_file(text)
    raise UsageError(f"unknown group specification {text!r}")
