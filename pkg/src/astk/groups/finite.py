"""Finite groups given by a multiplication table and a rational character table."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from math import lcm
from pathlib import Path

from astk.errors import GroupLoadError, UnsupportedGroup


class IrrationalCharacter(GroupLoadError, UnsupportedGroup):
    """A character value is not a rational number."""


@dataclass(frozen=True)
class Character:
    name: str
    dim: int
    values: tuple  # one Fraction per class

    def to_json(self) -> dict:
        return {"name": self.name, "dim": self.dim,
                "values": [f"{v.numerator}/{v.denominator}" for v in self.values]}


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    name: str
    elements: tuple
    multiplication: tuple
    classes: tuple
    characters: tuple
    power_maps: dict = field(default_factory=dict)
    split: bool = True
    identity: int = 0
    inverses: tuple = ()
    class_of: tuple = ()

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def nclasses(self) -> int:
        return len(self.classes)

    def mul(self, a: int, b: int) -> int:
        return self.multiplication[a][b]

    def power(self, g: int, k: int) -> int:
        x = self.identity
        for _ in range(k):
            x = self.multiplication[x][g]
        return x

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.multiplication[x][g]
            k += 1
        return k

    def exponent(self) -> int:
        out = 1
        for g in range(self.order):
            out = lcm(out, self.element_order(g))
        return out

    @property
    def identity_class(self) -> int:
        return self.class_of[self.identity]

    @property
    def trivial_index(self) -> int:
        for i, ch in enumerate(self.characters):
            if all(v == 1 for v in ch.values):
                return i
        raise GroupLoadError("trivial-character", "no trivial character")

    def class_sizes(self) -> tuple:
        return tuple(len(c) for c in self.classes)

    def inner(self, a, b) -> Fraction:
        """Class-weighted inner product of two class functions (rational values)."""
        total = Fraction(0)
        for size, x, y in zip(self.class_sizes(), a, b):
            total += size * x * y
        return total / self.order

    def power_map(self, ell: int) -> tuple:
        if ell < 1:
            raise ValueError("power map index must be positive")
        if not self.power_maps:
            raise UnsupportedGroup(
                f"group {self.name!r} has no power_maps; Adams operations need them")
        e = self.exponent()
        key = ell % e or e
        if key not in self.power_maps:
            raise UnsupportedGroup(f"group {self.name!r} has no power map for {ell}")
        return self.power_maps[key]

    def decompose(self, values) -> tuple:
        """Coefficients of a virtual character in the basis of table rows."""
        out = []
        for ch in self.characters:
            out.append(self.inner(values, ch.values) / self.inner(ch.values, ch.values))
        recon = [sum(c * ch.values[k] for c, ch in zip(out, self.characters))
                 for k in range(self.nclasses)]
        if recon != [Fraction(v) for v in values]:
            raise UnsupportedGroup("class function is not in the span of the character table")
        return tuple(out)

    def to_json(self) -> dict:
        data = {"name": self.name, "elements": list(self.elements),
                "multiplication": [list(r) for r in self.multiplication],
                "classes": [list(c) for c in self.classes],
                "characters": [c.to_json() for c in self.characters]}
        if self.power_maps:
            data["power_maps"] = {str(k): list(v) for k, v in sorted(self.power_maps.items())}
        return data

    @classmethod
    def from_json(cls, data) -> "FiniteGroup":
        return _validate(data)


def _fail(invariant: str, message: str):
    raise GroupLoadError(invariant, message)


def _parse_value(raw) -> Fraction:
    if isinstance(raw, bool):
        raise IrrationalCharacter("character-rational", f"bad character value {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str):
        try:
            return Fraction(raw.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise IrrationalCharacter(
        "character-rational", f"character value {raw!r} is not a rational number")


def _validate(data) -> FiniteGroup:
    if not isinstance(data, dict):
        _fail("schema", "group file must hold a JSON object")
    for key in ("name", "elements", "multiplication", "classes", "characters"):
        if key not in data:
            _fail("schema", f"missing field {key!r}")
    elements = data["elements"]
    if not isinstance(elements, list) or not elements:
        _fail("schema", "elements must be a non-empty list")
    n = len(elements)
    table = data["multiplication"]
    if (not isinstance(table, list) or len(table) != n
            or any(not isinstance(r, list) or len(r) != n for r in table)):
        _fail("closure", f"multiplication must be an {n}x{n} table")
    for row in table:
        for x in row:
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n:
                _fail("closure", f"table entry {x!r} is not an element index")
    table = tuple(tuple(r) for r in table)

    ident = [e for e in range(n)
             if all(table[e][g] == g and table[g][e] == g for g in range(n))]
    if not ident:
        _fail("identity", "no two-sided identity element")
    e = ident[0]
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                if table[ab][c] != table[a][table[b][c]]:
                    _fail("associativity",
                          f"({elements[a]}*{elements[b]})*{elements[c]} != "
                          f"{elements[a]}*({elements[b]}*{elements[c]}) "
                          f"at triple ({a}, {b}, {c})")
    inverses = []
    for a in range(n):
        inv = [b for b in range(n) if table[a][b] == e and table[b][a] == e]
        if not inv:
            _fail("inverses", f"element {elements[a]!r} has no inverse")
        inverses.append(inv[0])

    classes = data["classes"]
    if not isinstance(classes, list) or not classes:
        _fail("schema", "classes must be a non-empty list")
    seen = sorted(x for c in classes for x in c)
    if seen != list(range(n)):
        _fail("classes-partition", "classes must partition the element indices")
    class_of = [0] * n
    for i, c in enumerate(classes):
        for g in c:
            class_of[g] = i
    for i, c in enumerate(classes):
        g = c[0]
        orbit = {table[table[h][g]][inverses[h]] for h in range(n)}
        if orbit != set(c):
            _fail("classes-conjugacy", f"class {i} is not the conjugacy class of {elements[g]!r}")
    classes = tuple(tuple(c) for c in classes)

    chars = data["characters"]
    if not isinstance(chars, list):
        _fail("schema", "characters must be a list")
    parsed = []
    for ch in chars:
        if not isinstance(ch, dict) or not {"name", "dim", "values"} <= set(ch):
            _fail("schema", "each character needs name, dim and values")
        values = ch["values"]
        if not isinstance(values, list) or len(values) != len(classes):
            _fail("character-length",
                  f"character {ch.get('name')!r} needs one value per class")
        vals = tuple(_parse_value(v) for v in values)
        if vals[class_of[e]] != ch["dim"]:
            _fail("character-dim",
                  f"character {ch['name']!r}: dim {ch['dim']} != value at identity")
        parsed.append(Character(str(ch["name"]), int(ch["dim"]), vals))

    # Rationally irreducible characters are counted by classes of cyclic subgroups.
    rational = _rational_classes(table, e, n, inverses, class_of)
    if len(parsed) != rational:
        _fail("character-count",
              f"{len(parsed)} characters for {rational} rational conjugacy classes")
    sizes = [len(c) for c in classes]

    def inner(a, b):
        return sum(s * x * y for s, x, y in zip(sizes, a, b)) / Fraction(n)

    for i in range(len(parsed)):
        if inner(parsed[i].values, parsed[i].values) == 0:
            _fail("orthogonality", f"character {parsed[i].name!r} has zero norm")
        for j in range(i):
            if inner(parsed[i].values, parsed[j].values) != 0:
                _fail("orthogonality",
                      f"characters {parsed[j].name!r} and {parsed[i].name!r} are not orthogonal")
    trivial = [c for c in parsed if all(v == 1 for v in c.values)]
    if len(trivial) != 1:
        _fail("trivial-character", "exactly one all-ones character row is required")
    split = (sum(c.dim ** 2 for c in parsed) == n
             and all(inner(c.values, c.values) == 1 for c in parsed))

    power_maps = {}
    raw_pm = data.get("power_maps") or {}
    if not isinstance(raw_pm, dict):
        _fail("schema", "power_maps must be an object")
    for key, images in raw_pm.items():
        ell = int(key)
        expect = []
        for c in classes:
            x = e
            for _ in range(ell):
                x = table[x][c[0]]
            expect.append(class_of[x])
        if list(images) != expect:
            _fail("power-maps", f"power map {ell} disagrees with the multiplication table")
        power_maps[ell] = tuple(expect)

    return FiniteGroup(str(data["name"]), tuple(str(x) for x in elements), table, classes,
                       tuple(parsed), power_maps, split, e, tuple(inverses), tuple(class_of))


def _rational_classes(table, e, n, inverses, class_of) -> int:
    """Number of classes of g under conjugation and g ~ g^k with gcd(k, ord g) = 1."""
    from math import gcd

    def power(g, k):
        x = e
        for _ in range(k):
            x = table[x][g]
        return x

    labels = {}
    count = 0
    for g in range(n):
        c = class_of[g]
        if c in labels:
            continue
        order = 1
        x = g
        while x != e:
            x = table[x][g]
            order += 1
        for k in range(1, order + 1):
            if gcd(k, order) == 1:
                labels.setdefault(class_of[power(g, k)], count)
        count += 1
    return count


def load_group_file(path) -> FiniteGroup:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except FileNotFoundError:
        raise GroupLoadError("schema", f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise GroupLoadError("json", f"malformed JSON in {path}: {exc}") from None
    return _validate(data)


BUNDLED = ("c2", "c3", "d4", "s3", "trivial")


def bundled_group(name: str) -> FiniteGroup:
    if name not in BUNDLED:
        raise UnsupportedGroup(f"no bundled group {name!r}; have {', '.join(BUNDLED)}")
    text = resources.files("astk.groups").joinpath("data", f"{name}.json").read_text()
    return _validate(json.loads(text))


def product_group(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Direct product; characters are the outer products of the two tables."""
    pairs = [(a, b) for a in range(g.order) for b in range(h.order)]
    index = {p: k for k, p in enumerate(pairs)}
    table = [[index[(g.mul(a, c), h.mul(b, d))] for (c, d) in pairs] for (a, b) in pairs]
    classes = [[index[(a, b)] for a in ca for b in cb] for ca in g.classes for cb in h.classes]
    chars = []
    for x in g.characters:
        for y in h.characters:
            chars.append({"name": f"{x.name}.{y.name}", "dim": x.dim * y.dim,
                          "values": [f"{u * v}" for u in x.values for v in y.values]})
    data = {"name": f"{g.name}x{h.name}",
            "elements": [f"({g.elements[a]},{h.elements[b]})" for a, b in pairs],
            "multiplication": table, "classes": classes, "characters": chars}
    return _validate(data)
