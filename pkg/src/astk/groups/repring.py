"""Representation rings R(G) of catalog groups.

Models:

* ``laurent-invariant``: a Laurent ring in character variables with a Weyl
  group acting by permutations (tori have the trivial Weyl group, GL(n) has S_n);
* ``polynomial``: SL2 as Z[c], c the class of the standard representation;
* ``cyclic-quotient``: mu_n as Z[t]/(t^n - 1), normal form by reducing exponents;
* ``finite-free``: a finite group, free on its irreducible characters with
  structure constants from products of characters;
* ``mixed``: products of the non-finite models above.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb

from astk.algebra.linalg import ExactMatrix
from astk.algebra.poly import IdealGens, LaurentPoly, Ring
from astk.errors import IntegrityError, RingMismatch, UnsupportedGroup, UnsupportedOperation
from astk.groups.finite import FiniteGroup, product_group
from astk.groups.spec import GL, SL2, Mu, Product, SplitTorus, group_label
from astk.groups.symmetric import elementary, power_sum_in_c, symmetric_to_c


@dataclass(frozen=True, eq=False)
class RepRingPresentation:
    group: object
    model: str
    ring: Ring                      # carrier ring, integer coefficients
    relations: tuple = ()           # extra relations (t^n - 1 for mu_n)
    moduli: tuple = ()              # per variable: n if exponents live in Z/n, else 0
    weyl: tuple = ()                # generating permutations of the variables
    aug_point: tuple = ()           # evaluation point computing the augmentation
    ideal_gens: tuple = ()
    named: dict = field(default_factory=dict)   # distinguished generators
    adams_kinds: tuple = ()         # per variable: "power" or "sl2"
    finite: FiniteGroup | None = None
    structure: tuple = ()           # finite model: structure[i][j] = coefficient vector

    @property
    def label(self) -> str:
        return group_label(self.group)

    @property
    def is_finite_free(self) -> bool:
        return self.model == "finite-free"

    @property
    def rank(self) -> int:
        return len(self.finite.characters) if self.finite else 0

    # ----- element construction -----------------------------------------
    def element(self, value) -> "RepElement":
        return RepElement(self, value)

    def one(self) -> "RepElement":
        if self.is_finite_free:
            v = [0] * self.rank
            v[self.finite.trivial_index] = 1
            return RepElement(self, tuple(v))
        return RepElement(self, self.ring.one())

    def const(self, c) -> "RepElement":
        return self.one() * c

    def gen(self, name: str) -> "RepElement":
        if self.is_finite_free:
            names = [ch.name for ch in self.finite.characters]
            if name not in names:
                raise KeyError(f"{name!r} is not a character of {self.label}")
            v = [0] * self.rank
            v[names.index(name)] = 1
            return RepElement(self, tuple(v))
        if name in self.named:
            return RepElement(self, self.named[name])
        return RepElement(self, self.ring.gen(name))

    def normalize(self, value):
        if self.is_finite_free:
            v = tuple(Fraction(x) for x in value)
            if len(v) != self.rank:
                raise RingMismatch(f"expected {self.rank} coefficients, got {len(v)}")
            return v
        if not isinstance(value, LaurentPoly):
            return self.ring.const(value)
        if value.ring != self.ring:
            if value.ring.variables != self.ring.variables:
                raise RingMismatch(f"{value.ring} is not the carrier {self.ring}")
            value = value.change_ring(self.ring)
        if any(self.moduli):
            mods = self.moduli
            value = value.map_exponents(
                lambda e: tuple(x % m if m else x for x, m in zip(e, mods)))
        return value

    def check_invariant(self, value: LaurentPoly):
        for perm in self.weyl:
            moved = value.map_exponents(lambda e, p=perm: tuple(e[p[i]] for i in range(len(e))))
            if moved != value:
                raise IntegrityError(f"{value} is not Weyl-invariant in R({self.label})")

    # ----- polynomial view ----------------------------------------------
    def as_poly(self, v: "RepElement") -> LaurentPoly:
        """The element inside ``self.ring`` (finite groups: one variable per
        nontrivial character, relations from the structure constants)."""
        if not self.is_finite_free:
            return v.value
        out = self.ring.zero()
        triv = self.finite.trivial_index
        k = 0
        for i, c in enumerate(v.value):
            if i == triv:
                out = out + self.ring.const(c)
            else:
                out = out + self.ring.gen(k).scale(c)
                k += 1
        return out

    def augmentation(self, v: "RepElement") -> int:
        if v.owner is not self:
            raise RingMismatch("element belongs to a different presentation")
        if self.is_finite_free:
            val = sum(c * ch.dim for c, ch in zip(v.value, self.finite.characters))
        else:
            val = v.value.evaluate(self.aug_point)
        if Fraction(val).denominator != 1:
            raise IntegrityError(f"non-integral augmentation {val}")
        return int(val)

    def as_ideal(self) -> IdealGens:
        return IdealGens(self.ring, tuple(self.ideal_gens))

    def ideal_elements(self) -> list:
        """The augmentation-ideal generators as ring elements."""
        if not self.is_finite_free:
            return [RepElement(self, g) for g in self.ideal_gens]
        out = []
        triv = self.finite.trivial_index
        for i, ch in enumerate(self.finite.characters):
            if i != triv:
                v = [0] * self.rank
                v[i] += 1
                v[triv] -= ch.dim
                out.append(RepElement(self, tuple(v)))
        return out

    @property
    def q_ring(self) -> Ring:
        return self.ring.with_coeffs("Q")

    def q_relations(self) -> tuple:
        return tuple(r.change_ring(self.q_ring) for r in self.relations)

    def to_json(self) -> dict:
        out = {"group": self.label, "model": self.model, "ring": self.ring.to_json(),
               "relations": [r.to_json() for r in self.relations],
               "as_ideal": [g.to_json() for g in self.ideal_gens]}
        if self.is_finite_free:
            out["basis"] = [ch.name for ch in self.finite.characters]
        return out


@dataclass(frozen=True, eq=False)
class RepElement:
    owner: RepRingPresentation
    value: object

    def __post_init__(self):
        value = self.owner.normalize(self.value)
        if not self.owner.is_finite_free:
            self.owner.check_invariant(value)
        object.__setattr__(self, "value", value)

    def _coerce(self, other):
        if isinstance(other, RepElement):
            if other.owner is not self.owner:
                raise RingMismatch("elements of different representation rings")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.owner.one().scale(other)
        return None

    def scale(self, c) -> "RepElement":
        if self.owner.is_finite_free:
            return RepElement(self.owner, tuple(c * x for x in self.value))
        return RepElement(self.owner, self.value.scale(c))

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.owner.is_finite_free:
            return RepElement(self.owner, tuple(a + b for a, b in zip(self.value, other.value)))
        return RepElement(self.owner, self.value + other.value)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.owner.is_finite_free:
            st = self.owner.structure
            out = [Fraction(0)] * self.owner.rank
            for i, a in enumerate(self.value):
                if not a:
                    continue
                for j, b in enumerate(other.value):
                    if b:
                        for k, c in enumerate(st[i][j]):
                            if c:
                                out[k] += a * b * c
            return RepElement(self.owner, tuple(out))
        return RepElement(self.owner, self.value * other.value)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if self.owner.is_finite_free:
                raise UnsupportedOperation("negative powers need a unit monomial carrier")
            return RepElement(self.owner, self.value.inverse() ** (-k))
        out = self.owner.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, RepElement) else other
        if not isinstance(other, RepElement):
            return NotImplemented
        return self.owner is other.owner and self.value == other.value

    def __hash__(self):
        return hash((id(self.owner), self.value))

    def poly(self) -> LaurentPoly:
        return self.owner.as_poly(self)

    def __repr__(self):
        if self.owner.is_finite_free:
            names = [ch.name for ch in self.owner.finite.characters]
            body = " + ".join(f"{c}*[{n}]" for c, n in zip(self.value, names) if c) or "0"
        else:
            body = str(self.value)
        return f"RepElement({self.owner.label}: {body})"

    def to_json(self):
        if self.owner.is_finite_free:
            return [f"{c.numerator}/{c.denominator}" for c in self.value]
        return self.value.to_json()


# ----- catalog -----------------------------------------------------------

def _var_names(prefix: str, n: int) -> tuple:
    return (prefix,) if n == 1 else tuple(f"{prefix}{i}" for i in range(1, n + 1))


def _torus(g: SplitTorus) -> RepRingPresentation:
    ring = Ring(_var_names("x", g.rank), "laurent", "Z")
    return RepRingPresentation(
        g, "laurent-invariant", ring, moduli=(0,) * g.rank, aug_point=(1,) * g.rank,
        ideal_gens=tuple(x - 1 for x in ring.gens()), adams_kinds=("power",) * g.rank)


def _gl(g: GL) -> RepRingPresentation:
    n = g.n
    ring = Ring(tuple(f"t{i}" for i in range(1, n + 1)), "laurent", "Z")
    weyl = tuple(tuple(list(range(i)) + [i + 1, i] + list(range(i + 2, n)))
                 for i in range(n - 1))
    named = {f"e{i}": elementary(ring, i) for i in range(1, n + 1)}
    named[f"e{n}^-1"] = named[f"e{n}"].inverse()
    gens = tuple(named[f"e{i}"] - comb(n, i) for i in range(1, n + 1))
    return RepRingPresentation(
        g, "laurent-invariant", ring, moduli=(0,) * n, weyl=weyl, aug_point=(1,) * n,
        ideal_gens=gens, named=named, adams_kinds=("power",) * n)


def _sl2(g: SL2) -> RepRingPresentation:
    ring = Ring(("c",), "poly", "Z")
    return RepRingPresentation(g, "polynomial", ring, moduli=(0,), aug_point=(2,),
                               ideal_gens=(ring.gen(0) - 2,), adams_kinds=("sl2",))


def _mu(g: Mu) -> RepRingPresentation:
    ring = Ring(("t",), "poly", "Z")
    t = ring.gen(0)
    return RepRingPresentation(g, "cyclic-quotient", ring, relations=(t ** g.n - 1,),
                               moduli=(g.n,), aug_point=(1,), ideal_gens=(t - 1,),
                               adams_kinds=("power",))


def _finite(g: FiniteGroup) -> RepRingPresentation:
    chars = g.characters
    k = len(chars)
    triv = g.trivial_index
    structure = []
    for a in chars:
        row = []
        for b in chars:
            prod = [x * y for x, y in zip(a.values, b.values)]
            coeffs = g.decompose(prod)
            if any(c.denominator != 1 for c in coeffs):
                raise UnsupportedGroup(f"character product of {a.name}, {b.name} "
                                       "is not an integral combination of table rows")
            row.append(coeffs)
        structure.append(tuple(row))
    others = [i for i in range(k) if i != triv]
    names = []
    for i in others:
        nm = chars[i].name
        names.append(nm if nm.isidentifier() and nm not in names else f"chi{i}")
    ring = Ring(tuple(names), "poly", "Z")

    def to_poly(vec):
        out = ring.const(vec[triv])
        for pos, i in enumerate(others):
            if vec[i]:
                out = out + ring.gen(pos).scale(vec[i])
        return out

    rels = []
    for a in range(len(others)):
        for b in range(a, len(others)):
            i, j = others[a], others[b]
            rels.append(ring.gen(a) * ring.gen(b) - to_poly(structure[i][j]))
    gens = tuple(ring.gen(pos) - chars[i].dim for pos, i in enumerate(others))
    pres = RepRingPresentation(g, "finite-free", ring, relations=tuple(rels),
                               ideal_gens=gens, finite=g, structure=tuple(structure))
    dims = [c.dim for c in chars]
    for i in range(k):
        for j in range(k):
            if dims[i] * dims[j] != sum(c * d for c, d in zip(structure[i][j], dims)):
                raise IntegrityError("augmentation is not multiplicative on the table")
    return pres


def _product(g: Product) -> RepRingPresentation:
    if all(isinstance(f, FiniteGroup) for f in g.factors):
        combined = g.factors[0]
        for f in g.factors[1:]:
            combined = product_group(combined, f)
        pres = _finite(combined)
        return RepRingPresentation(g, pres.model, pres.ring, pres.relations,
                                   ideal_gens=pres.ideal_gens, finite=pres.finite,
                                   structure=pres.structure)
    if any(isinstance(f, (FiniteGroup, Product)) for f in g.factors):
        raise UnsupportedGroup("products must be all finite tables or all torus/GL/SL2/mu")
    parts = [rep_ring(f) for f in g.factors]
    names, units, moduli, weyl, point, kinds = [], [], [], [], [], []
    offsets = []
    for k, p in enumerate(parts):
        off = len(names)
        offsets.append(off)
        names.extend(f"{v}_{k + 1}" for v in p.ring.variables)
        units.extend(off + u for u in p.ring.units)
        moduli.extend(p.moduli)
        point.extend(p.aug_point)
        kinds.extend(p.adams_kinds)
    total = len(names)
    ring = Ring(tuple(names), "mixed", "Z", tuple(units))

    def embed(poly, off):
        n = poly.ring.nvars
        return LaurentPoly(ring, {(0,) * off + e + (0,) * (total - off - n): c
                                  for e, c in poly.items()})

    rels, gens, named = [], [], {}
    for p, off in zip(parts, offsets):
        n = p.ring.nvars
        for perm in p.weyl:
            weyl.append(tuple(list(range(off)) + [off + i for i in perm]
                              + list(range(off + n, total))))
        rels.extend(embed(r, off) for r in p.relations)
        gens.extend(embed(x, off) for x in p.ideal_gens)
        k = offsets.index(off) + 1
        named.update({f"{nm}_{k}": embed(v, off) for nm, v in p.named.items()})
    return RepRingPresentation(g, "mixed", ring, tuple(rels), tuple(moduli), tuple(weyl),
                               tuple(point), tuple(gens), named, tuple(kinds))


_CACHE: dict = {}


def rep_ring(g) -> RepRingPresentation:
    key = id(g) if isinstance(g, FiniteGroup) else g
    if key in _CACHE:
        return _CACHE[key][1]
    if isinstance(g, SplitTorus):
        pres = _torus(g)
    elif isinstance(g, GL):
        pres = _gl(g)
    elif isinstance(g, SL2):
        pres = _sl2(g)
    elif isinstance(g, Mu):
        pres = _mu(g)
    elif isinstance(g, FiniteGroup):
        pres = _finite(g)
    elif isinstance(g, Product):
        pres = _product(g)
    else:
        raise UnsupportedGroup(f"{g!r} is not in the catalog")
    _CACHE[key] = (g, pres)
    return pres


def as_ideal(g) -> IdealGens:
    return rep_ring(g).as_ideal()


def augmentation(v: RepElement) -> int:
    return v.owner.augmentation(v)


# ----- Adams operations --------------------------------------------------

def adams(ell: int, v: RepElement) -> RepElement:
    if not isinstance(ell, int) or ell < 1:
        raise ValueError("Adams operations are indexed by positive integers")
    pres = v.owner
    if pres.is_finite_free:
        g = pres.finite
        pm = g.power_map(ell)
        chars = g.characters
        values = [sum(c * ch.values[pm[k]] for c, ch in zip(v.value, chars))
                  for k in range(g.nclasses)]
        return RepElement(pres, g.decompose(values))
    ring = pres.ring
    images, inverses = [], []
    for i, kind in enumerate(pres.adams_kinds):
        if kind == "power":
            images.append(ring.gen(i) ** ell)
            inverses.append(ring.gen(i) ** (-ell) if i in ring.units else None)
        else:
            p = power_sum_in_c(ell, Ring(("c",), "poly", "Z"))
            images.append(p.substitute([ring.gen(i)], ring))
            inverses.append(None)
    return RepElement(pres, v.value.substitute(images, ring, inverses))


# ----- restriction ---------------------------------------------------------

def _finite_embedding(g: FiniteGroup, h: FiniteGroup, embedding):
    if embedding is None:
        try:
            embedding = [g.elements.index(x) for x in h.elements]
        except ValueError:
            raise UnsupportedOperation(
                f"{h.name} elements are not named inside {g.name}; pass an embedding") from None
    embedding = list(embedding)
    for a in range(h.order):
        for b in range(h.order):
            if embedding[h.mul(a, b)] != g.mul(embedding[a], embedding[b]):
                raise UnsupportedOperation(f"embedding {h.name} -> {g.name} is not a homomorphism")
    if len(set(embedding)) != h.order:
        raise UnsupportedOperation("embedding is not injective")
    return embedding


def restriction(g, h, v: RepElement, embedding=None) -> RepElement:
    """Restrict ``v`` in R(g) to R(h) along the catalog embedding h -> g."""
    src, dst = rep_ring(g), rep_ring(h)
    if v.owner is not src:
        raise RingMismatch("element does not belong to R(g)")
    if src is dst:
        return v
    if isinstance(g, GL) and isinstance(h, SplitTorus) and h.rank == g.n:
        return RepElement(dst, LaurentPoly(dst.ring, dict(v.value.items())))
    if isinstance(g, SplitTorus) and g.rank == 1 and isinstance(h, Mu):
        t = dst.ring.gen(0)
        return RepElement(dst, v.value.substitute([t], dst.ring, [t ** (h.n - 1)]))
    if isinstance(g, SL2) and isinstance(h, SplitTorus) and h.rank == 1:
        x = dst.ring.gen(0)
        return RepElement(dst, v.value.substitute([x + x.inverse()], dst.ring))
    if isinstance(g, FiniteGroup) and isinstance(h, FiniteGroup):
        emb = _finite_embedding(g, h, embedding)
        chars = g.characters
        values = []
        for cl in h.classes:
            gc = g.class_of[emb[cl[0]]]
            values.append(sum(c * ch.values[gc] for c, ch in zip(v.value, chars)))
        return RepElement(dst, h.decompose(values))
    raise UnsupportedOperation(
        f"restriction from {group_label(g)} to {group_label(h)} is not supported")


def regular_representation(g) -> RepElement:
    pres = rep_ring(g)
    if isinstance(g, Mu):
        t = pres.ring.gen(0)
        return RepElement(pres, sum((t ** k for k in range(1, g.n)), pres.ring.one()))
    if pres.is_finite_free:
        return RepElement(pres, tuple(Fraction(ch.dim) for ch in pres.finite.characters))
    raise UnsupportedGroup(f"{group_label(g)} is not finite")


def elementary_relations(n: int, degree: int) -> int:
    """Dimension of the space of polynomial relations of total degree <= ``degree``
    among e_1..e_n in Z[t_1..t_n] (zero means independent in that window)."""
    ring = Ring(tuple(f"t{i}" for i in range(1, n + 1)), "poly", "Q")
    es = [elementary(ring, i) for i in range(1, n + 1)]
    columns = []
    for d in range(degree + 1):
        for combo in combinations_with_replacement(range(n), d):
            p = ring.one()
            for i in combo:
                p = p * es[i]
            columns.append(p)
    monos = sorted({e for p in columns for e in p.terms})
    mat = ExactMatrix.from_columns([[p.coeff(m) for m in monos] for p in columns],
                                   rows=len(monos))
    return len(columns) - mat.rank()
