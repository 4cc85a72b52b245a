"""Class-function rings O(G)^G, the trace R(G) -> O(G)^G and the ideals it relates."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb

from astk.algebra import univariate as up
from astk.algebra.groebner import member
from astk.algebra.poly import IdealGens, LaurentPoly, Ring, format_coeff
from astk.errors import NotFiniteDimensional, UnsupportedGroup
from astk.groups.finite import FiniteGroup
from astk.groups.repring import RepElement, rep_ring
from astk.groups.spec import GL, SL2, Mu, SplitTorus, group_label
from astk.groups.symmetric import e_ring, to_elementary

NICE_REFERENCE = ("nice groups are extensions of a finite (locally free) group by a torus; "
                  "this check covers mu_n, split tori and finite groups")


@dataclass(frozen=True, eq=False)
class ClassFunctionRing:
    group: object
    model: str                  # "finite-classes" | "laurent-self" | "symmetric-laurent" | "cyclic-self"
    ring: Ring | None = None
    relations: tuple = ()
    unit_point: tuple = ()      # evaluation at the identity element
    nclasses: int = 0
    identity_class: int = 0

    @property
    def label(self) -> str:
        return group_label(self.group)

    @property
    def is_vector(self) -> bool:
        return self.model == "finite-classes"

    def element(self, value) -> "ClassFunction":
        return ClassFunction(self, value)

    def one(self) -> "ClassFunction":
        if self.is_vector:
            return ClassFunction(self, (Fraction(1),) * self.nclasses)
        return ClassFunction(self, self.ring.one())

    def unit_evaluation(self, f: "ClassFunction") -> Fraction:
        if self.is_vector:
            return f.value[self.identity_class]
        return f.value.evaluate(self.unit_point)

    def to_json(self) -> dict:
        out = {"group": self.label, "model": self.model}
        if self.is_vector:
            out["classes"] = self.nclasses
        else:
            out["ring"] = self.ring.to_json()
            out["relations"] = [r.to_json() for r in self.relations]
        return out


@dataclass(frozen=True, eq=False)
class ClassFunction:
    owner: ClassFunctionRing
    value: object

    def __post_init__(self):
        o = self.owner
        if o.is_vector:
            v = tuple(Fraction(x) for x in self.value)
            if len(v) != o.nclasses:
                raise ValueError(f"need {o.nclasses} class values")
        else:
            v = self.value if isinstance(self.value, LaurentPoly) else o.ring.const(self.value)
            if v.ring != o.ring:
                v = v.change_ring(o.ring)
            if o.model == "cyclic-self":
                n = o.group.n
                v = v.map_exponents(lambda e: (e[0] % n,))
        object.__setattr__(self, "value", v)

    def __add__(self, other):
        if self.owner.is_vector:
            return ClassFunction(self.owner, tuple(a + b for a, b in zip(self.value, other.value)))
        return ClassFunction(self.owner, self.value + other.value)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        if self.owner.is_vector:
            return ClassFunction(self.owner, tuple(c * a for a in self.value))
        return ClassFunction(self.owner, self.value.scale(c))

    def __mul__(self, other):
        if self.owner.is_vector:
            return ClassFunction(self.owner, tuple(a * b for a, b in zip(self.value, other.value)))
        return ClassFunction(self.owner, self.value * other.value)

    def __eq__(self, other):
        return (isinstance(other, ClassFunction) and self.owner is other.owner
                and self.value == other.value)

    def __hash__(self):
        return hash((id(self.owner), self.value))

    def __repr__(self):
        return f"ClassFunction({self.owner.label}: {self.value})"

    def to_json(self):
        if self.owner.is_vector:
            return [format_coeff(c) for c in self.value]
        return self.value.to_json()


_RINGS: dict = {}


def class_function_ring(g) -> ClassFunctionRing:
    key = id(g) if isinstance(g, FiniteGroup) else g
    if key in _RINGS:
        return _RINGS[key][1]
    if isinstance(g, FiniteGroup):
        cf = ClassFunctionRing(g, "finite-classes", nclasses=g.nclasses,
                               identity_class=g.identity_class)
    elif isinstance(g, SplitTorus):
        ring = rep_ring(g).q_ring
        cf = ClassFunctionRing(g, "laurent-self", ring, unit_point=(1,) * g.rank)
    elif isinstance(g, GL):
        ring = e_ring(g.n, "Q")
        cf = ClassFunctionRing(g, "symmetric-laurent", ring,
                               unit_point=tuple(comb(g.n, i) for i in range(1, g.n + 1)))
    elif isinstance(g, SL2):
        cf = ClassFunctionRing(g, "symmetric-laurent", Ring(("c",), "poly", "Q"),
                               unit_point=(2,))
    elif isinstance(g, Mu):
        ring = Ring(("t",), "poly", "Q")
        cf = ClassFunctionRing(g, "cyclic-self", ring, (ring.gen(0) ** g.n - 1,),
                               unit_point=(1,))
    else:
        raise UnsupportedGroup(f"no class-function model for {group_label(g)}")
    _RINGS[key] = (g, cf)
    return cf


def dennis_trace(v: RepElement) -> ClassFunction:
    g = v.owner.group
    cf = class_function_ring(g)
    if isinstance(g, FiniteGroup):
        values = [sum(c * ch.values[k] for c, ch in zip(v.value, g.characters))
                  for k in range(g.nclasses)]
        return ClassFunction(cf, tuple(values))
    if isinstance(g, GL):
        return ClassFunction(cf, to_elementary(v.value.to_rationals(), cf.ring))
    if isinstance(g, (SplitTorus, SL2, Mu)):
        return ClassFunction(cf, v.value.change_ring(cf.ring))
    raise UnsupportedGroup(f"no trace for {group_label(g)}")


def unit_ideal_J(g):
    """Generators of ker(evaluation at e): an IdealGens for ring models, a tuple
    of class-indicator vectors for finite groups."""
    cf = class_function_ring(g)
    if cf.is_vector:
        out = []
        for k in range(cf.nclasses):
            if k != cf.identity_class:
                out.append(ClassFunction(cf, tuple(Fraction(int(j == k))
                                                   for j in range(cf.nclasses))))
        return tuple(out)
    gens = [x - p for x, p in zip(cf.ring.gens(), cf.unit_point)]
    return IdealGens(cf.ring, tuple(gens))


# ----- membership in the class-coordinate algebra Q^k -----------------------

@dataclass(frozen=True)
class VectorCertificate:
    """f = sum_i c_i * g_i with pointwise products in Q^k."""

    target: tuple
    generators: tuple
    coefficients: tuple

    def evaluate(self) -> tuple:
        k = len(self.target)
        out = [Fraction(0)] * k
        for g, c in zip(self.generators, self.coefficients):
            for j in range(k):
                out[j] += g[j] * c[j]
        return tuple(out)

    def validate(self) -> bool:
        return self.evaluate() == tuple(self.target)

    def to_json(self) -> dict:
        def vec(v):
            return [format_coeff(x) for x in v]
        return {"target": vec(self.target), "generators": [vec(g) for g in self.generators],
                "coefficients": [vec(c) for c in self.coefficients]}

    @classmethod
    def from_json(cls, data) -> "VectorCertificate":
        def vec(v):
            return tuple(Fraction(x) for x in v)
        return cls(vec(data["target"]), tuple(vec(g) for g in data["generators"]),
                   tuple(vec(c) for c in data["coefficients"]))


def vector_member(f, gens):
    """The ideal of Q^k generated by ``gens`` is the set of vectors supported
    where some generator is nonzero; solve coordinatewise."""
    f = tuple(Fraction(x) for x in f)
    gens = [tuple(Fraction(x) for x in g) for g in gens]
    k = len(f)
    coeffs = [[Fraction(0)] * k for _ in gens]
    for j in range(k):
        if not f[j]:
            continue
        for i, g in enumerate(gens):
            if g[j]:
                coeffs[i][j] = f[j] / g[j]
                break
        else:
            return None
    cert = VectorCertificate(f, tuple(gens), tuple(tuple(c) for c in coeffs))
    assert cert.validate()
    return cert


# ----- radical comparison ---------------------------------------------------

@dataclass(frozen=True, eq=False)
class RadicalReport:
    group: str
    status: str
    exponent: int | None
    n_max: int
    trace_gens: tuple           # tr of the I_G generators
    j_gens: tuple
    reverse: tuple              # each tr generator lies in J (certificates)
    reverse_unit_values: tuple  # unit evaluation of each tr generator
    forward: tuple              # (combo, certificate) for each n-fold product of J generators
    below: tuple = ()
    split_table: bool | None = None

    def validate(self) -> bool:
        for t, c in zip(self.trace_gens, self.reverse):
            if _value(c.target) != _value(t) or not c.validate():
                return False
        if any(v != 0 for v in self.reverse_unit_values):
            return False
        if self.status != "pass":
            return True
        combos = set(combinations_with_replacement(range(len(self.j_gens)), self.exponent))
        if {tuple(c) for c, _ in self.forward} != combos:
            return False
        for combo, cert in self.forward:
            if tuple(_value(x) for x in cert.generators) != tuple(_value(t) for t in self.trace_gens):
                return False
            if not cert.validate():
                return False
            if _value(cert.target) != _value(_product(self.j_gens, combo)):
                return False
        return True

    def to_json(self) -> dict:
        return {"group": self.group, "status": self.status, "exponent": self.exponent,
                "n_max": self.n_max,
                "trace_generators": [_jsonable(t) for t in self.trace_gens],
                "j_generators": [_jsonable(t) for t in self.j_gens],
                "reverse": [c.to_json() for c in self.reverse],
                "reverse_unit_values": [format_coeff(Fraction(v)) for v in self.reverse_unit_values],
                "forward": [{"product": list(c), "certificate": cert.to_json()}
                            for c, cert in self.forward],
                "below": [{"n": n, "product": list(c)} for n, c in self.below],
                "split_table": self.split_table}


def _value(x):
    if isinstance(x, ClassFunction):
        return x.value
    return x


def _jsonable(x):
    x = _value(x)
    if isinstance(x, LaurentPoly):
        return x.to_json()
    return [format_coeff(Fraction(c)) for c in x]


def _product(gens, combo):
    vals = [_value(g) for g in gens]
    if isinstance(vals[0], LaurentPoly):
        p = vals[0].ring.one()
        for i in combo:
            p = p * vals[i]
        return p
    out = [Fraction(1)] * len(vals[0])
    for i in combo:
        out = [a * b for a, b in zip(out, vals[i])]
    return tuple(out)


def _member(f, gens, cf: ClassFunctionRing):
    if cf.is_vector:
        return vector_member(_value(f), [_value(g) for g in gens])
    return member(_value(f), [_value(g) for g in gens], cf.relations)


def radical_compare(g, n_max: int) -> RadicalReport:
    """Certify tr(I_G)O^G <= J_G and find the least n <= n_max with J_G^n <= tr(I_G)O^G."""
    pres = rep_ring(g)
    cf = class_function_ring(g)
    traces = [dennis_trace(v) for v in pres.ideal_elements()]
    J = unit_ideal_J(g)
    j_gens = list(J) if cf.is_vector else [ClassFunction(cf, p) for p in J]

    reverse, unit_values = [], []
    for t in traces:
        unit_values.append(cf.unit_evaluation(t))
        cert = _member(t, j_gens, cf)
        if cert is None:
            raise AssertionError(f"trace generator {t} is not in J")
        reverse.append(cert)

    forward, below, exponent = [], [], None
    if not j_gens:
        exponent = 1
    for n in range(1, n_max + 1):
        if exponent is not None:
            break
        certs, failed = [], None
        for combo in combinations_with_replacement(range(len(j_gens)), n):
            target = _product(j_gens, combo)
            cert = _member(target, traces, cf)
            if cert is None:
                failed = combo
                below.append((n, combo))
                break
            certs.append((combo, cert))
        if failed is None:
            forward, exponent = certs, n
    status = "pass" if exponent is not None else "undetermined"
    split = pres.finite.split if pres.finite is not None else None
    return RadicalReport(group_label(g), status, exponent, n_max, tuple(traces),
                         tuple(j_gens), tuple(reverse), tuple(unit_values), tuple(forward),
                         tuple(below), split)


# ----- unipotent locus for nice groups -----------------------------------------

@dataclass(frozen=True, eq=False)
class UnipotentReport:
    group: str
    holds: bool
    ring: str
    j_extended: tuple           # generators of J_G * O(G)
    identity_ideal: tuple       # generators of I_e
    j_in_ie: tuple              # certificates J*O <= I_e
    ie_in_radical: tuple        # (power m, certificate of g^m in J*O) per I_e generator
    power_bound: int
    quotient_dim: int | None    # dim O(G)/I_e (1 means I_e is maximal, hence radical)
    zero_set: tuple = ()        # finite groups: elements where all of J*O vanish
    diagnostics: dict = field(default_factory=dict)

    def validate(self) -> bool:
        return (all(c.validate() for c in self.j_in_ie)
                and all(c.validate() for _, c in self.ie_in_radical))

    def to_json(self) -> dict:
        return {"group": self.group, "holds": self.holds, "function_ring": self.ring,
                "j_extended": [_jsonable(x) for x in self.j_extended],
                "identity_ideal": [_jsonable(x) for x in self.identity_ideal],
                "j_in_ie": [c.to_json() for c in self.j_in_ie],
                "ie_in_radical": [{"power": m, "certificate": c.to_json()}
                                  for m, c in self.ie_in_radical],
                "power_bound": self.power_bound, "quotient_dim": self.quotient_dim,
                "zero_set": list(self.zero_set), "diagnostics": self.diagnostics}


def _radical_powers(gens, ideal, relations, bound, mem):
    out = []
    for g in gens:
        for m in range(1, bound + 1):
            cert = mem(_power(g, m), ideal, relations)
            if cert is not None:
                out.append((m, cert))
                break
        else:
            return None
    return out


def _power(g, m):
    if isinstance(g, LaurentPoly):
        return g ** m
    return tuple(x ** m for x in g)


def unipotent_reduced_check(g, power_bound: int = 4) -> UnipotentReport:
    """sqrt(J_G * O(G)) = I_e for nice groups."""
    if isinstance(g, FiniteGroup):
        n = g.order
        # O(G) = Q^{|G|}: J*O is generated by pulled-back class indicators
        pulled = []
        for k in range(g.nclasses):
            if k != g.identity_class:
                pulled.append(tuple(Fraction(int(g.class_of[x] == k)) for x in range(n)))
        ie = [tuple(Fraction(int(x == y)) for x in range(n)) for y in range(n) if y != g.identity]

        def vmem(f, gens, _rel):
            return vector_member(f, gens)

        j_in_ie = [vector_member(f, ie) for f in pulled]
        rad = _radical_powers(ie, pulled, (), power_bound, vmem)
        zeros = tuple(g.elements[x] for x in range(n) if all(f[x] == 0 for f in pulled))
        holds = (all(c is not None for c in j_in_ie) and rad is not None
                 and zeros == (g.elements[g.identity],))
        return UnipotentReport(group_label(g), holds, f"Q^{n}", tuple(pulled), tuple(ie),
                               tuple(c for c in j_in_ie if c is not None), tuple(rad or ()),
                               power_bound, 1, zeros)
    if isinstance(g, (Mu, SplitTorus)):
        cf = class_function_ring(g)   # abelian: O(G)^G = O(G)
        ring, relations = cf.ring, cf.relations
        J = list(unit_ideal_J(g))
        ie = [x - 1 for x in ring.gens()]
        j_in_ie = [member(f, ie, relations) for f in J]

        def pmem(f, gens, rel):
            return member(f, gens, rel)

        rad = _radical_powers(ie, J, relations, power_bound, pmem)
        qdim = _quotient_dim(ring, ie, relations)
        diagnostics = {}
        if isinstance(g, Mu):
            t = (Fraction(-1),) + (Fraction(0),) * (g.n - 1) + (Fraction(1),)
            gcd = up.gcd(t, up.derivative(t))
            diagnostics[f"gcd(t^{g.n}-1, {g.n}*t^{g.n - 1})"] = up.to_str(gcd, "t")
            diagnostics["separable"] = gcd == (Fraction(1),)
        holds = (all(c is not None for c in j_in_ie) and rad is not None and qdim == 1)
        return UnipotentReport(group_label(g), holds, str(ring), tuple(J), tuple(ie),
                               tuple(c for c in j_in_ie if c is not None), tuple(rad or ()),
                               power_bound, qdim, (), diagnostics)
    raise UnsupportedGroup(f"{group_label(g)} is not nice: {NICE_REFERENCE}")


def _quotient_dim(ring: Ring, gens, relations) -> int | None:
    from astk.completion import complete_truncated
    try:
        return complete_truncated(ring, IdealGens(ring, tuple(gens)), 0, relations).dim
    except NotFiniteDimensional:
        return None
