"""Change-of-groups containments I_H^n  <=  I_G * R(H)  <=  I_H with certificates."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from astk.algebra.groebner import MembershipCertificate, groebner_basis, member
from astk.algebra.oracle import linear_member
from astk.algebra.poly import IdealGens, LaurentPoly, Ring
from astk.groups.repring import RepElement, rep_ring, restriction
from astk.groups.spec import GL, Mu, SL2, SplitTorus, group_label

PAIRS = {
    "mu_n-gm": lambda n=3: (Mu(n), SplitTorus(1)),
    "t1-sl2": lambda n=None: (SplitTorus(1), SL2()),
    "t2-gl2": lambda n=None: (SplitTorus(2), GL(2)),
}


def _product(gens, combo, ring):
    p = ring.one()
    for i in combo:
        p = p * gens[i]
    return p


@dataclass(frozen=True, eq=False)
class ContainmentReport:
    pair: tuple                 # (label of H, label of G)
    status: str                 # "pass" or "undetermined"
    exponent: int | None
    n_max: int
    ih_gens: tuple              # generators of I_H over Q
    restricted: tuple           # restrictions of the I_G generators
    relations: tuple
    forward: tuple              # (combo, certificate) for every degree-n product
    reverse: tuple              # certificate per restricted generator
    reverse_augmentations: tuple
    below: tuple = ()           # (n, combo, normal form) refuting smaller exponents
    oracle: dict = field(default_factory=dict)

    def validate(self) -> bool:
        """Re-check every claim from the stored certificates alone."""
        if self.status != "pass":
            return all(c.validate() for _, c in self.forward)
        ring = self.ih_gens[0].ring if self.ih_gens else None
        combos = set(combinations_with_replacement(range(len(self.ih_gens)), self.exponent))
        if {tuple(c) for c, _ in self.forward} != combos:
            return False
        for combo, cert in self.forward:
            if cert.target != _product(self.ih_gens, combo, ring):
                return False
            if (tuple(cert.generators) != tuple(self.restricted)
                    or tuple(cert.relations) != tuple(self.relations)):
                return False
            if not cert.validate():
                return False
        if len(self.reverse) != len(self.restricted):
            return False
        for r, cert in zip(self.restricted, self.reverse):
            if cert.target != r or tuple(cert.generators) != tuple(self.ih_gens):
                return False
            if not cert.validate():
                return False
        return all(a == 0 for a in self.reverse_augmentations)

    def to_json(self) -> dict:
        ring = self.ih_gens[0].ring if self.ih_gens else None
        return {
            "pair": list(self.pair), "status": self.status, "exponent": self.exponent,
            "n_max": self.n_max,
            "ring": ring.to_json() if ring else None,
            "ih_generators": [g.to_json() for g in self.ih_gens],
            "restricted_generators": [g.to_json() for g in self.restricted],
            "relations": [r.to_json() for r in self.relations],
            "forward": [{"product": list(c), "certificate": cert.to_json()}
                        for c, cert in self.forward],
            "reverse": [cert.to_json() for cert in self.reverse],
            "reverse_augmentations": list(self.reverse_augmentations),
            "below": [{"n": n, "product": list(c), "normal_form": nf}
                      for n, c, nf in self.below],
            "oracle": self.oracle,
        }

    @classmethod
    def from_json(cls, data) -> "ContainmentReport":
        ring = Ring.from_json(data["ring"])

        def polys(key):
            return tuple(LaurentPoly.from_json(ring, p) for p in data[key])

        forward = tuple((tuple(f["product"]), MembershipCertificate.from_json(f["certificate"]))
                        for f in data["forward"])
        reverse = tuple(MembershipCertificate.from_json(c) for c in data["reverse"])
        below = tuple((b["n"], tuple(b["product"]), b["normal_form"]) for b in data["below"])
        return cls(tuple(data["pair"]), data["status"], data["exponent"], data["n_max"],
                   polys("ih_generators"), polys("restricted_generators"), polys("relations"),
                   forward, reverse, tuple(data["reverse_augmentations"]), below,
                   data.get("oracle", {}))


def _saturated_normal_form(f: LaurentPoly, gens, relations) -> str:
    """A human-readable obstruction for a non-member (normal form of the lift)."""
    R = f.ring
    if not R.units:
        gb = groebner_basis(IdealGens(R, tuple(list(gens) + list(relations))))
        return str(gb.normal_form(f))
    return "nonzero remainder after saturation"


def containment_exponent(h, g, n_max: int, oracle_bound: int | None = 6) -> ContainmentReport:
    hp, gp = rep_ring(h), rep_ring(g)
    R = hp.q_ring
    relations = hp.q_relations()
    ih = [x.poly().change_ring(R) for x in hp.ideal_elements()]
    restricted = []
    for v in gp.ideal_elements():
        restricted.append(restriction(g, h, v))
    aug = tuple(hp.augmentation(r) for r in restricted)
    restricted = [r.poly().change_ring(R) for r in restricted]

    reverse = []
    for r in restricted:
        cert = member(r, ih, relations)
        if cert is None:
            raise AssertionError(f"restricted generator {r} is not in I_H")
        reverse.append(cert)

    forward, below, exponent = [], [], None
    for n in range(1, n_max + 1):
        certs = []
        failed = None
        for combo in combinations_with_replacement(range(len(ih)), n):
            target = _product(ih, combo, R)
            cert = member(target, restricted, relations)
            if cert is None:
                failed = combo
                below.append((n, combo, _saturated_normal_form(target, restricted, relations)))
                break
            certs.append((combo, cert))
        if failed is None:
            forward, exponent = certs, n
            break
    status = "pass" if exponent is not None else "undetermined"

    oracle = {}
    if oracle_bound is not None and exponent is not None:
        found = all(linear_member(c.target, restricted, oracle_bound, relations) is not None
                    for _, c in forward)
        rejected = all(linear_member(_product(ih, combo, R), restricted, oracle_bound,
                                     relations) is None for _, combo, _ in below)
        oracle = {"bound": oracle_bound, "forward_found": found, "below_rejected": rejected}
    return ContainmentReport((group_label(h), group_label(g)), status, exponent, n_max,
                             tuple(ih), tuple(restricted), tuple(relations), tuple(forward),
                             tuple(reverse), aug, tuple(below), oracle)


def pair_groups(name: str, n: int = 3):
    if name not in PAIRS:
        raise KeyError(f"unknown pair {name!r}; choose from {', '.join(PAIRS)}")
    return PAIRS[name](n) if name == "mu_n-gm" else PAIRS[name]()


def restriction_sandwich(h, g) -> bool:
    """Each restricted I_G generator has augmentation 0 in R(H)."""
    gp, hp = rep_ring(g), rep_ring(h)
    return all(hp.augmentation(restriction(g, h, v)) == 0 for v in gp.ideal_elements())


__all__ = ["ContainmentReport", "containment_exponent", "pair_groups", "restriction_sandwich",
           "RepElement"]
