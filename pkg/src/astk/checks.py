"""Registry of named verification checks and their runners."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Callable

from astk.algebra.findim import FinDimAlgebra
from astk.algebra.linalg import ExactMatrix
from astk.algebra.poly import IdealGens, LaurentPoly, Ring, format_coeff
from astk.algebra.series import TruncSeries, log1p_power, series_compose
from astk.errors import AstkError, GroupLoadError, UsageError
from astk.report import Report, combine_status

LOG_POWER_NOTE = ("log(x)^j is used throughout: it lies in (x-1)^j and satisfies "
                  "f(x^l) = l^j f(x); log(x^j) = j*log(x) satisfies neither")


@dataclass(frozen=True)
class Param:
    name: str
    kind: type
    default: object
    help: str = ""


@dataclass(frozen=True)
class Outcome:
    status: str
    result: dict
    certificates: list = field(default_factory=list)


@dataclass(frozen=True)
class CheckDescriptor:
    name: str
    anchor: str
    module: str
    params: tuple
    runner: Callable[[dict], Outcome]
    acceptance: bool = True

    def resolve(self, params: dict | None) -> dict:
        params = dict(params or {})
        known = {p.name: p for p in self.params}
        unknown = sorted(set(params) - set(known))
        if unknown:
            raise UsageError(f"{self.name}: unknown parameter(s) {', '.join(unknown)}")
        out = {}
        for p in self.params:
            value = params.get(p.name, p.default)
            if value is not None and not isinstance(value, p.kind):
                try:
                    value = p.kind(value)
                except (TypeError, ValueError) as exc:
                    raise UsageError(f"{self.name}: {p.name} must be {p.kind.__name__}") from exc
            if p.kind is int and value is not None and value < 0:
                raise UsageError(f"{self.name}: {p.name} must be >= 0")
            out[p.name] = value
        return out


REGISTRY: dict = {}


def register(name, anchor, module, params=(), acceptance=True):
    def wrap(fn):
        if name in REGISTRY:
            raise ValueError(f"duplicate check {name}")
        REGISTRY[name] = CheckDescriptor(name, anchor, module, tuple(params), fn, acceptance)
        return fn
    return wrap


def run_check(name: str, params: dict | None = None) -> Report:
    if name not in REGISTRY:
        raise UsageError(f"unknown check {name!r}; known: {', '.join(sorted(REGISTRY))}")
    desc = REGISTRY[name]
    resolved = desc.resolve(params)
    start = time.perf_counter()
    try:
        out = desc.runner(resolved)
    except UsageError:
        raise
    except GroupLoadError as exc:
        out = Outcome("fail", {"error": str(exc), "invariant": exc.invariant})
    except AstkError as exc:
        out = Outcome("fail", {"error": f"{type(exc).__name__}: {exc}"})
    elapsed = (time.perf_counter() - start) * 1000
    return Report(name, resolved, desc.anchor, out.status, out.result, out.certificates,
                  {"total": round(elapsed, 3)})


# ----- input helpers -------------------------------------------------------------

def load_json_arg(text: str):
    """A JSON document given inline or as a path."""
    path = Path(text)
    try:
        if path.suffix == ".json" or path.is_file():
            return json.loads(path.read_text())
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {text!r}: {exc}") from exc


def parse_group(text: str):
    from astk.groups.spec import parse_group_spec
    return parse_group_spec(text)


def _groups(text: str | None, suite: tuple):
    names = suite if text is None else tuple(s.strip() for s in text.split(",") if s.strip())
    return [(n, parse_group(n)) for n in names]


def parse_element(pres, data):
    """A representation-ring element from JSON.

    Accepted forms: "regular"; a dict of generator names to coefficients; a
    list of coefficients (finite groups, one per character); or a list of
    [exponent, coefficient] terms in the carrier ring.
    """
    from astk.groups.repring import regular_representation

    if data == "regular":
        return regular_representation(pres.group)
    if isinstance(data, str):
        data = load_json_arg(data)
    if isinstance(data, dict):
        total = pres.const(0)
        for name, c in sorted(data.items()):
            total = total + (pres.one() if name == "1" else pres.gen(name)).scale(Fraction(c))
        return total
    if pres.is_finite_free and all(not isinstance(x, list) for x in data):
        return pres.element(tuple(Fraction(x) for x in data))
    try:
        return pres.element(LaurentPoly.from_json(pres.ring, data))
    except (TypeError, ValueError) as exc:
        raise UsageError(f"cannot parse element {data!r}") from exc


def _vec(v) -> list:
    return [format_coeff(Fraction(c)) for c in v]


# ----- completion -----------------------------------------------------------------

@register("bgm-k", "k[t,t^{-1}]^∧_{(t−1)} ≃ k[[t−1]]", "completion",
          [Param("precision", int, 8, "truncation N")])
def _bgm_k(p):
    from astk.completion import complete_truncated
    from astk.groups.repring import rep_ring
    from astk.groups.spec import SplitTorus

    N = p["precision"]
    pres = rep_ring(SplitTorus(1))
    ring, ideal = pres.ring, pres.as_ideal()
    qs = [complete_truncated(ring, ideal, s) for s in range(N + 1)]
    q = qs[N]
    x = ring.gen(0)
    alg = q.algebra
    one_plus_u = [Fraction(0)] * q.dim
    one_plus_u[0] = Fraction(1)
    if q.dim > 1:
        one_plus_u[1] = Fraction(1)
    x_image, xinv_image = q.image(x), q.image(x.inverse())
    inverse_ok = alg.mul(x_image, xinv_image) == alg.unit
    tower = [t.dim for t in qs]
    projections_onto = all(qs[s + 1].project(qs[s]).rank() == s + 1 for s in range(N))
    ok = (q.dim == N + 1 and q.is_integral() and tuple(x_image) == tuple(one_plus_u)
          and inverse_ok and tower == list(range(1, N + 2)) and projections_onto)
    result = {"rank": q.dim, "basis": list(q.labels), "integral": q.is_integral(),
              "x_image": _vec(x_image), "x_inverse_image": _vec(xinv_image),
              "x_times_x_inverse_is_one": inverse_ok, "tower_dims": tower,
              "power_series_dims": list(range(1, N + 2)),
              "projections_surjective": projections_onto,
              "structure_constants": q.to_json()["structure_constants"]}
    return Outcome("pass" if ok else "fail", result)


@register("bmun", "k[t]/(t^n−1) → k[t]/(t−1)", "completion",
          [Param("min_n", int, 2, "smallest n"), Param("max_n", int, 12, "largest n")])
def _bmun(p):
    from astk.completion import idempotent_split

    rows, ok = [], True
    for n in range(max(p["min_n"], 1), p["max_n"] + 1):
        alg = FinDimAlgebra.cyclic(n)
        s = idempotent_split(alg)
        e = s.local_idempotent() if s.aug_local is not None else None
        t = alg.basis_vector(1) if n > 1 else alg.unit
        local_dim = s.factor_dims[s.aug_local] if e is not None else None
        acts_as_one = e is not None and alg.mul(t, e) == e
        good = s.validate() and s.complete and local_dim == 1 and acts_as_one
        ok = ok and good
        rows.append({"n": n, "factor_dims": list(s.factor_dims), "local_factor_dim": local_dim,
                     "t_acts_as_one": acts_as_one, "local_idempotent": _vec(e or ()),
                     "factors": [f for f in s.to_json()["factors"]], "valid": good})
    return Outcome("pass" if ok else "fail", {"splits": rows})


def _eigen_solutions(ell: int, D: int) -> dict:
    """Solutions of psi_ell(f) = lambda f over Laurent polynomials with |exponents| <= D."""
    import sympy

    from astk.groups.repring import adams, rep_ring
    from astk.groups.spec import SplitTorus

    pres = rep_ring(SplitTorus(1))
    x = pres.gen("x")
    small = list(range(-D, D + 1))
    big = list(range(-ell * D, ell * D + 1))
    psi_cols = []
    for e in small:
        img = adams(ell, x ** e).value
        psi_cols.append([img.coeff((k,)) for k in big])

    def embed(v):
        col = [Fraction(0)] * len(big)
        for e, c in zip(small, v):
            col[big.index(e)] = c
        return col

    def psi(v):
        return [sum(c * col[i] for c, col in zip(v, psi_cols)) for i in range(len(big))]

    # largest subspace W of V_D with psi(W) <= W: any eigenvector lies in it
    W = [[Fraction(int(i == j)) for i in range(len(small))] for j in range(len(small))]
    while True:
        cols = [psi(w) for w in W] + [[-c for c in embed(w)] for w in W]
        null = ExactMatrix.from_columns(cols, rows=len(big)).nullspace() if cols else []
        k = len(W)
        new = [[sum(v[i] * W[i][j] for i in range(k)) for j in range(len(small))]
               for v in null]
        basis = ExactMatrix.from_rows(new, len(small)).transpose().column_space() if new else []
        basis = [list(b) for b in basis]
        if len(basis) == len(W):
            break
        W = basis
    k = len(W)
    if k:
        Wm = ExactMatrix.from_columns([embed(w) for w in W], rows=len(big))
        A = [Wm.solve(psi(w)) for w in W]
        mat = sympy.Matrix(k, k, lambda i, j: sympy.Rational(A[j][i].numerator,
                                                             A[j][i].denominator))
        eig = []
        for val, mult, vecs in mat.eigenvects():
            if not val.is_rational:
                continue
            space = []
            for v in vecs:
                f = [sum(Fraction(int(sympy.fraction(v[i])[0]), int(sympy.fraction(v[i])[1]))
                         * W[i][j] for i in range(k)) for j in range(len(small))]
                space.append({str(e): format_coeff(c) for e, c in zip(small, f) if c})
            eig.append({"eigenvalue": str(val), "eigenspace": space})
    else:
        eig = []
    constants_only = (k == 1 and W[0][small.index(0)] != 0
                      and all(c == 0 for e, c in zip(small, W[0]) if e != 0)
                      and len(eig) == 1 and eig[0]["eigenvalue"] == "1")
    return {"ell": ell, "degree": D, "invariant_subspace_dim": k, "eigen": eig,
            "solutions_are_constants": constants_only}


@register("adams", "f(x^ℓ) = ℓ^j·f(x)", "completion",
          [Param("precision", int, 12, "series precision"),
           Param("max_j", int, 6, "largest power of log"),
           Param("ells", str, "2,3,5", "comma-separated Adams indices"),
           Param("degree", int, 6, "Laurent degree bound for the eigenproblem")])
def _adams(p):
    P, J = p["precision"], p["max_j"]
    try:
        ells = [int(s) for s in p["ells"].split(",") if s.strip()]
    except ValueError as exc:
        raise UsageError("ells must be a comma-separated list of integers") from exc
    if any(e < 1 for e in ells):
        raise UsageError("Adams indices must be positive")
    u = TruncSeries.var(("u",), P, "u")
    eigen_eq = []
    for ell in ells:
        sub = (u + 1) ** ell - 1
        for j in range(J + 1):
            f = log1p_power(j, P)
            lhs = series_compose(f, sub)
            eigen_eq.append({"ell": ell, "j": j, "holds": lhs == f.scale(ell ** j)})
    # log(1+u)^j starts at u^j, so only j <= P survive truncation at precision P
    V = min(J, P)
    columns = [log1p_power(j, P) for j in range(V + 1)]
    matrix = [[col.coeff((i,)) for col in columns] for i in range(P + 1)]
    leading = []
    for j, col in enumerate(columns):
        rows = [i for i in range(P + 1) if matrix[i][j]]
        leading.append(rows[0] if rows else None)
    echelon = leading == list(range(V + 1)) and all(matrix[j][j] != 0 for j in range(V + 1))
    rank = ExactMatrix.from_rows(matrix, V + 1).rank()
    eig = [_eigen_solutions(ell, p["degree"]) for ell in sorted(set([2] + ells))]
    ok = (all(e["holds"] for e in eigen_eq) and echelon and rank == V + 1
          and all(e["solutions_are_constants"] for e in eig))
    result = {"eigen_equation": eigen_eq,
              "log_matrix": {"shape": [P + 1, V + 1], "visible_max_j": V,
                             "leading_rows": leading,
                             "echelon": echelon, "rank": rank,
                             "entries": [_vec(r) for r in matrix]},
              "eigenproblem": eig, "notes": [LOG_POWER_NOTE]}
    return Outcome("pass" if ok else "fail", result)


@register("change-of-groups", "I_H^n ⊂ I_G·K_0(BH) ⊂ I_H", "completion",
          [Param("pair", str, "all", "mu_n-gm, t1-sl2, t2-gl2 or all"),
           Param("max_exponent", int, 6, "largest n searched"),
           Param("n", int, 3, "n for mu_n-gm"),
           Param("oracle_bound", int, 6, "degree bound of the linear-algebra oracle")])
def _change_of_groups(p):
    from astk.containment import PAIRS, ContainmentReport, containment_exponent, pair_groups

    expected = {"mu_n-gm": (1, 1), "t1-sl2": (2, 2), "t2-gl2": (1, 4)}
    names = list(PAIRS) if p["pair"] == "all" else [p["pair"]]
    rows, certs, statuses = [], [], []
    for name in names:
        if name not in PAIRS:
            raise UsageError(f"unknown pair {name!r}; choose from {', '.join(PAIRS)} or all")
        if name == "mu_n-gm" and p["n"] < 1:
            raise UsageError("n must be >= 1")
        h, g = pair_groups(name, p["n"])
        rep = containment_exponent(h, g, p["max_exponent"], p["oracle_bound"] or None)
        data = rep.to_json()
        valid = rep.validate()
        revalid = ContainmentReport.from_json(json.loads(json.dumps(data))).validate()
        lo, hi = expected[name]
        in_range = rep.exponent is not None and lo <= rep.exponent <= hi
        oracle_ok = (not rep.oracle) or (rep.oracle["forward_found"]
                                          and rep.oracle["below_rejected"])
        if rep.status == "undetermined":
            status = "undetermined"
        else:
            status = "pass" if valid and revalid and in_range and oracle_ok else "fail"
        statuses.append(status)
        rows.append({"pair": name, "groups": list(rep.pair), "status": status,
                     "exponent": rep.exponent, "expected_range": [lo, hi],
                     "certificates_validate": valid, "revalidate_after_json": revalid,
                     "oracle": rep.oracle, "below": data["below"],
                     "reverse_augmentations": data["reverse_augmentations"]})
        certs.append({"pair": name, "report": data})
    return Outcome(combine_status(statuses), {"pairs": rows}, certs)


@register("complete", "R/I^{N+1}", "completion",
          [Param("ring", str, None, "ring JSON (inline or path)"),
           Param("ideal", str, None, "ideal JSON: list of term lists, or {generators, relations}"),
           Param("precision", int, 4, "truncation N")], acceptance=False)
def _complete(p):
    from astk.completion import complete_truncated

    if p["ring"] is None:
        ring = Ring(("x",), "laurent", "Z", (0,))
    else:
        ring = Ring.from_json(load_json_arg(p["ring"]))
    relations = []
    if p["ideal"] is None:
        gens = [g - 1 for g in ring.gens()]
    else:
        data = load_json_arg(p["ideal"])
        if isinstance(data, dict):
            relations = [LaurentPoly.from_json(ring, r) for r in data.get("relations", [])]
            data = data.get("generators", [])
        gens = [LaurentPoly.from_json(ring, g) for g in data]
    N = p["precision"]
    q = complete_truncated(ring, IdealGens(ring, tuple(gens)), N, relations)
    tower = [complete_truncated(ring, IdealGens(ring, tuple(gens)), s, relations).dim
             for s in range(N + 1)]
    samples = [(a, b) for a in ring.gens() for b in ring.gens()]
    hom = q.check_homomorphism(samples)
    ok = hom and all(a <= b for a, b in zip(tower, tower[1:]))
    return Outcome("pass" if ok else "fail",
                   {"quotient": q.to_json(), "tower_dims": tower, "homomorphism": hom})


def _algebra_arg(text: str) -> FinDimAlgebra:
    key = text.strip().lower()
    if key.startswith("cyclic") and key[6:].isdigit():
        return FinDimAlgebra.cyclic(int(key[6:]))
    if key in ("dual", "dual-numbers", "q[eps]"):
        return FinDimAlgebra.dual_numbers()
    return FinDimAlgebra.from_json(load_json_arg(text))


@register("split", "k[t]/(t^n−1) → k[t]/(t−1)", "completion",
          [Param("algebra", str, "cyclic6", "algebra JSON, cyclic<n> or dual"),
           Param("seed", int, 0, "seed for the separating-element search")], acceptance=False)
def _split(p):
    from astk.algebra import univariate as up
    from astk.completion import idempotent_split

    alg = _algebra_arg(p["algebra"])
    s = idempotent_split(alg, seed=p["seed"])
    generating = up.degree(s.min_poly) == alg.dim
    status = "pass" if s.validate() and generating else (
        "fail" if not s.validate() else "undetermined")
    return Outcome(status, {"split": s.to_json(), "separating_element_generates": generating})


@register("koszul-check", "colim_n Spec(A/I^n)", "completion",
          [Param("vars", int, 2, "number of variables"),
           Param("precision", int, 4, "truncation N")])
def _koszul(p):
    from astk.koszul import koszul_completion_check

    k, N = p["vars"], p["precision"]
    if k < 1:
        raise UsageError("vars must be >= 1")
    names = ("x", "y", "z")[:k] if k <= 3 else tuple(f"x{i}" for i in range(1, k + 1))
    ring = Ring(names, "poly", "Q")
    rep = koszul_completion_check(ring, ring.gens(), N)
    expected = comb(N + k, k)
    ok = rep.status == "pass" and rep.adic_dim == expected
    result = rep.to_json()
    result["expected_dim"] = expected
    return Outcome("pass" if ok else "fail", result,
                   [c.to_json() for c in rep.powers_in_ideal])


# ----- trace ----------------------------------------------------------------------

@register("trace", "tr: R(G)⊗_Z k → O(G)^G", "trace",
          [Param("group", str, "s3", "group spec or group file"),
           Param("element", str, "regular", "element JSON or 'regular'")], acceptance=False)
def _trace(p):
    from astk.groups.repring import rep_ring
    from astk.trace import class_function_ring, dennis_trace

    g = parse_group(p["group"])
    pres = rep_ring(g)
    if p["element"] == "regular" and not (pres.is_finite_free or pres.model == "cyclic-quotient"):
        v = pres.ideal_elements()[0] + 1 if pres.ideal_elements() else pres.one()
    else:
        v = parse_element(pres, p["element"])
    cf = class_function_ring(g)
    tr = dennis_trace(v)
    at_unit = cf.unit_evaluation(tr)
    aug = pres.augmentation(v)
    square = dennis_trace(v * v) == tr * tr
    one = dennis_trace(pres.one()) == cf.one()
    ok = at_unit == aug and square and one
    return Outcome("pass" if ok else "fail",
                   {"group": pres.label, "element": v.to_json(), "trace": tr.to_json(),
                    "class_function_ring": cf.to_json(), "value_at_identity": at_unit,
                    "augmentation": aug, "multiplicative_on_square": square,
                    "unital": one})


TRACE_SUITE = ("gl2", "sl2", "s3", "mu2", "mu3", "mu4", "mu5", "mu6")


@register("trace-radical", "J_G^n ⊂ tr(I_G)·O(G)^G ⊂ J_G", "trace",
          [Param("group", str, None, "group spec(s), comma-separated; default suite"),
           Param("max_exponent", int, 3, "largest n searched")])
def _trace_radical(p):
    from astk.groups.spec import GL, SL2
    from astk.trace import radical_compare

    rows, certs, statuses = [], [], []
    for name, g in _groups(p["group"], TRACE_SUITE):
        rep = radical_compare(g, p["max_exponent"])
        valid = rep.validate()
        expect_one = isinstance(g, (GL, SL2))
        if rep.status == "undetermined":
            status = "undetermined"
        elif valid and (not expect_one or rep.exponent == 1):
            status = "pass"
        else:
            status = "fail"
        statuses.append(status)
        data = rep.to_json()
        rows.append({"group": rep.group, "status": status, "exponent": rep.exponent,
                     "certificates_validate": valid, "split_table": rep.split_table})
        certs.append({"group": rep.group, "forward": data["forward"],
                      "reverse": data["reverse"]})
    return Outcome(combine_status(statuses), {"groups": rows}, certs)


UNIPOTENT_SUITE = ("gm", "t2", "mu2", "mu3", "mu4", "mu5", "mu6", "s3")


@register("unipotent-check", "{e} → Uni(G)^{red}", "trace",
          [Param("group", str, None, "group spec(s), comma-separated; default suite"),
           Param("power_bound", int, 4, "largest power tried for radical membership")])
def _unipotent(p):
    from astk.trace import unipotent_reduced_check

    rows, certs, statuses = [], [], []
    for name, g in _groups(p["group"], UNIPOTENT_SUITE):
        rep = unipotent_reduced_check(g, p["power_bound"])
        ok = rep.holds and rep.validate()
        statuses.append("pass" if ok else "fail")
        data = rep.to_json()
        rows.append({"group": rep.group, "holds": rep.holds, "validate": rep.validate(),
                     "function_ring": rep.ring, "quotient_dim": rep.quotient_dim,
                     "zero_set": list(rep.zero_set), "diagnostics": rep.diagnostics})
        certs.append({"group": rep.group, "j_in_ie": data["j_in_ie"],
                      "ie_in_radical": data["ie_in_radical"]})
    return Outcome(combine_status(statuses), {"groups": rows}, certs)


# ----- descent --------------------------------------------------------------------

CECH_SUITE = ("mu1", "mu2", "mu3", "mu4", "mu5", "mu6")


@register("cech", "lim_{[m]∈Δ} HH(μ_n^{×m}/k)", "cech",
          [Param("group", str, None, "mu<n> or bundled group; default mu1..mu6"),
           Param("group_file", str, None, "group JSON file"),
           Param("max_degree", int, 2, "largest cohomological degree D"),
           Param("truncation", int, 4, "cosimplicial truncation M")])
def _cech(p):
    from astk.cech import cech_nerve, hopf_from_group, normalized_cohomology
    from astk.groups.finite import load_group_file

    D, M = p["max_degree"], p["truncation"]
    if M < 2 or D >= M:
        raise UsageError("need truncation >= 2 and max degree < truncation")
    if p["group_file"] is not None:
        groups = [(p["group_file"], load_group_file(p["group_file"]))]
    else:
        groups = _groups(p["group"], CECH_SUITE)
    rows, statuses = [], []
    for name, g in groups:
        rep = normalized_cohomology(cech_nerve(hopf_from_group(g), M), D, g)
        ok = (rep.cohomology[0] == 1 and all(h == 0 for h in rep.cohomology[1:])
              and rep.consistent and rep.coinvariant_dim == 1)
        statuses.append("pass" if ok else "fail")
        row = rep.to_json()
        row["status"] = "pass" if ok else "fail"
        rows.append(row)
    return Outcome(combine_status(statuses), {"groups": rows})


@register("descent-gap", "HH(Bμ_n/k) ≃ k[Z/n] vs O(Bμ_n) ≃ k", "cech",
          [Param("group", str, None, "mu<n>, comma-separated; default mu1..mu6"),
           Param("n", int, None, "shorthand for --group mu<n>")])
def _descent_gap(p):
    from astk.cech import descent_gap

    text = p["group"] if p["n"] is None else f"mu{p['n']}"
    rows, statuses = [], []
    for name, g in _groups(text, CECH_SUITE):
        rep = descent_gap(g)
        ok = rep.consistent and (rep.genuine_dim, rep.totalization_h0, rep.completed_dim) == (
            rep.n, 1, 1)
        statuses.append("pass" if ok else "fail")
        row = rep.to_json()
        row["status"] = "pass" if ok else "fail"
        rows.append(row)
    return Outcome(combine_status(statuses), {"groups": rows})


# ----- counterexample --------------------------------------------------------------

@register("counterexample", "HC^-(R) ⊕ Ω HH(R)[x] vs HC^-(R) ⊕ Ω HH(R)[[x]]", "shadow",
          [Param("degree", int, 4, "degree bound N"),
           Param("precision", int, 4, "x-degree truncation P"),
           Param("base", str, "Q[eps]", "Q or Q[eps]")])
def _counterexample(p):
    from astk.shadow import (RationalSeries, bga_shadow, hh_bar_oracle, hh_dual_numbers,
                             normalize_base, pullback_defect)

    N, P = p["degree"], p["precision"]
    if N < 1:
        raise UsageError("degree must be >= 1")
    base = normalize_base(p["base"])
    hh = hh_dual_numbers(N)
    oracle = hh_bar_oracle(FinDimAlgebra.dual_numbers(), N)
    expected = (2,) + (1,) * N
    shadow = bga_shadow(base, N, P)
    defect = pullback_defect(N, base, P)
    control = pullback_defect(N, "Q", P)
    geometric = RationalSeries.geometric()
    injective = all(d.inclusion_kernel == 0 for d in shadow.degrees)
    if base == "Q[eps]":
        witness_ok = ([w.degree for w in defect.witnesses] == list(range(1, N + 1))
                      and all(w.verify() and w.series == geometric for w in defect.witnesses)
                      and not defect.cartesian)
    else:
        witness_ok = defect.cartesian and not defect.witnesses
    control_ok = control.cartesian and not control.witnesses
    ok = hh.dims == oracle.dims == expected and witness_ok and control_ok and injective
    result = {"hh_dual_numbers": hh.to_json(), "bar_oracle": oracle.to_json(),
              "shadow": shadow.to_json(), "defect": defect.to_json(),
              "control": control.to_json(), "inclusion_injective": injective}
    return Outcome("pass" if ok else "fail", result,
                   [w.to_json() for w in defect.witnesses])


ACCEPTANCE = tuple(name for name, d in REGISTRY.items() if d.acceptance)


def _run_named(args) -> Report:
    name, params = args
    return run_check(name, params)


def verify_all(jobs: int = 1, exclude=(), precision: int | None = None) -> tuple:
    """Run every acceptance check with default parameters.

    ``precision`` overrides the precision parameter of every check that has one.
    Returns ``(status, reports, excluded)`` with reports ordered by check name.
    """
    exclude = sorted(set(exclude))
    unknown = [e for e in exclude if e not in REGISTRY]
    if unknown:
        raise UsageError(f"cannot exclude unknown check(s) {', '.join(unknown)}")
    if precision is not None and precision < 0:
        raise UsageError("precision must be >= 0")
    names = sorted(n for n in ACCEPTANCE if n not in exclude)
    jobs_list = []
    for n in names:
        has = any(p.name == "precision" for p in REGISTRY[n].params)
        jobs_list.append((n, {"precision": precision} if precision is not None and has else {}))
    if jobs > 1 and len(names) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_named, jobs_list))
    else:
        reports = [_run_named(j) for j in jobs_list]
    reports = sorted(reports, key=lambda r: r.check)
    return combine_status(r.status for r in reports), reports, exclude
