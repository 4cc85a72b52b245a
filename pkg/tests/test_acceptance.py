"""Acceptance criteria 1-10.

Each test times the real computation after warming imports only. It prints
one PASS/FAIL line per criterion.
Run alone with ``pytest tests/test_acceptance.py -v``.
"""
import json
import os
import subprocess
import sys
import time
from pathlib import Path

import pytest

from astk.algebra.groebner import MembershipCertificate
from astk.checks import run_check
from astk.containment import ContainmentReport
from astk.trace import VectorCertificate

TESTS = Path(__file__).parent
PROPERTY_FILES = ("test_poly.py", "test_groebner.py", "test_linalg.py", "test_series.py",
                  "test_groups.py", "test_repring.py", "test_completion.py",
                  "test_containment.py", "test_koszul.py", "test_trace.py", "test_cech.py",
                  "test_shadow.py")


@pytest.fixture(scope="module", autouse=True)
def warm_imports():
    import sympy  # noqa: F401

    import astk.cech  # noqa: F401
    import astk.completion  # noqa: F401
    import astk.containment  # noqa: F401
    import astk.koszul  # noqa: F401
    import astk.shadow  # noqa: F401
    import astk.trace  # noqa: F401


def timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def verdict(capsys, n, title, checks, elapsed, limit):
    failed = [name for name, ok in checks if not ok]
    if elapsed >= limit:
        failed.append(f"runtime {elapsed:.3f} s >= {limit} s")
    line = (f"{'PASS' if not failed else 'FAIL'} criterion {n}: {title} "
            f"[{elapsed:.3f} s / limit {limit} s]")
    if failed:
        line += " failed: " + "; ".join(failed)
    with capsys.disabled():
        print("\n" + line)
    assert not failed, line


def test_criterion_01_bgm_k(capsys):
    rep, dt = timed(run_check, "bgm-k", {"precision": 8})
    r = rep.result
    checks = [
        ("status", rep.status == "pass"),
        ("rank 9", r["rank"] == 9),
        ("free over Z", r["integral"]),
        ("x -> 1+u", r["x_image"] == ["1/1", "1/1"] + ["0/1"] * 7),
        ("x * x^-1 = 1", r["x_times_x_inverse_is_one"]),
        ("degreewise match with k[[u]]", r["tower_dims"] == list(range(1, 10))),
        ("tower projections onto", r["projections_surjective"]),
    ]
    verdict(capsys, 1, "bgm-k completion of Z[x,1/x] at (x-1) has rank 9", checks, dt, 0.1)


def test_criterion_02_bmun(capsys):
    rep, dt = timed(run_check, "bmun", {"min_n": 2, "max_n": 12})
    rows = rep.result["splits"]
    checks = [("status", rep.status == "pass"),
              ("n = 2..12", [row["n"] for row in rows] == list(range(2, 13)))]
    for row in rows:
        checks.append((f"n={row['n']} local dim 1",
                       row["local_factor_dim"] == 1 and row["t_acts_as_one"] and row["valid"]))
    verdict(capsys, 2, "bmun augmentation-local factor is Q with t = 1", checks, dt, 1.0)


def test_criterion_03_adams(capsys):
    rep, dt = timed(run_check, "adams", {"precision": 12, "max_j": 6, "ells": "2,3,5"})
    r = rep.result
    eq = r["eigen_equation"]
    lm = r["log_matrix"]
    psi2 = [e for e in r["eigenproblem"] if e["ell"] == 2]
    checks = [
        ("status", rep.status == "pass"),
        ("21 eigen-equations hold", len(eq) == 21 and all(e["holds"] for e in eq)),
        ("13x7 matrix", lm["shape"] == [13, 7]),
        ("echelon with diagonal pivots", lm["echelon"] and lm["leading_rows"] == list(range(7))),
        ("rank 7", lm["rank"] == 7),
        ("psi_2 eigenvectors are constants",
         bool(psi2) and psi2[0]["degree"] == 6 and psi2[0]["solutions_are_constants"]),
    ]
    verdict(capsys, 3, "adams log-power eigen-equations and scalar eigenspace", checks, dt, 1.0)


def test_criterion_04_change_of_groups(capsys):
    rep, dt = timed(run_check, "change-of-groups",
                    {"pair": "all", "max_exponent": 6, "oracle_bound": 6})
    rows = {row["pair"]: row for row in rep.result["pairs"]}
    checks = [("status", rep.status == "pass"),
              ("mu_n in G_m: n = 1", rows["mu_n-gm"]["exponent"] == 1),
              ("T1 in SL2: n = 2", rows["t1-sl2"]["exponent"] == 2),
              ("T2 in GL2: n <= 4", 1 <= rows["t2-gl2"]["exponent"] <= 4)]
    for name, row in rows.items():
        checks.append((f"{name} certificates", row["certificates_validate"]))
        checks.append((f"{name} degree-6 oracle",
                       row["oracle"]["bound"] == 6 and row["oracle"]["forward_found"]
                       and row["oracle"]["below_rejected"]))
    for entry in rep.certificates:
        again = ContainmentReport.from_json(json.loads(json.dumps(entry["report"])))
        checks.append((f"{entry['pair']} offline revalidation", again.validate()))
    verdict(capsys, 4, "change-of-groups containment exponents with certificates",
            checks, dt, 10.0)


def _load_cert(data):
    if "ring" in data:
        return MembershipCertificate.from_json(data)
    return VectorCertificate.from_json(data)


def test_criterion_05_trace_radical(capsys):
    rep, dt = timed(run_check, "trace-radical", {"max_exponent": 3})
    rows = {row["group"]: row for row in rep.result["groups"]}
    checks = [("status", rep.status == "pass"),
              ("GL2 n = 1", rows["gl2"]["exponent"] == 1),
              ("SL2 n = 1", rows["sl2"]["exponent"] == 1),
              ("S3 n <= 3", rows["s3"]["exponent"] <= 3)]
    for n in range(2, 7):
        checks.append((f"mu{n} n <= 3", rows[f"mu{n}"]["exponent"] <= 3))
    offline = 0
    for entry in rep.certificates:
        certs = [f["certificate"] for f in entry["forward"]] + list(entry["reverse"])
        for c in certs:
            cert = _load_cert(json.loads(json.dumps(c)))
            checks.append((f"{entry['group']} certificate", cert.validate()))
            offline += 1
    checks.append(("certificates present", offline > 0))
    verdict(capsys, 5, "trace-radical J^n in tr(I_G) in J", checks, dt, 5.0)


def test_criterion_06_unipotent(capsys):
    rep, dt = timed(run_check, "unipotent-check", {})
    rows = {row["group"]: row for row in rep.result["groups"]}
    want = ["gm", "t2", "mu2", "mu3", "mu4", "mu5", "mu6", "s3"]
    checks = [("status", rep.status == "pass"), ("suite", sorted(rows) == sorted(want))]
    for name in want:
        row = rows.get(name, {})
        checks.append((f"{name} radical = I_e",
                       row.get("holds") and row.get("validate") and row.get("quotient_dim") == 1))
    verdict(capsys, 6, "unipotent radical of J_G O(G) is I_e", checks, dt, 2.0)


def test_criterion_07_cech(capsys):
    t0 = time.perf_counter()
    cech = run_check("cech", {"truncation": 4, "max_degree": 2})
    gap = run_check("descent-gap", {})
    dt = time.perf_counter() - t0
    crow = {row["group"]: row for row in cech.result["groups"]}
    grow = {row["n"]: row for row in gap.result["groups"]}
    checks = [("cech status", cech.status == "pass"), ("gap status", gap.status == "pass"),
              ("largest level 1296", crow["mu6"]["level_dims"][-1] == 1296)]
    for n in range(1, 7):
        c = crow[f"mu{n}"]
        checks.append((f"mu{n} H = (1,0,0)", c["cohomology"] == {"0": 1, "1": 0, "2": 0}))
        checks.append((f"mu{n} gap ({n},1,1)", grow[n]["triple"] == [n, 1, 1]))
    verdict(capsys, 7, "cech normalized cohomology and descent gap for mu_n, n <= 6",
            checks, dt, 30.0)


def test_criterion_08_counterexample(capsys):
    rep, dt = timed(run_check, "counterexample", {"degree": 4})
    r = rep.result
    hh = {"0": 2, "1": 1, "2": 1, "3": 1, "4": 1}
    wit = r["defect"]["witnesses"]
    checks = [
        ("status", rep.status == "pass"),
        ("HH(Q[eps]) = 2,1,1,1,1", r["hh_dual_numbers"] == hh),
        ("bar oracle agrees", r["bar_oracle"] == hh),
        ("witness degrees 1..4", [w["degree"] for w in wit] == [1, 2, 3, 4]),
        ("witness 1/(1-x)", all(w["series"]["num"] == ["1/1"]
                                and w["series"]["den"] == ["1/1", "-1/1"] for w in wit)),
        ("witnesses valid", all(w["valid"] for w in wit)),
        ("control over Q cartesian", r["control"]["cartesian"] and not r["control"]["witnesses"]),
    ]
    verdict(capsys, 8, "counterexample pullback defect over the dual numbers", checks, dt, 5.0)


def test_criterion_09_koszul(capsys):
    rep, dt = timed(run_check, "koszul-check", {"vars": 2, "precision": 4})
    r = rep.result
    checks = [("status", rep.status == "pass"),
              ("Koszul side 15", r["koszul_quotient_dim"] == 15),
              ("adic side 15", r["adic_dim"] == 15),
              ("isomorphism", r["isomorphism_witness"] == {"rank": 15, "multiplicative": True})]
    verdict(capsys, 9, "koszul Q[x,y] at (x,y), N = 4", checks, dt, 1.0)


def test_criterion_10_property_suites(capsys):
    env = dict(os.environ)
    env.setdefault("ASTK_SEED", "20240611")
    src = str(TESTS.parent / "src")
    env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")
    cmd = [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
           *[str(TESTS / f) for f in PROPERTY_FILES]]
    t0 = time.perf_counter()
    proc = subprocess.run(cmd, capture_output=True, text=True, cwd=TESTS.parent, env=env)
    dt = time.perf_counter() - t0
    tail = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr
    checks = [("suite exit code 0", proc.returncode == 0),
              ("no failures", " failed" not in tail and "passed" in tail)]
    verdict(capsys, 10, f"property suites, ASTK_SEED={env['ASTK_SEED']} ({tail})",
            checks, dt, 60.0)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
