"""Acceptance criteria, one test each.

Every test records a one-line PASS/FAIL verdict; ``conftest.py`` prints the
lines at the end of the pytest run.  ``python tests/test_acceptance.py``
runs the same checks without pytest.
"""

import json
import math
import random
import time
from math import factorial

import numpy as np

from grv import specfun as sf
from grv.catalog import entry, leibniz_scaled_gamma_derivative, scaled_gamma_derivative
from grv.cli import run
from grv.verifier import (
    ToleranceConfig,
    cross_check_derivative_formulas,
    verify_all,
    verify_entry,
)

VERDICTS: dict[int, str] = {}

CATALOG_SEED = 42
CATALOG_SAMPLES = 5
TIME_LIMIT_S = 60.0


def _verdict(number: int, ok: bool, text: str) -> None:
    VERDICTS[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {text}"
    assert ok, VERDICTS[number]


def _catalog_report_json(tmp_path, name):
    out = tmp_path / name
    start = time.perf_counter()
    code = run(
        ["verify", "--all", "--seed", str(CATALOG_SEED), "--samples", str(CATALOG_SAMPLES), "--format", "json", "--out", str(out)]
    )
    return code, out.read_bytes(), time.perf_counter() - start


def test_criterion_1_full_catalog(tmp_path):
    code, raw, elapsed = _catalog_report_json(tmp_path, "c1.json")
    data = json.loads(raw)
    s = data["summary"]
    n = len(data["records"])
    entries_seen = len({r["id"] for r in data["records"]})
    tol = data["tolerances"]
    ok = (
        code == 0
        and s["pass"] == n
        and n >= 280
        and entries_seen >= 56
        and tol["rel_pass"] == 1e-8
        and tol["abs_floor"] == 1e-10
        and elapsed < TIME_LIMIT_S
    )
    _verdict(1, ok, f"{s['pass']}/{n} records pass over {entries_seen} entries in {elapsed:.2f} s")


def _direct_zeta(s: int, terms: int = 2_000_000) -> float:
    """Partial sum plus the midpoint integral tail, error O(terms**-(s+2))."""
    k = np.arange(1, terms + 1, dtype=float)
    partial = float(np.sum((k**-s)[::-1]))
    return partial + (terms + 0.5) ** (1 - s) / (s - 1)


def test_criterion_2_constants():
    checks = []
    checks.append(abs(sf.gamma(0.5) ** 2 - math.pi) <= 1e-12)
    worst_half = max(
        abs(sf.gamma(m + 0.5) / (sf.SQRT_PI * factorial(2 * m) / (4**m * factorial(m))) - 1) for m in range(16)
    )
    checks.append(worst_half <= 1e-12)
    r = verify_entry(entry("4.229.1"), {})
    checks.append(abs(r.lhs + sf.EULER_GAMMA) <= 1e-9)
    r3 = verify_entry(entry("4.215.3"), {})
    r4 = verify_entry(entry("4.215.4"), {})
    checks.append(abs(r3.lhs - sf.SQRT_PI / 2) <= 1e-10)
    checks.append(abs(r4.lhs - sf.SQRT_PI) <= 1e-10)
    _verdict(
        2,
        all(checks),
        f"Γ(½)²-π={sf.gamma(0.5) ** 2 - math.pi:.1e}, half-integer rel {worst_half:.1e}, "
        f"4.229.1 err {abs(r.lhs + sf.EULER_GAMMA):.1e}, 4.215.3/4 err "
        f"{abs(r3.lhs - sf.SQRT_PI / 2):.1e}/{abs(r4.lhs - sf.SQRT_PI):.1e}",
    )


def test_criterion_3_functional_suites():
    rng = random.Random(2024)
    rec = [
        abs(sf.gamma(a + 1) / (a * sf.gamma(a)) - 1)
        for a in (math.exp(rng.uniform(math.log(1e-2), math.log(50))) for _ in range(200))
    ]
    dup = [
        abs(sf.gamma(x + 0.5) * sf.gamma(x) * 2 ** (2 * x - 1) / (sf.gamma(2 * x) * sf.SQRT_PI) - 1)
        for x in (rng.uniform(0.1, 30) for _ in range(100))
    ]
    refl = [abs(sf.gamma(j / 100) * sf.gamma(1 - j / 100) * math.sin(math.pi * j / 100) / math.pi - 1) for j in range(1, 100)]
    half = [abs(sf.gamma(m + 0.5) / (sf.SQRT_PI * factorial(2 * m) / (4**m * factorial(m))) - 1) for m in range(16)]
    worst = {"recurrence": max(rec), "duplication": max(dup), "reflection": max(refl), "gammahalf": max(half)}
    ok = all(v <= 1e-11 for v in worst.values())
    _verdict(3, ok, ", ".join(f"{k} {v:.1e}" for k, v in worst.items()))


def test_criterion_4_polygamma_zeta_chain():
    worst_chain = 0.0
    worst_oracle = 0.0
    for n in range(1, 7):
        zeta = sf.hurwitz_zeta(n + 1, 1.0)
        oracle = _direct_zeta(n + 1)
        worst_oracle = max(worst_oracle, abs(zeta - oracle) / oracle)
        expected = (-1) ** (n + 1) * factorial(n) * oracle
        worst_chain = max(worst_chain, abs(sf.polygamma(n, 1.0) - expected) / abs(expected))
    ok = worst_chain <= 1e-10 and worst_oracle <= 1e-10
    _verdict(4, ok, f"ψ^(n)(1) vs direct-sum ζ rel {worst_chain:.1e}, ζ vs oracle rel {worst_oracle:.1e}")


def test_criterion_5_derivative_cross_check():
    report = cross_check_derivative_formulas()
    grid_ok = report.summary["pass"] == 32 and len(report.records) == 32
    worst_fd = max(r.rel_err for r in report.records)
    worst_leibniz = 0.0
    for n in range(1, 5):
        for a in (0.5, 1.0, 2.5, 4.0):
            for mu in (0.5, 1.0, 2.0, 5.0):
                leib = leibniz_scaled_gamma_derivative(n, a, mu)
                rec = scaled_gamma_derivative(n, a, mu)
                worst_leibniz = max(worst_leibniz, abs(leib - rec) / max(abs(rec), 1e-300))
    ok = grid_ok and worst_fd <= 1e-4 and worst_leibniz <= 1e-10
    _verdict(5, ok, f"finite-difference rel {worst_fd:.1e} on 32 points, Leibniz vs recurrence rel {worst_leibniz:.1e}")


def test_criterion_6_negative_b_transformation():
    # the n = 2, b = -2 sides are ~7e-29, so the comparison is purely relative
    tol = ToleranceConfig(rel_pass=1e-7, abs_floor=1e-290, quad_abs=1e-300, quad_rel=1e-10)
    worst = 0.0
    ok = True
    for n in (1, 2):
        for b in (-0.5, -2.0):
            r = verify_entry(entry("3.324.2#bneg"), {"b": b, "n": n}, tol)
            ok &= r.status == "pass" and r.rel_err <= 1e-7
            worst = max(worst, r.rel_err)
    _verdict(6, ok, f"both sides agree to rel {worst:.1e} on (n, b) in {{1,2}} x {{-0.5,-2}}")


def test_criterion_7_limit():
    report = verify_all(7, 5, ids=["3.434.2#limit"])
    worst = max(r.abs_err for r in report.records)
    ok = len(report.records) == 5 and worst <= 1e-8 and report.summary["pass"] == 5
    _verdict(7, ok, f"Richardson limit vs ln(ν/μ) max abs err {worst:.1e} over 5 seeded pairs")


def test_criterion_8_determinism(tmp_path):
    _, first, _ = _catalog_report_json(tmp_path, "a.json")
    _, second, _ = _catalog_report_json(tmp_path, "b.json")
    _verdict(8, first == second, f"two full-catalog JSON reports byte-identical ({len(first)} bytes)")


if __name__ == "__main__":
    import tempfile
    from pathlib import Path

    tests = [
        test_criterion_1_full_catalog,
        test_criterion_2_constants,
        test_criterion_3_functional_suites,
        test_criterion_4_polygamma_zeta_chain,
        test_criterion_5_derivative_cross_check,
        test_criterion_6_negative_b_transformation,
        test_criterion_7_limit,
        test_criterion_8_determinism,
    ]
    with tempfile.TemporaryDirectory() as tmp:
        for number, test in enumerate(tests, start=1):
            try:
                test(Path(tmp)) if test.__code__.co_argcount else test()
            except AssertionError:
                pass
            print(VERDICTS.get(number, f"criterion {number}: FAIL  (raised)"))
