import json
import math

import pytest

from grv import specfun as sf
from grv.catalog import ParameterAssignment, entries, entry, leibniz_scaled_gamma_derivative
from grv.verifier import (
    OutOfDomainError,
    ToleranceConfig,
    VerificationReport,
    cross_check_derivative_formulas,
    entry_seed,
    richardson_limit,
    verify_all,
    verify_entry,
)


def test_scaled_gamma_record():
    rec = verify_entry(entry("3.381.4"), {"a": 2.5, "mu": 1.7})
    assert rec.status == "pass"
    assert rec.rel_err <= 1e-9
    assert rec.rhs == pytest.approx(sf.gamma(2.5) * 1.7**-2.5, rel=1e-15)
    assert rec.evaluations > 0


def test_log_log_record():
    rec = verify_entry(entry("4.229.1"), {})
    assert rec.status == "pass"
    assert rec.lhs == pytest.approx(-0.5772156649, abs=1e-10)


def test_functional_record():
    rec = verify_entry(entry("FUNC:recurrence"), {"a": 0.75})
    assert rec.status == "pass" and rec.rel_err <= 1e-12
    assert rec.evaluations == 0


def test_frullani_record():
    rec = verify_entry(entry("3.434.2"), {"mu": 1, "nu": math.e**2})
    assert rec.rhs == pytest.approx(2.0, rel=1e-15)
    assert rec.status == "pass"


def test_transformation_record_integrates_both_sides():
    rec = verify_entry(entry("3.324.2#bneg"), {"b": -1.0, "n": 1})
    assert rec.status == "pass"
    assert rec.evaluations > 200
    # n = 1 has the closed form 2 * integral of exp(-(z^2 + 4)) = sqrt(pi) e^-4
    assert rec.rhs == pytest.approx(sf.SQRT_PI * math.exp(-4), rel=1e-12)


def test_limit_record():
    rec = verify_entry(entry("3.434.2#limit"), {"mu": 0.5, "nu": 3.0})
    assert rec.status == "pass"
    assert abs(rec.lhs - math.log(6.0)) <= 1e-8


def test_out_of_domain():
    with pytest.raises(OutOfDomainError):
        verify_entry(entry("3.381.4"), {"a": -1, "mu": 1})
    with pytest.raises(OutOfDomainError):
        verify_entry(entry("3.324.2"), {"b": -1, "n": 1})


def test_vanishing_case_of_4369_1():
    for a in (0.3, 1.0, 2.7, 5.5):
        rec = verify_entry(entry("4.369.1"), {"a": a, "mu": 1.0})
        assert rec.rhs == 0.0
        assert abs(rec.lhs) <= 1e-10 and rec.status == "pass"


def test_signed_totals_in_4355_family():
    report = verify_all(42, 10, ids=["4.355.3", "4.355.4"])
    for r in report.records:
        assert r.status == "pass"
        assert math.copysign(1, r.lhs) == math.copysign(1, r.rhs)


def test_exp_scale_equivalence():
    a = verify_entry(entry("3.481.1"), {"s": 1.7})
    b = verify_entry(entry("MOLL:exp-scale"), {"m": 1, "b": 1, "s": 1.7})
    assert abs(a.rhs - b.rhs) <= 1e-12


def test_overflowing_rhs_is_skipped():
    rec = verify_entry(entry("FUNC:recurrence"), {"a": 171.5})
    assert rec.status == "skipped"


def test_quadrature_budget_path():
    report = verify_all(1, 1, ToleranceConfig(quad_budget=50))
    assert report.summary["quad_no_converge"] > 0
    for r in report.records:
        if r.status == "fail":
            # a fail must be a genuine mismatch with converged quadrature
            assert r.evaluations <= 100 and r.abs_err > 1e-10


def test_full_run_passes():
    report = verify_all(42, 5)
    assert report.summary["fail"] == 0
    assert len(report.records) >= 280
    assert sum(report.summary.values()) == len(report.records)


def test_report_is_deterministic_and_ordered():
    a = verify_all(42, 2)
    b = verify_all(42, 2, workers=3)
    assert a.to_json() == b.to_json()
    assert a.to_csv() == b.to_csv()
    order = [e.id for e in entries()]
    positions = [order.index(r.entry_id) for r in a.records]
    assert positions == sorted(positions)


def test_subset_order_follows_catalog():
    report = verify_all(0, 1, ids=["4.215.1", "3.381.4", "3.381.4"])
    assert [r.entry_id for r in report.records] == ["3.381.4", "4.215.1"]


def test_json_schema_order():
    report = verify_all(42, 1, ids=["3.381.4"])
    data = json.loads(report.to_json())
    assert list(data) == ["version", "seed", "tolerances", "records", "summary"]
    assert list(data["records"][0]) == [
        "id", "params", "lhs", "rhs", "abs_err", "rel_err", "status", "evaluations",
    ]
    assert list(data["summary"]) == ["pass", "fail", "quad_no_converge", "skipped"]


def test_nonfinite_values_serialize_as_null():
    rec = verify_entry(entry("FUNC:recurrence"), {"a": 171.5})
    report = VerificationReport(0, ToleranceConfig(), (rec,))
    data = json.loads(report.to_json())
    assert data["records"][0]["lhs"] is None


def test_tolerance_config_validation():
    with pytest.raises(ValueError):
        ToleranceConfig(rel_pass=1e-8, quad_rel=1e-8)
    with pytest.raises(ValueError):
        ToleranceConfig(abs_floor=-1.0)
    t = ToleranceConfig().with_pass(rel_pass=1e-12)
    assert t.quad_rel <= 1e-13


def test_entry_seed_stable():
    assert entry_seed(42, "3.381.4") == entry_seed(42, "3.381.4")
    assert entry_seed(42, "3.381.4") != entry_seed(43, "3.381.4")


def test_richardson_removes_linear_and_quadratic_terms():
    g = lambda t: 3.0 + 2.0 * t - 5.0 * t * t
    assert richardson_limit(g) == pytest.approx(3.0, abs=1e-14)


def test_cross_check_derivative_formulas():
    report = cross_check_derivative_formulas()
    assert len(report.records) == 32
    assert report.summary["pass"] == 32
    rec = next(r for r in report.records if r.params == {"n": 1, "a": 1.0, "mu": 1.0})
    assert rec.lhs == pytest.approx(-sf.EULER_GAMMA, rel=1e-6)
    rec2 = next(r for r in report.records if r.params == {"n": 2, "a": 1.0, "mu": 1.0})
    assert rec2.rhs == pytest.approx(sf.EULER_GAMMA**2 + math.pi**2 / 6, rel=1e-14)


def test_cross_check_matches_gamma7a():
    # n = 1 at integer a = m + 1 is the gamma-7a closed form
    for m, s in ((1, 0.5), (3, 2.0)):
        g7a = entry("MOLL:gamma-7a").rhs(ParameterAssignment(m=m, s=s))
        assert leibniz_scaled_gamma_derivative(1, m + 1.0, s) == pytest.approx(g7a, rel=1e-13)
