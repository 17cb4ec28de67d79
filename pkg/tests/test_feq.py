import cmath
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from feqtool.cases import get_case, registry
from feqtool.exceptions import DegenerateFitError, UnknownCaseError
from feqtool.feq import (ExponentialModelFit, FeqCase, SamplePlan, centered_plan,
                         evaluate_case, fit_constants, recheck, sample_strip,
                         verify)

from conftest import rel


def test_sample_strip_default():
    pts = sample_strip(SamplePlan())
    assert len(pts) == 9
    assert pts[0] == 0.1 and pts[-1] == 0.9


def test_sample_strip_centered_and_offsets():
    pts = sample_strip(centered_plan(6, 4, 5))
    assert all(4 <= p.real <= 8 for p in pts)
    pts = sample_strip(SamplePlan(offsets=(2j,)))
    assert len(pts) == 18
    assert pts[9] == pts[0] + 2j


def test_sample_strip_errors():
    with pytest.raises(ValueError):
        sample_strip(SamplePlan(1, 1))
    with pytest.raises(ValueError):
        sample_strip(SamplePlan(0, 1, 1, exclude=(0.5,)))


def test_fit_exact_model():
    s = [0.2, 0.5, 0.8]
    fit = fit_constants([(x, 3 * 2 ** x) for x in s], False)
    assert rel(fit.Q, 2) < 1e-14 and rel(fit.sigma2, 3) < 1e-14
    assert fit.max_rel_residual <= 1e-14


def test_fit_constant_constrained():
    fit = fit_constants([(x, 7.0) for x in (0.1, 0.4)], True)
    assert fit.sigma2 == pytest.approx(7) and fit.Q == 1
    assert fit.max_rel_residual <= 1e-15 and fit.rms_residual <= 1e-15


def test_degenerate_fit():
    with pytest.raises(DegenerateFitError):
        ExponentialModelFit().fit([0.5, 0.5, 0.5], [1, 1, 1])
    with pytest.raises(DegenerateFitError):
        ExponentialModelFit().fit([0.1, 0.2], [1, 2])


def test_fit_rejects_complex_s():
    with pytest.raises(ValueError):
        ExponentialModelFit().fit([0.1 + 1j, 0.2, 0.3], [1, 2, 3])


def test_branch_tracking():
    # sigma2 Q^s with Q complex: the phase wraps across the samples
    s = np.linspace(0, 2, 9)
    m = ExponentialModelFit().fit(s, 0.5j * np.exp(s * complex(0.3, 5.0)))
    assert abs(m.log_q_ - complex(0.3, 5.0)) < 1e-12


@settings(max_examples=60)
@given(st.floats(0.1, 10), st.floats(0.1, 10), st.floats(-math.pi, math.pi))
def test_fit_recovery(q, mod, arg):
    sigma2 = mod * cmath.exp(1j * arg)
    s = sample_strip(SamplePlan())
    fit = fit_constants([(x, sigma2 * q ** x.real) for x in s], False)
    assert rel(fit.Q, q) < 1e-12
    assert rel(fit.sigma2, sigma2) < 1e-12


def test_scale_invariance():
    case = get_case("even-chi5")
    ev = case.evaluators["analytic"]
    scaled = FeqCase("scaled", case.kind, "", "", {
        "analytic": lambda s: tuple(3.7 * v for v in ev(s))})
    pts = sample_strip(SamplePlan())
    a = fit_constants([(s, r) for s, _, _, r in evaluate_case(case, pts)], False)
    b = fit_constants([(s, r) for s, _, _, r in evaluate_case(scaled, pts)], False)
    assert rel(a.Q, b.Q) < 1e-12
    assert rel(a.sigma2, b.sigma2) < 1e-12


def test_evaluate_examples():
    (_, _, _, r), = evaluate_case(get_case("zeta-sine"), [0.5])
    assert rel(r, 1.25331413731550) < 1e-12
    (_, _, _, r), = evaluate_case(get_case("delta"), [6], "quadrature")
    assert rel(r, 1) < 1e-10
    (_, _, _, r), = evaluate_case(get_case("mixed-self"), [0.37])
    assert rel(r, math.pi) < 1e-12


def test_verify_zeta_sine():
    rep = verify(get_case("zeta-sine"))
    assert rep.verdict == "pass"
    assert rel(rep.fit.Q, 2 * math.pi) < 1e-8
    assert rel(rep.fit.sigma2, 0.5) < 1e-8
    d = json.loads(rep.to_json())
    for key in ("case_id", "kind", "mode", "samples", "fit", "expected", "verdict",
                "engine_params", "versions"):
        assert key in d
    for key in ("Q", "sigma2", "rms", "max_rel"):
        assert key in d["fit"]
    assert set(d["samples"][0]) == {"s", "lhs", "rhs", "ratio"}
    assert recheck(d) == "pass"
    rows = rep.to_csv().splitlines()
    assert len(rows) == 10 and rows[0].startswith("s_re,s_im")


def test_recheck_detects_tampering():
    d = json.loads(verify(get_case("zeta-sine")).to_json())
    d["samples"][3]["ratio"][0] *= 1.001
    assert recheck(d) == "inconsistent"


def test_verify_poly_a6():
    rep = verify(get_case("poly-a6"))
    assert rep.verdict == "pass"
    assert rel(rep.fit.Q, math.pi / 3) < 1e-8
    assert rel(rep.fit.sigma2, math.sqrt(6) / 2) < 1e-8


def test_rational_kernel_reported_non_constant():
    rep = verify(get_case("rational-self"))
    assert rep.verdict == "informational"
    assert not rep.checks["constant_real"]["ok"]
    assert rep.fit.max_rel_residual > 0.1


def test_two_tuples_agree():
    a = verify(get_case("sigma5-tuple")).fit
    b = verify(get_case("chi5-tuple")).fit
    assert abs(a.Q - b.Q) / abs(a.Q) < 1e-10
    assert abs(a.sigma2 - b.sigma2) / abs(a.sigma2) < 1e-10


def test_error_becomes_report_state():
    def boom(s):
        raise DegenerateFitError("synthetic")
    case = FeqCase("boom", "ratio_q", "", "", {"analytic": boom})
    rep = verify(case)
    assert rep.verdict == "error" and "synthetic" in rep.message
    assert rep.to_dict()["fit"] is None


def test_complex_validation_points():
    rep = verify(get_case("delta"))
    assert rep.verdict == "pass"
    assert rep.checks["complex_validation"]["ok"]


def test_registry():
    reg = registry()
    assert len(reg) >= 20
    assert reg["delta"].kind == "ratio_k" and reg["delta"].k == 12
    with pytest.raises(UnknownCaseError):
        get_case("nope")
    with pytest.raises(ValueError):
        FeqCase("x", "weird", "", "", {})
