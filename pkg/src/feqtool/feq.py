"""Sampling, fitting and reporting for functional-equation cases.

A case supplies, for each evaluation mode, a callable ``s -> (lhs, rhs)``.
The ratio whose constancy is tested is ``lhs * rhs`` for products and
``lhs / rhs`` for every other kind.  On real ``s`` the log of the ratio is
fitted by ``s log Q + log sigma^2``; complex sample points only validate.
"""
from __future__ import annotations

import cmath
import csv
import io
import json
import math
import platform
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_is_fitted

from .exceptions import DegenerateFitError, FeqError

KINDS = ("product", "ratio_q", "ratio_plain", "ratio_k", "identity")
MODES = ("analytic", "quadrature")
DEFAULT_TOL = {"analytic": 1e-9, "quadrature": 1e-6}
VERDICTS = ("pass", "fail", "paper-discrepancy", "informational", "error")


# -- validation helpers ------------------------------------------------------
def check_sample_arrays(s, ratio, *, min_samples: int = 1):
    """Coerce (s, ratio) to 1-d arrays: real s, complex ratio, equal length.

    sklearn's ``check_array`` rejects complex input, hence this variant.
    """
    s = np.asarray(s)
    if s.ndim == 2 and s.shape[1] == 1:
        s = s[:, 0]
    if s.ndim != 1:
        raise ValueError(f"s must be 1-d, got shape {s.shape}")
    if np.iscomplexobj(s):
        if np.any(s.imag != 0):
            raise ValueError("fit samples must have real s")
        s = s.real
    s = s.astype(float)
    ratio = np.asarray(ratio, dtype=complex).ravel()
    if len(s) != len(ratio):
        raise ValueError(f"length mismatch: {len(s)} s values, {len(ratio)} ratios")
    if len(s) < min_samples:
        raise ValueError(f"need at least {min_samples} samples, got {len(s)}")
    if not (np.all(np.isfinite(s)) and np.all(np.isfinite(ratio))):
        raise ValueError("samples contain non-finite values")
    if np.any(ratio == 0):
        raise ValueError("ratio vanishes at a sample point")
    return s, ratio


def check_complex_points(s) -> np.ndarray:
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    if s.ndim != 1 or not np.all(np.isfinite(s)):
        raise ValueError("points must be a finite 1-d sequence")
    return s


class ExponentialModelFit(RegressorMixin, BaseEstimator):
    """Least-squares fit of ``ratio(s) = sigma2 * Q**s`` on real s.

    Parameters
    ----------
    constrain_q : bool
        Force ``log Q = 0`` (only sigma2 is fitted).
    branch_jump : float
        Phase jump between consecutive samples treated as a branch crossing.
    """

    def __init__(self, constrain_q: bool = False, branch_jump: float = math.pi):
        self.constrain_q = constrain_q
        self.branch_jump = branch_jump

    def fit(self, s, ratio):
        s, ratio = check_sample_arrays(s, ratio, min_samples=1)
        order = np.argsort(s)
        s, ratio = s[order], ratio[order]
        distinct = np.unique(s)
        needed = 1 if self.constrain_q else 3
        if len(distinct) < needed or (not self.constrain_q and
                                      np.ptp(s) <= 1e-14 * max(1.0, np.abs(s).max())):
            raise DegenerateFitError(
                f"need {needed} distinct real s values, got {len(distinct)}")
        phase = np.unwrap(np.angle(ratio), discont=self.branch_jump)
        logs = np.log(np.abs(ratio)) + 1j * phase
        if self.constrain_q:
            log_q = 0j
            log_sigma2 = complex(logs.mean())
        else:
            design = np.column_stack([s, np.ones_like(s)])
            coef_re = np.linalg.lstsq(design, logs.real, rcond=None)[0]
            coef_im = np.linalg.lstsq(design, logs.imag, rcond=None)[0]
            log_q = complex(coef_re[0], coef_im[0])
            log_sigma2 = complex(coef_re[1], coef_im[1])
        self.log_q_ = log_q
        self.log_sigma2_ = log_sigma2
        self.Q_ = cmath.exp(log_q)
        self.sigma2_ = cmath.exp(log_sigma2)
        self.n_samples_ = len(s)
        return self

    def predict(self, s):
        check_is_fitted(self, "log_q_")
        s = check_complex_points(s)
        return np.exp(self.log_sigma2_ + s * self.log_q_)

    def relative_residuals(self, s, ratio) -> np.ndarray:
        pred = self.predict(s)
        return np.abs(np.asarray(ratio, dtype=complex) - pred) / np.abs(pred)

    def score(self, s, ratio, sample_weight=None):
        """Negative maximum relative residual (higher is better)."""
        return -float(self.relative_residuals(s, ratio).max())


# -- domain records ----------------------------------------------------------
@dataclass(frozen=True)
class SamplePlan:
    """Real points ``lo + (hi - lo) * j / (count + 1)``, minus ``exclude``,
    then each real point shifted by every complex offset."""

    lo: float = 0.0
    hi: float = 1.0
    count: int = 9
    offsets: tuple = ()
    exclude: tuple = ()

    def to_dict(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "count": self.count,
                "offsets": [[complex(o).real, complex(o).imag] for o in self.offsets],
                "exclude": list(self.exclude)}


def centered_plan(center: float, width: float, count: int = 9, offsets=()) -> SamplePlan:
    return SamplePlan(center - width / 2, center + width / 2, count, tuple(offsets))


def sample_strip(plan: SamplePlan) -> list[complex]:
    if plan.count < 1 or not plan.hi > plan.lo:
        raise ValueError(f"empty sample range ({plan.lo}, {plan.hi}) x {plan.count}")
    real = [plan.lo + (plan.hi - plan.lo) * j / (plan.count + 1)
            for j in range(1, plan.count + 1)]
    real = [round(x, 12) for x in real
            if all(abs(x - e) > 1e-9 for e in plan.exclude)]
    if not real:
        raise ValueError("every sample point was excluded")
    points = [complex(x) for x in real]
    for off in plan.offsets:
        points.extend(complex(x) + complex(off) for x in real)
    return points


@dataclass(frozen=True)
class Expected:
    """Reference constants for a case; ``gating`` decides whether a mismatch
    changes the verdict."""

    Q: complex
    sigma2: complex
    source: str
    gating: bool = True

    def to_dict(self) -> dict:
        return {"Q": _cpx(self.Q), "sigma2": _cpx(self.sigma2),
                "source": self.source, "gating": self.gating}


@dataclass(frozen=True)
class FeqCase:
    """One registered functional equation.

    ``evaluators`` maps a mode name to ``s -> (lhs, rhs)``.  ``expected_kind``
    is ``"constant"`` for equations that should hold, ``"exploratory"`` when
    the case only reports what it measures.  ``discrepancy_ok`` turns an
    expected-value mismatch into a ``paper-discrepancy`` state.
    """

    id: str
    kind: str
    anchor: str
    description: str
    evaluators: dict
    k: float = 1.0
    expected: Optional[Expected] = None
    plan: SamplePlan = SamplePlan()
    eta_kernel: Optional[str] = None
    expected_kind: str = "constant"
    discrepancy_ok: bool = False
    const_tol: Optional[float] = None
    notes: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        bad = set(self.evaluators) - set(MODES)
        if bad:
            raise ValueError(f"unknown modes {sorted(bad)}")

    @property
    def modes(self) -> tuple:
        return tuple(m for m in MODES if m in self.evaluators)

    @property
    def constrain_q(self) -> bool:
        return self.kind in ("ratio_plain", "ratio_k", "product", "identity")


@dataclass
class FitResult:
    Q: complex
    sigma2: complex
    rms_residual: float
    max_rel_residual: float
    table: list
    log_q_free: complex = 0j
    max_rel_complex: float = 0.0
    log_q: complex = 0j
    log_sigma2: complex = 0j

    def to_dict(self) -> dict:
        return {"Q": _cpx(self.Q), "sigma2": _cpx(self.sigma2),
                "rms": self.rms_residual, "max_rel": self.max_rel_residual,
                "max_rel_complex": self.max_rel_complex,
                "log_Q_free": _cpx(self.log_q_free),
                "log_Q": _cpx(self.log_q), "log_sigma2": _cpx(self.log_sigma2)}


def _cpx(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _uncpx(v) -> complex:
    return complex(v[0], v[1])


def fit_constants(samples, constrain_q_to_one: bool) -> FitResult:
    """Fit sigma2 (and Q) to ``[(s, ratio), ...]``.

    The real-s subset drives the fit; residuals are reported at every point.
    A free-Q fit is also made on the real subset so that constancy of a
    constrained ratio can be judged through ``|log Q|``.
    """
    pts = check_complex_points([s for s, _ in samples])
    ratios = np.asarray([r for _, r in samples], dtype=complex)
    real = np.abs(pts.imag) == 0
    s_real, r_real = check_sample_arrays(pts[real].real, ratios[real])
    model = ExponentialModelFit(constrain_q=constrain_q_to_one).fit(s_real, r_real)
    log_q_free = model.log_q_
    if constrain_q_to_one:
        try:
            log_q_free = ExponentialModelFit().fit(s_real, r_real).log_q_
        except DegenerateFitError:
            log_q_free = 0j
    rel = model.relative_residuals(pts, ratios)
    rel_real = rel[real]
    table = [{"s": complex(s), "ratio": complex(r), "model": complex(m), "rel": float(e)}
             for s, r, m, e in zip(pts, ratios, model.predict(pts), rel)]
    return FitResult(model.Q_, model.sigma2_,
                     float(np.sqrt(np.mean(rel_real ** 2))), float(rel_real.max()),
                     table, log_q_free,
                     float(rel[~real].max()) if np.any(~real) else 0.0,
                     model.log_q_, model.log_sigma2_)


def combine(kind: str, lhs: complex, rhs: complex) -> complex:
    return lhs * rhs if kind == "product" else lhs / rhs


def evaluate_case(case: FeqCase, points, mode: str = "analytic"):
    """``[(s, lhs, rhs, ratio), ...]``; evaluation errors are re-raised with s."""
    if mode not in case.evaluators:
        raise FeqError(f"case {case.id} has no {mode} evaluator")
    ev = case.evaluators[mode]
    out = []
    for s in points:
        s = complex(s)
        try:
            lhs, rhs = ev(s)
        except FeqError as exc:
            raise type(exc)(f"{case.id} [{mode}] at s={s}: {exc}") from exc
        lhs, rhs = complex(lhs), complex(rhs)
        out.append((s, lhs, rhs, combine(case.kind, lhs, rhs)))
    return out


# -- reports -----------------------------------------------------------------
def versions() -> dict:
    from . import __version__
    import sklearn
    return {"feqtool": __version__, "numpy": np.__version__,
            "scikit-learn": sklearn.__version__,
            "python": platform.python_version()}


@dataclass
class VerificationReport:
    case_id: str
    kind: str
    mode: str
    samples: list
    fit: Optional[FitResult]
    expected: Optional[Expected]
    verdict: str
    engine_params: dict
    anchor: str = ""
    checks: dict = field(default_factory=dict)
    message: str = ""
    notes: tuple = ()

    def to_dict(self) -> dict:
        return {
            "case_id": self.case_id,
            "kind": self.kind,
            "mode": self.mode,
            "anchor": self.anchor,
            "samples": [{"s": _cpx(s), "lhs": _cpx(l), "rhs": _cpx(r), "ratio": _cpx(q)}
                        for s, l, r, q in self.samples],
            "fit": self.fit.to_dict() if self.fit else None,
            "expected": self.expected.to_dict() if self.expected else None,
            "checks": self.checks,
            "verdict": self.verdict,
            "message": self.message,
            "notes": list(self.notes),
            "engine_params": self.engine_params,
            "versions": versions(),
        }

    def to_json(self, timestamp: Optional[str] = None) -> str:
        d = self.to_dict()
        if timestamp is not None:
            d["generated_at"] = timestamp
        return json.dumps(d, indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["s_re", "s_im", "lhs_re", "lhs_im", "rhs_re", "rhs_im",
                    "ratio_re", "ratio_im", "model_re", "model_im", "rel_residual"])
        rows = self.fit.table if self.fit else [{} for _ in self.samples]
        for (s, l, r, q), row in zip(self.samples, rows):
            m = row.get("model", complex("nan"))
            w.writerow([repr(v) for v in (s.real, s.imag, l.real, l.imag, r.real, r.imag,
                                          q.real, q.imag, m.real, m.imag)]
                       + [repr(row.get("rel", float("nan")))])
        return buf.getvalue()


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / abs(b) if b != 0 else abs(a)


def judge(case: FeqCase, fit: FitResult, tol: float, const_tol: float):
    """Verdict and the individual checks behind it."""
    checks = {}
    constant = fit.max_rel_residual <= tol
    checks["constant_real"] = {"max_rel": fit.max_rel_residual, "tol": tol, "ok": constant}
    if any(abs(row["s"].imag) > 0 for row in fit.table):
        ok = fit.max_rel_complex <= 10 * tol
        checks["complex_validation"] = {"max_rel": fit.max_rel_complex,
                                        "tol": 10 * tol, "ok": ok}
        constant = constant and ok
    if case.constrain_q:
        ok = abs(fit.log_q_free) <= const_tol
        checks["log_Q_free"] = {"value": abs(fit.log_q_free), "tol": const_tol, "ok": ok}
        constant = constant and ok
    matches = True
    if case.expected is not None:
        dq = _rel(fit.Q, case.expected.Q)
        ds = _rel(fit.sigma2, case.expected.sigma2)
        matches = dq <= const_tol and ds <= const_tol
        checks["expected"] = {"rel_Q": dq, "rel_sigma2": ds, "tol": const_tol,
                              "ok": matches, "gating": case.expected.gating}
    if case.expected_kind == "exploratory":
        return "informational", checks
    if not constant:
        return "fail", checks
    if not matches and case.expected.gating:
        return ("paper-discrepancy" if case.discrepancy_ok else "fail"), checks
    return "pass", checks


def verify(case: FeqCase, mode: Optional[str] = None, *, tol: Optional[float] = None,
           plan: Optional[SamplePlan] = None, engine_params: Optional[dict] = None
           ) -> VerificationReport:
    """Run one case in one mode; failures become report states."""
    mode = mode or case.modes[0]
    tol = tol if tol is not None else DEFAULT_TOL[mode]
    const_tol = case.const_tol if case.const_tol is not None else max(tol, 1e-8)
    plan = plan or case.plan
    params = {"tol": tol, "const_tol": const_tol, "plan": plan.to_dict(), "k": case.k}
    params.update(engine_params or {})
    samples: list = []
    try:
        points = sample_strip(plan)
        samples = evaluate_case(case, points, mode)
        fit = fit_constants([(s, q) for s, _, _, q in samples], case.constrain_q)
    except (FeqError, ValueError, ArithmeticError) as exc:
        return VerificationReport(case.id, case.kind, mode, samples, None, case.expected,
                                  "error", params, case.anchor,
                                  message=f"{type(exc).__name__}: {exc}", notes=case.notes)
    verdict, checks = judge(case, fit, tol, const_tol)
    return VerificationReport(case.id, case.kind, mode, samples, fit, case.expected,
                              verdict, params, case.anchor, checks, notes=case.notes)


def recheck(report: dict) -> str:
    """Re-derive a verdict from a parsed JSON report using only stored data."""
    fit = report["fit"]
    if fit is None:
        return report["verdict"]
    log_q, log_sig = _uncpx(fit["log_Q"]), _uncpx(fit["log_sigma2"])
    worst = 0.0
    for row in report["samples"]:
        s = _uncpx(row["s"])
        if s.imag == 0:
            model = cmath.exp(log_sig + s * log_q)
            worst = max(worst, abs(_uncpx(row["ratio"]) - model) / abs(model))
    tol = report["engine_params"]["tol"]
    stored = report["checks"]["constant_real"]["ok"]
    if (worst <= tol * (1 + 1e-6) + 1e-15) != stored:
        return "inconsistent"
    return report["verdict"]
