"""Numerical Mellin transforms on (0, inf).

The engine is double-exponential quadrature: tanh-sinh on finite pieces
(which absorbs the ``x^(s-1)`` endpoint singularity at 0) and exp-sinh on
an unbounded tail when no decay rate is known.  Functions that are singular
at 0 can be handled by a :class:`SubtractionTerm` whose Mellin transform is
known in closed form; an optional Taylor head of ``f - g`` replaces the
quadrature on ``(0, delta)`` where the subtraction cancels catastrophically.

Integrand callables are vectorized: they receive a float ndarray of
abscissae and return an ndarray of the same shape.
"""
from __future__ import annotations

import cmath
import logging
import math
import warnings
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .complexfn import bernoulli_polynomial, cgamma
from .exceptions import (AccuracyWarning, ConvergenceRegionError,
                         InsufficientCoefficientsError, QuadratureError,
                         SeriesTruncationError)

logger = logging.getLogger(__name__)

_T_MAX = 6.1          # tanh-sinh: endpoint distance ~1e-300 at |t| = 6.1
_ES_T_LO, _ES_T_HI = -4.5, 6.7   # exp-sinh: x - c in (1e-24, 1e300)


@dataclass(frozen=True)
class QuadratureParams:
    """Settings for :func:`mellin_quadrature`.

    ``decay_rate`` is an exponential rate ``beta`` with ``|f(x)| <~ e^{-beta x}``
    for large x; when given and ``x_max`` is infinite the tail is truncated
    where its bound drops below ``0.1 * target_tol`` (relative).
    """

    target_tol: float = 1e-10
    level_max: int = 12
    x_min: float = 0.0
    x_max: float = math.inf
    decay_rate: Optional[float] = None
    split: float = 1.0

    def __post_init__(self):
        if not self.target_tol > 0:
            raise ValueError("target_tol must be positive")
        if not self.x_min < self.x_max:
            raise ValueError("x_min must be below x_max")
        if self.x_min < 0:
            raise ValueError("x_min must be non-negative")

    def replace(self, **kw) -> "QuadratureParams":
        d = asdict(self)
        d.update(kw)
        return QuadratureParams(**d)

    def to_dict(self) -> dict:
        d = asdict(self)
        for k in ("x_max",):
            if math.isinf(d[k]):
                d[k] = "inf"
        return d


@dataclass(frozen=True)
class SubtractionTerm:
    """A function ``g`` subtracted on ``(0, cutoff)`` together with the
    closed-form Mellin transform ``G`` of ``g * 1_(0, cutoff)``.

    ``head = (delta, coeffs)`` optionally gives the Taylor coefficients of
    ``f - g`` at 0; the piece on ``(0, delta)`` is then integrated exactly.
    """

    g: Callable
    G: Callable
    label: str
    cutoff: float = math.inf
    head: Optional[tuple] = None
    strip: tuple = (-math.inf, math.inf)


def pole_term(residue: complex) -> SubtractionTerm:
    """g = residue / x on all of (0, inf), with G = 0.

    On ``0 < Re s < 1`` the subtracted integral is itself the analytic
    continuation, so no compensation is needed there.
    """
    return SubtractionTerm(g=lambda x: residue / x, G=lambda s: 0j,
                           label=f"pole({residue!r}/x)", strip=(0.0, 1.0))


def truncated_power(coef: complex, power: float, cutoff: float = 1.0) -> SubtractionTerm:
    """g = coef * x^power on (0, cutoff); G(s) = coef cutoff^(s+power) / (s+power)."""
    def G(s):
        s = complex(s)
        return coef * cmath.exp((s + power) * math.log(cutoff)) / (s + power)
    return SubtractionTerm(g=lambda x: coef * x ** power, G=G,
                           label=f"{coef!r}*x^{power} on (0,{cutoff})",
                           cutoff=cutoff, strip=(-power, math.inf))


@dataclass
class QuadratureInfo:
    value: complex = 0j
    error: float = 0.0
    levels: int = 0
    evaluations: int = 0
    tail_bound: float = 0.0
    converged: bool = True
    pieces: list = field(default_factory=list)


def _expit(u):
    with np.errstate(over="ignore"):
        return 1.0 / (1.0 + np.exp(-u))


def _tanh_sinh_nodes(a: float, b: float, t: np.ndarray):
    u = math.pi * np.sinh(t)
    left = (b - a) * _expit(u)      # x - a
    right = (b - a) * _expit(-u)    # b - x
    x = np.where(t <= 0, a + left, b - right)
    w = (b - a) * math.pi * np.cosh(t) * _expit(u) * _expit(-u)
    return x, w


def _exp_sinh_nodes(c: float, t: np.ndarray):
    with np.errstate(over="ignore"):
        e = np.exp(0.5 * math.pi * np.sinh(t))
    return c + e, 0.5 * math.pi * np.cosh(t) * e


def _safe_eval(h, x, w):
    keep = (w > 0) & np.isfinite(w) & np.isfinite(x)
    out = np.zeros(x.shape, dtype=complex)
    if np.any(keep):
        out[keep] = w[keep] * h(x[keep])
    return out, int(np.count_nonzero(keep))


def _de_piece(h, nodes, t_lo, t_hi, tol, level_max):
    """Trapezoid sums on the DE-mapped line, halving h per level."""
    info = QuadratureInfo()
    k = np.arange(math.floor(t_lo), math.ceil(t_hi) + 1, dtype=float)
    x, w = nodes(k)
    vals, n = _safe_eval(h, x, w)
    total = vals.sum()
    info.evaluations += n
    estimate = total
    diffs = []
    for level in range(1, level_max + 1):
        step = 2.0 ** -level
        t = np.arange(math.floor(t_lo / step) | 1, math.ceil(t_hi / step) + 1, 2,
                      dtype=float) * step
        t = t[(t >= t_lo) & (t <= t_hi)]
        x, w = nodes(t)
        vals, n = _safe_eval(h, x, w)
        info.evaluations += n
        total = total + vals.sum()
        new = total * step
        if not np.isfinite(new):
            raise QuadratureError("non-finite integrand encountered")
        diff = abs(new - estimate)
        diffs.append(diff)
        estimate = new
        info.levels = level
        if level >= 3 and diff <= tol * abs(new):
            info.error = diff
            break
        if level >= 3 and diff == 0.0:
            info.error = 0.0
            break
    else:
        info.error = diffs[-1] if diffs else math.inf
        info.converged = False
        if len(diffs) >= 3 and not (diffs[-1] < diffs[-3]):
            raise QuadratureError(
                f"DE levels failed to contract: last differences {diffs[-3:]}")
    info.value = complex(estimate)
    return info


def _decay_cutoff(fg, c, beta, sigma, tol, scale):
    """Smallest X > c where A X^(sigma-1) e^(-beta X) / beta < 0.1 tol scale,
    with A estimated as max |f(x)| e^(beta x) over a few probes past c."""
    probe = c + np.arange(0, 12) / beta
    amp = float(np.max(np.abs(fg(probe)) * np.exp(beta * probe)))
    if amp == 0.0:
        return c + 1.0, 0.0
    X = c + 1.0 / beta
    target = 0.1 * tol * max(scale, 1e-300)
    for _ in range(200):
        bound = amp * X ** (sigma - 1.0) * math.exp(-beta * X) / beta
        if bound < target and beta * X > max(sigma, 1.0):
            return X, bound
        X *= 1.25
    return X, bound


def mellin_quadrature(f: Callable, s, p: Optional[QuadratureParams] = None,
                      sub=None, full_output: bool = False):
    """Estimate int_{x_min}^{x_max} x^(s-1) (f(x) - g(x)) dx + G(s).

    Parameters
    ----------
    f : callable
        Vectorized integrand factor on (0, inf).
    s : complex
    p : QuadratureParams, optional
    sub : SubtractionTerm or sequence of them, optional
    full_output : bool
        Also return a :class:`QuadratureInfo`.

    Warns
    -----
    AccuracyWarning
        If ``level_max`` is reached without meeting ``target_tol``.
    """
    s = complex(s)
    p = p or QuadratureParams()
    subs: Sequence[SubtractionTerm] = (
        () if sub is None else (sub,) if isinstance(sub, SubtractionTerm) else tuple(sub))

    def fg(x):
        v = np.asarray(f(x), dtype=complex)
        for term in subs:
            gv = np.asarray(term.g(x), dtype=complex)
            if math.isinf(term.cutoff):
                v = v - gv
            else:
                v = v - np.where(x < term.cutoff, gv, 0.0)
        return v

    def h(x):
        v = fg(x)
        out = np.zeros(x.shape, dtype=complex)
        nz = v != 0
        if np.any(nz):
            with np.errstate(over="ignore", invalid="ignore"):
                out[nz] = np.exp((s - 1.0) * np.log(x[nz])) * v[nz]
        return out

    info = QuadratureInfo()
    total = 0j
    lo = p.x_min
    for term in subs:
        total += complex(term.G(s))
        if term.head is not None:
            delta, coeffs = term.head
            if delta > lo:
                head = sum(c * cmath.exp((s + j) * math.log(delta)) / (s + j)
                           for j, c in enumerate(coeffs))
                total += head
                info.pieces.append(("head", 0.0, delta))
                lo = delta
    hi = p.x_max
    c = p.split if lo < p.split < hi else None
    if c is None:
        c = lo + 1.0 if math.isinf(hi) else None

    tol = p.target_tol
    pieces = []
    if c is None:
        pieces.append(("ts", lo, hi))
    else:
        pieces.append(("ts", lo, c))
        if math.isinf(hi):
            if p.decay_rate:
                pieces.append(("decay", c, None))
            else:
                pieces.append(("es", c, math.inf))
        else:
            pieces.append(("ts", c, hi))

    # first pass for a magnitude used by the tail criterion
    results = []
    scale = None
    for kind, a, b in pieces:
        if kind == "ts":
            r = _de_piece(h, lambda t, a=a, b=b: _tanh_sinh_nodes(a, b, t),
                          -_T_MAX, _T_MAX, tol, p.level_max)
        elif kind == "es":
            r = _de_piece(h, lambda t, a=a: _exp_sinh_nodes(a, t),
                          _ES_T_LO, _ES_T_HI, tol, p.level_max)
        else:
            ref = abs(sum(x.value for x in results)) if results else 0.0
            scale = max(ref, abs(total))
            X, bound = _decay_cutoff(fg, a, p.decay_rate, s.real, tol, scale)
            info.tail_bound = bound
            b = X
            r = _de_piece(h, lambda t, a=a, b=X: _tanh_sinh_nodes(a, b, t),
                          -_T_MAX, _T_MAX, tol, p.level_max)
        info.pieces.append((kind, a, b))
        results.append(r)

    value = total + sum(r.value for r in results)
    info.value = value
    info.error = sum(r.error for r in results) + info.tail_bound
    info.levels = max(r.levels for r in results)
    info.evaluations = sum(r.evaluations for r in results)
    info.converged = all(r.converged for r in results)
    if not info.converged:
        warnings.warn(f"Mellin quadrature at s={s}: estimated error "
                      f"{info.error:.2e} exceeds target {tol:.1e}", AccuracyWarning,
                      stacklevel=2)
    logger.debug("mellin_quadrature s=%r value=%r err=%.2e evals=%d",
                 s, value, info.error, info.evaluations)
    return (value, info) if full_output else value


def plain_quadrature(f: Callable, a: float, b: float, tol: float = 1e-12,
                     level_max: int = 12) -> complex:
    """tanh-sinh integral of f over a finite interval [a, b]."""
    return _de_piece(lambda x: np.asarray(f(x), dtype=complex),
                     lambda t: _tanh_sinh_nodes(a, b, t),
                     -_T_MAX, _T_MAX, tol, level_max).value


# -- periodic exponential sums ---------------------------------------------
class PeriodicExpSum:
    """F(x) = sum_{n>=1} c(n) e^{-n r x} for a q-periodic table c.

    Evaluated in closed form as ``sum_{a=1}^{q} c(a) e^{-a r x} / (1 - e^{-q r x})``.
    When the table sums to zero over a period the numerator is rewritten
    with ``expm1`` so that small-x values keep full relative precision.
    """

    def __init__(self, table, rate: float = 1.0, label: str = ""):
        self.table = np.asarray(table, dtype=complex)
        self.q = len(self.table)
        self.rate = float(rate)
        self.label = label
        self._a = np.arange(1, self.q + 1, dtype=float)
        self._c = np.array([self.table[a % self.q] for a in range(1, self.q + 1)])
        self.total = complex(self._c.sum())
        self._balanced = abs(self.total) <= 1e-12 * float(np.abs(self._c).sum())

    @property
    def residue(self) -> complex:
        """Coefficient of 1/x in F near 0."""
        return 0j if self._balanced else self.total / (self.q * self.rate)

    def __call__(self, x):
        xa = np.atleast_1d(np.asarray(x, dtype=float))
        ax = np.outer(xa * self.rate, self._a)
        den = -np.expm1(-self.q * self.rate * xa)
        if self._balanced:
            num = np.expm1(-ax) @ self._c
        else:
            num = np.exp(-ax) @ self._c
        out = num / den
        return complex(out[0]) if np.ndim(x) == 0 else out

    def taylor_head(self, n_terms: int = 20) -> list[complex]:
        """Coefficients d_j with F(x) - residue/x = sum_j d_j x^j near 0."""
        q, r = self.q, self.rate
        out = []
        for n in range(1, n_terms + 1):
            acc = 0j
            for a in range(1, q + 1):
                c = self._c[a - 1]
                if c:
                    acc += c * float(bernoulli_polynomial(n, 1 - Fraction(a, q)))
            out.append(acc * (q * r) ** (n - 1) / math.factorial(n))
        return out

    def subtraction(self, n_terms: int = 20) -> SubtractionTerm:
        """Pole subtraction on (0, 1) with an exact Taylor head near 0."""
        delta = 0.5 / (self.q * self.rate)
        R = self.residue
        base = truncated_power(R, -1.0, cutoff=1.0)
        return SubtractionTerm(g=base.g, G=base.G,
                               label=f"pole({R:.6g}/x) on (0,1) + Taylor head",
                               cutoff=1.0, head=(delta, self.taylor_head(n_terms)),
                               strip=(0.0, math.inf))

    def mellin(self, s, p: Optional[QuadratureParams] = None, full_output=False):
        """Quadrature of int x^(s-1) F(x) dx (continued past Re s = 1)."""
        p = (p or QuadratureParams()).replace(decay_rate=self.rate)
        return mellin_quadrature(self, s, p, self.subtraction(), full_output)


def char_exp_sum(chi, x):
    """sum_{m>=1} chi(m) e^{-m x} in closed form."""
    return PeriodicExpSum(chi.values())(x)


# -- Master Theorem ----------------------------------------------------------
def alternating_series(phi: Callable[[int], float], x: float,
                       n_max: int = 400) -> float:
    """sum_{n>=0} (-1)^n phi(n) x^n / n!, summed until terms fall below 1e-16 * max."""
    total = 0.0
    term_scale = 1.0
    biggest = 0.0
    small_run = 0
    for n in range(n_max):
        t = (-1) ** n * phi(n) * term_scale
        total += t
        biggest = max(biggest, abs(t))
        small_run = small_run + 1 if abs(t) < 1e-16 * biggest else 0
        if small_run >= 3:
            if biggest > 1e8 * max(abs(total), 1e-300):
                raise SeriesTruncationError(
                    f"cancellation at x={x}: max term {biggest:.3e}, sum {total:.3e}")
            return total
        term_scale *= x / (n + 1)
    raise SeriesTruncationError(f"series at x={x} not converged after {n_max} terms")


@dataclass(frozen=True)
class MasterTheoremInstance:
    """f(x) = sum (-1)^n phi(n) x^n / n!  with  M[f](s) = Gamma(s) phi(-s).

    ``closed_form`` (vectorized) is used beyond ``series_radius`` where the
    alternating series loses precision; below it the series itself is used.
    """

    label: str
    phi: Callable[[int], float]
    phi_ext: Callable[[complex], complex]
    closed_form: Optional[Callable] = None
    decay_rate: Optional[float] = None
    series_radius: float = 1.0

    def __call__(self, x):
        xa = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.empty(xa.shape)
        near = xa <= self.series_radius if self.closed_form else np.ones(xa.shape, bool)
        out[near] = [alternating_series(self.phi, v) for v in xa[near]]
        if self.closed_form is not None and np.any(~near):
            out[~near] = self.closed_form(xa[~near])
        return float(out[0]) if np.ndim(x) == 0 else out


def master_theorem_check(inst: MasterTheoremInstance, s,
                         p: Optional[QuadratureParams] = None) -> tuple[complex, complex]:
    """(quadrature of int x^(s-1) f(x) dx, Gamma(s) phi(-s))."""
    s = complex(s)
    p = p or QuadratureParams()
    if inst.decay_rate:
        p = p.replace(decay_rate=inst.decay_rate)
    lhs = mellin_quadrature(inst, s, p)
    rhs = cgamma(s) * complex(inst.phi_ext(-s))
    return lhs, rhs


MT_EXP = MasterTheoremInstance(
    "phi(n)=1", phi=lambda n: 1.0, phi_ext=lambda z: 1.0,
    closed_form=lambda x: np.exp(-x), decay_rate=1.0)
MT_LINEAR = MasterTheoremInstance(
    "phi(n)=n+1", phi=lambda n: n + 1.0, phi_ext=lambda z: z + 1.0,
    closed_form=lambda x: (1.0 - x) * np.exp(-x), decay_rate=0.9,
    series_radius=0.5)
MT_RECIP = MasterTheoremInstance(
    "phi(n)=1/(n+1)", phi=lambda n: 1.0 / (n + 1.0), phi_ext=lambda z: 1.0 / (z + 1.0),
    closed_form=lambda x: -np.expm1(-x) / x)
MASTER_THEOREM_INSTANCES = (MT_EXP, MT_LINEAR, MT_RECIP)


# -- Gaussian pair -----------------------------------------------------------
def gaussian_pair_check(n: float, p: Optional[QuadratureParams] = None):
    """Both cosine/sine Gaussian integrals by quadrature and in closed form.

    Returns ``(lhs1, rhs1, lhs2, rhs2)`` for
    ``int e^{-x^2} cos(2 n x) = (sqrt(pi)/2) e^{-n^2}`` and
    ``int x e^{-x^2} sin(2 n x) = (n sqrt(pi)/2) e^{-n^2}``.
    """
    if not n > 0:
        raise ValueError("n must be positive")
    p = p or QuadratureParams(target_tol=1e-13)
    cutoff = math.sqrt(-math.log(1e-30)) + 2.0 * n
    p = p.replace(x_max=cutoff)
    lhs1 = mellin_quadrature(lambda x: np.exp(-x * x) * np.cos(2 * n * x), 1.0, p).real
    lhs2 = mellin_quadrature(lambda x: x * np.exp(-x * x) * np.sin(2 * n * x), 1.0, p).real
    rhs1 = math.sqrt(math.pi) / 2 * math.exp(-n * n)
    rhs2 = n * rhs1
    return lhs1, rhs1, lhs2, rhs2


# -- q-expansions ------------------------------------------------------------
def required_terms(c, x: float, rel: float = 1e-18) -> int:
    """Index past which C n^c e^{-2 pi n x / scale} stays below rel * running max."""
    C, cexp = c.growth
    rate = 2.0 * math.pi * x / c.eval_scale
    # bound decreases once n > cexp / rate
    n_peak = max(1, int(cexp / rate) + 1)
    log_peak = math.log(C) + cexp * math.log(n_peak) - rate * n_peak
    n = n_peak
    while math.log(C) + cexp * math.log(n) - rate * n > log_peak + math.log(rel):
        n = int(n * 1.1) + 1
    # refine downward
    lo, hi = n_peak, n
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if math.log(C) + cexp * math.log(mid) - rate * mid > log_peak + math.log(rel):
            lo = mid
        else:
            hi = mid
    return hi


def qexp_eval(c, x, subtract_constant: bool = False):
    """f(ix) = sum_{n>=0} a_n e^{-2 pi n x / scale} for x > 0 (scalar or array).

    ``scale`` is ``c.eval_scale`` (period times sqrt(level)); the sum is cut
    where the growth bound of the coefficients makes the tail negligible.

    Raises
    ------
    InsufficientCoefficientsError
        When the table is too short for the smallest requested ``x``.
    """
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xa <= 0):
        raise ValueError("qexp_eval needs x > 0")
    coeffs = c.coefficients
    need = len(coeffs) - 1 if c.complete else required_terms(c, float(xa.min()))
    if need > len(coeffs) - 1:
        raise InsufficientCoefficientsError(
            f"{c.label}: need {need} coefficients at x={xa.min():g}, have {len(coeffs) - 1}",
            need)
    a = coeffs[1:need + 1]
    nz = np.nonzero(a)[0]
    n = (nz + 1).astype(float)
    with np.errstate(under="ignore"):
        out = np.exp(np.outer(-2.0 * math.pi * xa / c.eval_scale, n)) @ a[nz]
    if not subtract_constant:
        out = out + coeffs[0]
    logger.debug("qexp_eval %s: %d terms at x_min=%g", c.label, need, xa.min())
    return complex(out[0]) if np.ndim(x) == 0 else out


def _cusp_bound(c, x: float) -> float:
    """B x^-k exp(-2 pi / (scale x)) with B = 2 max(1, |a_1|)."""
    B = 2.0 * max(1.0, abs(complex(c.coefficients[1])))
    return B * x ** (-c.weight) * math.exp(-2.0 * math.pi / (c.eval_scale * x))


def _cusp_cutoff(c, sigma: float, tol: float, scale: float) -> float:
    """Largest x_min whose discarded mass, bounded by x^sigma times the cusp
    bound, stays below 0.1 tol scale."""
    target = 0.1 * tol * max(scale, 1e-300)
    x = 0.5
    while x > 1e-4:
        if x ** sigma * _cusp_bound(c, x) < target:
            return x
        x *= 0.8
    return x


def completed_lambda(c, s, p: Optional[QuadratureParams] = None, *,
                     convergence_abscissa: Optional[float] = None,
                     full_output: bool = False):
    """int_0^inf x^(s-1) (f(ix) - a_0) dx = (scale / 2 pi)^s Gamma(s) L_f(s).

    For a cusp form (``a_0 = 0``) any s is allowed: the integral is taken
    over ``[x_min, inf)`` with ``x_min`` from the cusp decay bound, which is
    checked against the measured value of f there.  A finite q-series that
    fails the bound is integrated down to 0 instead.  For a non-cuspidal
    series the caller declares ``convergence_abscissa`` (typically the
    weight); ``Re s`` must exceed it and x_min comes from
    ``|f - a_0| <= C x^-k`` with C measured at x_min.

    Raises
    ------
    ConvergenceRegionError
        On a violated declaration or a cusp bound that does not hold.
    """
    s = complex(s)
    p = p or QuadratureParams()
    nz = np.nonzero(c.coefficients[1:])[0]
    beta = 2.0 * math.pi * (nz[0] + 1) / c.eval_scale
    tol = p.target_tol

    def f(x):
        return qexp_eval(c, x, subtract_constant=True)

    def run(x_min):
        return mellin_quadrature(f, s, p.replace(x_min=x_min, decay_rate=beta),
                                 full_output=True)

    if c.coefficients[0] == 0:
        if p.x_min:
            value, info = run(p.x_min)
        else:
            est = abs(complex(c.coefficients[nz[0] + 1])) * abs(
                cgamma(s) * cmath.exp(-s * math.log(beta)))
            x_min = _cusp_cutoff(c, s.real, tol, est)
            measured = abs(f(np.array([x_min]))[0])
            # cancellation in the q-series leaves a rounding floor
            mags = replace(c, coefficients=np.abs(c.coefficients), exact=None)
            floor = 64 * np.finfo(float).eps * abs(qexp_eval(mags, x_min, True))
            if measured > 1.01 * _cusp_bound(c, x_min) + floor:
                if not c.complete:
                    raise ConvergenceRegionError(
                        f"{c.label}: |f| = {measured:.3e} at x={x_min:.3g} exceeds "
                        "the cusp decay bound")
                x_min = 0.0
            value, info = run(x_min)
            if x_min > 0:
                tighter = _cusp_cutoff(c, s.real, tol, abs(value))
                if tighter < x_min:
                    value, info = run(tighter)
    else:
        if convergence_abscissa is None:
            raise ConvergenceRegionError(
                f"{c.label} is not cuspidal: declare convergence_abscissa")
        if s.real <= convergence_abscissa:
            raise ConvergenceRegionError(
                f"Re s = {s.real} <= declared abscissa {convergence_abscissa}")
        k = c.weight
        gap = s.real - k
        if gap <= 0:
            raise ConvergenceRegionError(f"Re s = {s.real} must exceed the weight {k}")
        x_min = p.x_min or 0.5
        value, info = run(x_min)
        for _ in range(40):
            C = abs(f(np.array([x_min]))[0]) * x_min ** k
            tail = C * x_min ** gap / gap
            if tail <= 0.1 * tol * abs(value):
                break
            x_min = min(0.5 * x_min,
                        (0.05 * tol * abs(value) * gap / C) ** (1.0 / gap))
            value, info = run(x_min)
        info.tail_bound += tail
    return (value, info) if full_output else value
