"""q-expansions of a few concrete modular forms and their L-functions.

Coefficients are generated in exact integer arithmetic (eta powers by the
power recursion on the sparse pentagonal series) and stored as complex
arrays for evaluation.
"""
from __future__ import annotations

import cmath
import csv
import io
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .characters import DirichletCharacter, char_eval
from .complexfn import cgamma, riemann_zeta
from .exceptions import SizeError, UnsupportedSeriesError


@dataclass(frozen=True, eq=False)
class CoeffSeries:
    """f(tau) = sum_n a_n exp(2 pi i n tau / period).

    ``growth = (C, c)`` documents ``|a_n| <= C n^c`` and drives truncation.
    ``complete`` marks a finite q-series: the table holds every nonzero term.
    ``l_closed_form``, when present, evaluates L_f(s) directly.
    """

    coefficients: np.ndarray
    period: float
    weight: float
    level: int
    label: str
    growth: tuple = (1.0, 1.0)
    exact: Optional[tuple] = field(default=None, repr=False)
    complete: bool = False   # True when every nonzero coefficient is listed
    l_closed_form: Optional[Callable] = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "coefficients",
                           np.asarray(self.coefficients, dtype=complex))
        if not self.period > 0:
            raise ValueError("period must be positive")
        if self.level < 1:
            raise ValueError("level must be a positive integer")

    def __len__(self):
        return len(self.coefficients)

    def __getitem__(self, n):
        if self.exact is not None:
            return self.exact[n]
        return self.coefficients[n]

    @property
    def eval_scale(self) -> float:
        """period * sqrt(level): f(ix / sqrt(N)) = sum a_n e^{-2 pi n x / scale}."""
        return self.period * math.sqrt(self.level)

    @property
    def is_cusp(self) -> bool:
        return self.coefficients[0] == 0

    def to_csv(self, path=None) -> str:
        """Coefficient table as ``index,re,im`` rows."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "re", "im"])
        for n, a in enumerate(self.coefficients):
            w.writerow([n, repr(float(a.real)), repr(float(a.imag))])
        text = buf.getvalue()
        if path is not None:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        return text


def _check_size(n_max: int, limit: int) -> None:
    if not (1 <= n_max <= limit):
        raise SizeError(f"n_max={n_max} outside [1, {limit}]")


def _pentagonal(n_max: int) -> list[tuple[int, int]]:
    """Sparse (index, sign) terms of prod (1 - q^n) through q^n_max."""
    out = [(0, 1)]
    k = 1
    while True:
        e1 = k * (3 * k - 1) // 2
        if e1 > n_max:
            break
        sign = -1 if k % 2 else 1
        out.append((e1, sign))
        e2 = k * (3 * k + 1) // 2
        if e2 <= n_max:
            out.append((e2, sign))
        k += 1
    return sorted(out)


def eta_power(r: int, n_max: int) -> list[int]:
    """Coefficients of prod (1 - q^n)^r through q^n_max, exactly.

    Uses f_n = (1/n) sum_k ((r+1) k - n) g_k f_{n-k} with g the sparse
    pentagonal series.
    """
    g = [(k, c) for k, c in _pentagonal(n_max) if k > 0]
    f = [0] * (n_max + 1)
    f[0] = 1
    for n in range(1, n_max + 1):
        acc = 0
        for k, c in g:
            if k > n:
                break
            acc += ((r + 1) * k - n) * c * f[n - k]
        f[n] = acc // n
    return f


def delta_coefficients(n_max: int) -> CoeffSeries:
    """Ramanujan tau: q prod (1 - q^n)^24, weight 12, level 1."""
    _check_size(n_max, 10**5)
    e = eta_power(24, n_max - 1)
    tau = [0] + e
    return CoeffSeries(np.array(tau, dtype=float), 1.0, 12, 1, "Delta",
                       growth=(2.0, 6.0), exact=tuple(tau))


def divisor_sigma(k: int, n_max: int) -> list[int]:
    sig = [0] * (n_max + 1)
    for d in range(1, n_max + 1):
        dk = d**k
        for m in range(d, n_max + 1, d):
            sig[m] += dk
    return sig


def eisenstein4_coefficients(n_max: int) -> CoeffSeries:
    """E_4 = 1 + 240 sum sigma_3(n) q^n, weight 4, level 1."""
    _check_size(n_max, 10**6)
    a = [240 * v for v in divisor_sigma(3, n_max)]
    a[0] = 1

    def l_e4(s):
        s = complex(s)
        return 240.0 * riemann_zeta(s) * riemann_zeta(s - 3.0)
    return CoeffSeries(np.array(a, dtype=float), 1.0, 4, 1, "E4",
                       growth=(290.0, 3.0), exact=tuple(a), l_closed_form=l_e4)


def theta_coefficients(n_max: int) -> CoeffSeries:
    """theta(t) = sum_{n in Z} e^{-pi n^2 t} written with period 2."""
    _check_size(n_max, 10**7)
    a = [0] * (n_max + 1)
    a[0] = 1
    m = 1
    while m * m <= n_max:
        a[m * m] = 2
        m += 1

    def l_theta(s):
        return 2.0 * riemann_zeta(2.0 * complex(s))
    return CoeffSeries(np.array(a, dtype=float), 2.0, 0.5, 1, "theta",
                       growth=(2.0, 0.0), exact=tuple(a), l_closed_form=l_theta)


def theta_eval(t: float) -> float:
    """sum_{n in Z} e^{-pi n^2 t}; for small t the transformed series is used."""
    if not t > 0:
        raise ValueError("theta_eval needs t > 0")
    total, n = 1.0, 1
    while True:
        term = 2.0 * math.exp(-math.pi * n * n * t)
        total += term
        if term < 1e-17 * total:
            return total
        n += 1


def theta_modularity_residual(t: float) -> float:
    """|theta(1/t) - sqrt(t) theta(t)|."""
    return abs(theta_eval(1.0 / t) - math.sqrt(t) * theta_eval(t))


def eta_product_11(n_max: int) -> CoeffSeries:
    """eta(z)^2 eta(11 z)^2 = q prod (1 - q^n)^2 (1 - q^{11 n})^2."""
    _check_size(n_max, 10**5)
    m = n_max - 1
    e2 = eta_power(2, m)
    e2_11 = [0] * (m + 1)
    for i, c in enumerate(eta_power(2, m // 11)):
        e2_11[11 * i] = c
    prod = [0] * (m + 1)
    nz = [(j, c) for j, c in enumerate(e2_11) if c]
    for i, a in enumerate(e2):
        if a:
            for j, c in nz:
                if i + j > m:
                    break
                prod[i + j] += a * c
    a = [0] + prod
    return CoeffSeries(np.array(a, dtype=float), 1.0, 2, 11, "eta^2(z)eta^2(11z)",
                       growth=(2.0, 1.0), exact=tuple(a))


def twist_coefficients(c: CoeffSeries, psi: DirichletCharacter) -> CoeffSeries:
    """a_n psi(n); the level becomes lcm(N, N r, r^2) for psi mod r."""
    r = psi.modulus
    vals = np.array([char_eval(psi, n) for n in range(len(c))])
    coeffs = c.coefficients * vals
    level = math.lcm(c.level, c.level * r, r * r) if r > 1 else c.level
    exact = None
    if c.exact is not None and all(v.imag == 0 for v in vals):
        exact = tuple(int(a * int(v.real)) for a, v in zip(c.exact, vals))
    label = c.label if r == 1 else f"{c.label} x chi_{r}"
    return replace(c, coefficients=coeffs, level=level, label=label,
                   exact=exact, l_closed_form=None)


def modular_l(c: CoeffSeries, s, p=None) -> complex:
    """L_f(s) = sum a_n n^-s, continued.

    Cusp forms go through the completed integral divided by
    (scale / 2 pi)^s Gamma(s); other series need a closed form.
    """
    from .mellin import completed_lambda

    s = complex(s)
    if c.l_closed_form is not None:
        return complex(c.l_closed_form(s))
    if not c.is_cusp:
        raise UnsupportedSeriesError(f"{c.label}: no closed form for a non-cusp form")
    lam = completed_lambda(c, s, p)
    return lam / (cmath.exp(s * math.log(c.eval_scale / (2 * math.pi))) * cgamma(s))


def completed_l_closed(c: CoeffSeries, s) -> complex:
    """(scale / 2 pi)^s Gamma(s) L_f(s) from the closed form of L_f."""
    s = complex(s)
    if c.l_closed_form is None:
        raise UnsupportedSeriesError(f"{c.label}: no closed form")
    return (cmath.exp(s * math.log(c.eval_scale / (2 * math.pi))) * cgamma(s)
            * complex(c.l_closed_form(s)))


def fricke_eigenvalue(c: CoeffSeries, x: float = 1.1) -> complex:
    """Measured w with f(i / (N x)) = w N^{k/2} ... in the normalized form
    f(ix/sqrt N) = w i^k x^{-k} f(i/(sqrt N x)).

    Evaluated away from the fixed point x = 1; used only as an independent
    reference for the sign in the level-N equation.
    """
    from .mellin import qexp_eval

    k = c.weight
    lhs = qexp_eval(c, x, subtract_constant=True)
    rhs = (1j) ** k * x ** (-k) * qexp_eval(c, 1.0 / x, subtract_constant=True)
    return lhs / rhs
