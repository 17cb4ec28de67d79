"""Dirichlet L-functions, the Davenport-Heilbronn combination, and Dirichlet
polynomials.

Every continuation goes through :func:`feqtool.complexfn.hurwitz_zeta`.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import reduce

from .characters import (DirichletCharacter, char_eval, conjugate,
                         find_character, gauss_sum, is_primitive, parity)
from .complexfn import cgamma, hurwitz_zeta, riemann_zeta, sin_pi
from .exceptions import DomainError, PoleError

# (sqrt(10 - 2 sqrt 5) - 2) / (sqrt 5 - 1)
DH_ALPHA = (math.sqrt(10.0 - 2.0 * math.sqrt(5.0)) - 2.0) / (math.sqrt(5.0) - 1.0)


def dirichlet_l(s, chi: DirichletCharacter) -> complex:
    """L(s, chi) = q^-s sum_{a=1}^{q} chi(a) zeta(s, a/q)."""
    s = complex(s)
    q = chi.modulus
    if chi.is_principal() and abs(s - 1.0) < 1e-12:
        raise PoleError(f"L(s, principal mod {q}) has a pole at s=1")
    if q == 1:
        return riemann_zeta(s)
    total = 0j
    for a in range(1, q + 1):
        c = char_eval(chi, a)
        if c:
            total += c * hurwitz_zeta(s, a / q)
    return cmath.exp(-s * math.log(q)) * total


def periodic_l(s, table) -> complex:
    """sum_n c(n) n^-s for a q-periodic coefficient table c(0..q-1)."""
    s = complex(s)
    q = len(table)
    total = 0j
    for a in range(1, q + 1):
        c = complex(table[a % q])
        if c:
            total += c * hurwitz_zeta(s, a / q)
    return cmath.exp(-s * math.log(q)) * total


def l_feq_rhs(s, chi: DirichletCharacter) -> complex:
    """Right side of the asymmetric functional equation of L(s, chi):

    eps(chi) 2^s pi^(s-1) q^(1/2-s) Gamma(1-s) sin(pi (s+kappa)/2) L(1-s, conj chi)
    with eps(chi) = tau(chi) i^-kappa q^-1/2.
    """
    s = complex(s)
    q = chi.modulus
    kappa = parity(chi)
    eps = gauss_sum(chi) * (1j) ** (-kappa) / math.sqrt(q)
    factor = cmath.exp(s * math.log(2.0) + (s - 1.0) * math.log(math.pi)
                       + (0.5 - s) * math.log(q))
    return (eps * factor * cgamma(1.0 - s) * sin_pi((s + kappa) / 2.0)
            * dirichlet_l(1.0 - s, conjugate(chi)))


def l_feq_residual(s, chi: DirichletCharacter) -> float:
    """Relative difference between L(s, chi) and the functional-equation side."""
    if not is_primitive(chi):
        raise DomainError("functional equation check needs a primitive character")
    lhs = dirichlet_l(s, chi)
    rhs = l_feq_rhs(s, chi)
    return abs(lhs - rhs) / abs(lhs)


def dh_character() -> DirichletCharacter:
    """The character mod 5 with chi(2) = i."""
    return find_character(5, {2: 1j})


def dh_coefficients() -> list[complex]:
    """Period-5 coefficient table of the Davenport-Heilbronn series."""
    sig = dh_character()
    sbar = conjugate(sig)
    c1 = (1 - 1j * DH_ALPHA) / 2
    c2 = (1 + 1j * DH_ALPHA) / 2
    return [c1 * char_eval(sig, n) + c2 * char_eval(sbar, n) for n in range(5)]


def davenport_heilbronn(s) -> complex:
    s = complex(s)
    sig = dh_character()
    return ((1 - 1j * DH_ALPHA) / 2 * dirichlet_l(s, sig)
            + (1 + 1j * DH_ALPHA) / 2 * dirichlet_l(s, conjugate(sig)))


def sigma_5(s) -> complex:
    """(1 + 5^(1/2 - s)) zeta(s)."""
    s = complex(s)
    return (1.0 + cmath.exp((0.5 - s) * math.log(5.0))) * riemann_zeta(s)


@dataclass(frozen=True)
class DirichletPolySpec:
    """Product of factors (1 + sign * sqrt(a) * a^-s)."""

    factors: tuple  # ((a, sign), ...)

    def __post_init__(self):
        factors = tuple((int(a), int(sg)) for a, sg in self.factors)
        if not factors:
            raise ValueError("at least one factor is required")
        for a, sg in factors:
            if a < 2 or sg not in (1, -1):
                raise ValueError(f"bad factor ({a}, {sg})")
        object.__setattr__(self, "factors", factors)

    @property
    def A(self) -> int:
        return reduce(lambda x, y: x * y, (a for a, _ in self.factors), 1)

    @property
    def epsilon(self) -> int:
        return reduce(lambda x, y: x * y, (sg for _, sg in self.factors), 1)

    def expand(self) -> dict:
        """Dirichlet coefficients {n: w_n} with P(s) = sum_n w_n n^-s."""
        terms = {1: 1.0}
        for a, sg in self.factors:
            new = dict(terms)
            for n, w in terms.items():
                new[n * a] = new.get(n * a, 0.0) + w * sg * math.sqrt(a)
            terms = new
        return terms

    def times_zeta_table(self) -> list[float]:
        """Periodic coefficient table of P(s) zeta(s) as sum_n c(n) n^-s.

        c(n) = sum of w_d over the support d of P dividing n, which is
        periodic with period lcm(support).
        """
        terms = self.expand()
        period = math.lcm(*terms)
        return [sum(w for d, w in terms.items() if n % d == 0)
                for n in range(period)]


def dirichlet_poly(P: DirichletPolySpec, s) -> complex:
    s = complex(s)
    out = 1.0 + 0j
    for a, sg in P.factors:
        out *= 1.0 + sg * math.sqrt(a) * cmath.exp(-s * math.log(a))
    return out


def dirichlet_series_coefficients(table, n_max: int) -> list[complex]:
    """Expand a periodic table into the first n_max Dirichlet coefficients."""
    q = len(table)
    return [complex(table[n % q]) for n in range(1, n_max + 1)]
