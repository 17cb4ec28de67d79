"""The registry of functional-equation cases run by ``feqtool``."""
from __future__ import annotations

import cmath
import math
from functools import lru_cache

from . import kernels as K
from .characters import (conjugate, find_character, gauss_sum,
                         quadratic_character)
from .complexfn import cgamma, riemann_zeta
from .feq import Expected, FeqCase, SamplePlan
from .lseries import (DirichletPolySpec, davenport_heilbronn, dh_coefficients,
                      dirichlet_l, periodic_l)
from .mellin import (MT_EXP, MT_LINEAR, MT_RECIP, PeriodicExpSum,
                     QuadratureParams, completed_lambda, gaussian_pair_check,
                     master_theorem_check)
from .modular import (completed_l_closed, delta_coefficients,
                      eisenstein4_coefficients, eta_product_11,
                      fricke_eigenvalue, theta_coefficients,
                      twist_coefficients)

TWO_PI = 2.0 * math.pi


# -- building blocks ---------------------------------------------------------
def _pow(base: float, s: complex) -> complex:
    return cmath.exp(s * math.log(base))


class ExpSumTransform:
    """s -> int x^(s-1) sum_m c(m) xi(m x) dx for xi(x) = e^{-rate x}.

    Analytically this is Gamma(s) rate^-s sum c(n) n^-s; ``series`` may
    override the Dirichlet series (e.g. an L-function routine).
    """

    def __init__(self, table, rate: float = 1.0, series=None):
        self.table = list(table)
        self.rate = rate
        self.series = series or (lambda s: periodic_l(s, self.table))
        self._sum = PeriodicExpSum(self.table, rate)

    def analytic(self, s: complex) -> complex:
        return cgamma(s) * _pow(self.rate, -s) * self.series(s)

    def quadrature(self, s: complex, p: QuadratureParams = None) -> complex:
        return self._sum.mellin(s, p)


def _ratio_q_evaluators(x1: ExpSumTransform, x2: ExpSumTransform, eta: K.KernelExpr,
                        params: QuadratureParams = None):
    def analytic(s):
        return x1.analytic(s) * K.kernel_mellin(eta, 1 - s), x2.analytic(1 - s)

    def quadrature(s):
        return (x1.quadrature(s, params) * K.kernel_mellin(eta, 1 - s),
                x2.quadrature(1 - s, params))
    return {"analytic": analytic, "quadrature": quadrature}


def _product_evaluator(k1: K.KernelExpr, k2: K.KernelExpr, k: float = 1.0):
    return {"analytic": lambda s: (K.kernel_mellin(k1, s), K.kernel_mellin(k2, k - s))}


@lru_cache(maxsize=None)
def _delta():
    return delta_coefficients(1500)


@lru_cache(maxsize=None)
def _eta11():
    return eta_product_11(3000)


@lru_cache(maxsize=None)
def _delta_twist():
    return twist_coefficients(delta_coefficients(6000), quadratic_character(5))


def _completed_evaluator(series_factory, k: float, params: QuadratureParams = None):
    def quadrature(s):
        c = series_factory()
        return completed_lambda(c, s, params), completed_lambda(c, k - s, params)
    return {"quadrature": quadrature}


# -- registry ----------------------------------------------------------------
UNIT_STRIP = SamplePlan()
HALF_PI = math.pi / 2


def _cases() -> list[FeqCase]:
    cases = []
    add = cases.append

    add(FeqCase(
        "rational-self", "product", "rational kernel",
        "x^a/(1+x^2) with a=0: product of transforms, reported as measured",
        _product_evaluator(K.power_rational(0), K.power_rational(0)),
        expected=Expected(1, HALF_PI ** 2, "stated lambda = pi/2", gating=False),
        expected_kind="exploratory",
        notes=("the product equals (pi^2/2)/sin(pi s), which is not constant",)))
    add(FeqCase("sine-self", "product", "sine kernel", "sin x with itself",
                _product_evaluator(K.SIN, K.SIN),
                expected=Expected(1, HALF_PI, "lambda^2 = pi/2 from Gamma reflection")))
    add(FeqCase("cosine-self", "product", "cosine kernel", "cos x with itself",
                _product_evaluator(K.COS, K.COS),
                expected=Expected(1, HALF_PI, "lambda^2 = pi/2 from Gamma reflection")))
    for nu in (0.0, 0.5, 1.0, 2.5):
        b = K.bessel_half(nu)
        add(FeqCase(f"bessel{nu:g}", "product", "Bessel kernel",
                    f"sqrt(x) J_nu(x), nu={nu:g}", _product_evaluator(b, b),
                    expected=Expected(1, 1.0, "lambda = 1")))
    add(FeqCase("mixed-self", "product", "exp/cos/sin mix", "e^-x - cos x + sin x with itself",
                _product_evaluator(K.MIXED, K.MIXED),
                expected=Expected(1, math.pi, "lambda = sqrt(pi)")))
    add(FeqCase("pair-left-right", "product", "distinct kernel pair", "left kernel with right kernel",
                _product_evaluator(K.PAIR_LEFT, K.PAIR_RIGHT),
                expected=Expected(1, math.pi / 4, "lambda = sqrt(pi)/2"),
                discrepancy_ok=True,
                notes=("measured constant is pi/32 with the stated coefficients",)))
    add(FeqCase("pair-right-left", "product", "distinct kernel pair", "right kernel with left kernel",
                _product_evaluator(K.PAIR_RIGHT, K.PAIR_LEFT),
                expected=Expected(1, math.pi / 4, "lambda = sqrt(pi)/2"),
                discrepancy_ok=True))

    def gaussian(s):
        l1, r1, l2, r2 = gaussian_pair_check(s.real)
        return complex(l1, l2), complex(r1, r2)
    add(FeqCase("gaussian-pair", "identity", "Gaussian pair",
                "Gaussian cosine/sine pair; s plays the role of n, packed as re/im",
                {"quadrature": gaussian}, expected=Expected(1, 1, "identity"),
                plan=SamplePlan(0.0, 2.5, 4)))

    for name, inst in (("exp", MT_EXP), ("linear", MT_LINEAR), ("recip", MT_RECIP)):
        add(FeqCase(f"master-{name}", "identity", "Master Theorem",
                    f"Master Theorem, {inst.label}",
                    {"quadrature": lambda s, inst=inst: master_theorem_check(inst, s)},
                    expected=Expected(1, 1, "identity"), plan=SamplePlan(0, 1, 5)))

    one = ExpSumTransform([1.0], series=riemann_zeta)
    add(FeqCase("zeta-sine", "ratio_q", "zeta, sine", "chi=1, xi=e^-x, eta=sin",
                _ratio_q_evaluators(one, one, K.SIN), eta_kernel="sin",
                expected=Expected(TWO_PI, 0.5, "(2 pi)^s / 2")))

    chi5 = quadratic_character(5)
    l5 = ExpSumTransform(chi5.values(), series=lambda s: dirichlet_l(s, chi5))
    l5bar = ExpSumTransform(conjugate(chi5).values(),
                            series=lambda s: dirichlet_l(s, conjugate(chi5)))
    tau5 = gauss_sum(chi5)
    add(FeqCase("even-chi5", "ratio_q", "even character",
                "even quadratic chi mod 5, chi_dagger = conj chi, eta=sin",
                _ratio_q_evaluators(l5, l5bar, K.SIN), eta_kernel="sin",
                expected=Expected(TWO_PI / 5, tau5 / 2, "tau(chi)/2 (2 pi/q)^s")))

    chi3 = find_character(3, {2: -1})
    l3 = ExpSumTransform(chi3.values(), series=lambda s: dirichlet_l(s, chi3))
    add(FeqCase("odd-chi3", "ratio_q", "odd character", "odd chi mod 3, chi_dagger = chi, eta=cos",
                _ratio_q_evaluators(l3, l3, K.COS), eta_kernel="cos",
                expected=Expected(TWO_PI / 3, gauss_sum(chi3) / 2j, "tau(chi)/(2i)")))

    dh = ExpSumTransform(dh_coefficients(), series=davenport_heilbronn)
    add(FeqCase("dh-cosine", "ratio_q", "Davenport-Heilbronn",
                "Davenport-Heilbronn combination, eta=cos",
                _ratio_q_evaluators(dh, dh, K.COS), eta_kernel="cos",
                expected=Expected(TWO_PI / 5, math.sqrt(5) / 2, "sqrt(5)/2 (2 pi/5)^s"),
                discrepancy_ok=True))

    r5 = math.sqrt(5.0)
    sig5 = ExpSumTransform([1 + r5, 1, 1, 1, 1])
    add(FeqCase("sigma5-tuple", "ratio_q", "sigma_5 tuple", "xi = e^-x + sqrt5 e^-5x, chi=1, eta=sin",
                _ratio_q_evaluators(sig5, sig5, K.SIN), eta_kernel="sin",
                expected=Expected(TWO_PI / 5, r5 / 2, "sqrt(5)/2 (2 pi/5)^s")))
    chi5b = find_character(5, {2: -1})
    l5b = ExpSumTransform(chi5b.values(), series=lambda s: dirichlet_l(s, chi5b))
    add(FeqCase("chi5-tuple", "ratio_q", "character tuple", "chi mod 5 with chi(2)=-1, xi=e^-x, eta=sin",
                _ratio_q_evaluators(l5b, l5b, K.SIN), eta_kernel="sin",
                expected=Expected(TWO_PI / 5, r5 / 2, "sqrt(5)/2 (2 pi/5)^s")))

    def poly_case(cid, spec, Q, sigma2, source, plan=UNIT_STRIP, notes=()):
        from .lseries import dirichlet_poly
        t = ExpSumTransform(spec.times_zeta_table(),
                            series=lambda s: dirichlet_poly(spec, s) * riemann_zeta(s))
        return FeqCase(cid, "ratio_q", "Dirichlet polynomial",
                       f"Dirichlet polynomial {spec.factors} times zeta, eta=sin",
                       _ratio_q_evaluators(t, t, K.SIN), eta_kernel="sin",
                       expected=Expected(Q, sigma2, source), plan=plan, notes=notes)
    add(poly_case("poly-a6", DirichletPolySpec(((2, 1), (3, 1))), math.pi / 3,
                  math.sqrt(6) / 2, "sqrt(A)/2 (2 pi/A)^s, A=6"))
    add(poly_case("poly-a4-minus", DirichletPolySpec(((4, -1),)), math.pi / 2, -1.0,
                  "eps sqrt(A)/2 (2 pi/A)^s with eps=-1, A=4",
                  plan=SamplePlan(exclude=(0.5,)),
                  notes=("the stated sqrt(-A)/2 (2 pi/-A)^s is read as "
                         "eps sqrt(A)/2 (2 pi/A)^s; s=1/2 is a zero of P",)))

    z_slow = ExpSumTransform([1.0], rate=1 / TWO_PI, series=riemann_zeta)
    z_fast = ExpSumTransform([1.0], rate=TWO_PI, series=riemann_zeta)
    add(FeqCase("qfree-slow", "ratio_plain", "Q-free ratio",
                "xi_1 = e^(-x/2pi), xi_2 = e^-x, eta=sin; exponent reported",
                _ratio_q_evaluators(z_slow, one, K.SIN), eta_kernel="sin",
                expected_kind="exploratory",
                notes=("ratio is (2 pi)^(2s)/2, so Q^s is not removed",
                       "denominator read as X(1-s), the eta transform")))
    add(FeqCase("qfree-fast", "ratio_plain", "Q-free ratio",
                "xi_1 = e^-x, xi_2 = e^(-2 pi x), eta=sin",
                _ratio_q_evaluators(one, z_fast, K.SIN), eta_kernel="sin",
                expected=Expected(1, math.pi, "sigma^2 = pi by substitution"),
                notes=("denominator read as X(1-s), the eta transform",)))

    add(FeqCase("delta", "ratio_k", "cusp form, level 1", "Ramanujan Delta, k=12",
                _completed_evaluator(_delta, 12), k=12,
                expected=Expected(1, 1, "i^k with k=12"),
                plan=SamplePlan(3, 9, 5, offsets=(2j,))))
    e4 = eisenstein4_coefficients(10)
    add(FeqCase("eisenstein4", "ratio_k", "Eisenstein series", "Eisenstein E4, zeta closed form",
                {"analytic": lambda s: (completed_l_closed(e4, s),
                                        completed_l_closed(e4, 4 - s))},
                k=4, expected=Expected(1, 1, "i^k with k=4"),
                plan=SamplePlan(0.6, 3.4, 5)))
    th = theta_coefficients(10)
    add(FeqCase("theta", "ratio_k", "theta series", "Jacobi theta, k=1/2",
                {"analytic": lambda s: (completed_l_closed(th, s),
                                        completed_l_closed(th, 0.5 - s))},
                k=0.5, expected=Expected(1, 1, "omega = 1"),
                plan=SamplePlan(0.0, 0.5, 9)))
    add(FeqCase("eta11", "ratio_k", "cusp form, level 11",
                "eta(z)^2 eta(11z)^2, weight 2 level 11, companion taken as f itself",
                _completed_evaluator(_eta11, 2), k=2,
                expected=Expected(1, _eta11_reference(), "i^k times measured Fricke sign",
                                  gating=False),
                const_tol=1e-6, plan=SamplePlan(0, 2, 9, offsets=(1j,))))
    add(FeqCase("delta-twist5", "ratio_k", "character twist",
                "Delta twisted by the quadratic character mod 5 (level 25)",
                _completed_evaluator(_delta_twist, 12), k=12,
                expected=Expected(1, _twist_reference(), "i^k tau(psi)^2 / r",
                                  gating=False),
                const_tol=1e-6, plan=SamplePlan(3, 9, 5),
                notes=("twist read with psi throughout",)))
    return cases


def _eta11_reference() -> complex:
    return (1j) ** 2 * fricke_eigenvalue(_eta11())


def _twist_reference() -> complex:
    psi = quadratic_character(5)
    return (1j) ** 12 * gauss_sum(psi) ** 2 / 5


@lru_cache(maxsize=None)
def registry() -> dict:
    return {c.id: c for c in _cases()}


def get_case(case_id: str) -> FeqCase:
    from .exceptions import UnknownCaseError
    reg = registry()
    if case_id not in reg:
        raise UnknownCaseError(case_id)
    return reg[case_id]
