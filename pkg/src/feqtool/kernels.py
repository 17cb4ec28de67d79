"""Closed-form Mellin algebra for elementary kernels.

A :class:`KernelExpr` is a finite linear combination of primitives whose
Mellin transforms are known exactly::

    Exp(b)            e^{-b x}                    Gamma(s) b^{-s}
    ExpSin(b, g)      e^{-b x} sin(g x)           Gamma(s) Im[(b - i g)^{-s}]
    ExpCos(b, g)      e^{-b x} cos(g x)           Gamma(s) Re[(b - i g)^{-s}]
    PowerRational(a)  x^a / (1 + x^2)             (pi/2) csc(pi (s + a) / 2)
    BesselHalf(nu)    sqrt(x) J_nu(x)             2^{s-1/2} G((s+nu+1/2)/2) / G((nu-s+3/2)/2)

``ExpSin``/``ExpCos`` with ``b = 0`` are the pure sine and cosine.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .complexfn import cgamma, rgamma, sin_pi
from .exceptions import StripError, UnsupportedPrimitiveError


@dataclass(frozen=True)
class Exp:
    beta: float

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError("Exp needs beta > 0")


@dataclass(frozen=True)
class ExpSin:
    beta: float
    gamma: float

    def __post_init__(self):
        if self.beta < 0 or not self.gamma > 0:
            raise ValueError("ExpSin needs beta >= 0 and gamma > 0")


@dataclass(frozen=True)
class ExpCos:
    beta: float
    gamma: float

    def __post_init__(self):
        if self.beta < 0 or not self.gamma > 0:
            raise ValueError("ExpCos needs beta >= 0 and gamma > 0")


@dataclass(frozen=True)
class PowerRational:
    alpha: int


@dataclass(frozen=True)
class BesselHalf:
    nu: float

    def __post_init__(self):
        if not self.nu > -1:
            raise ValueError("BesselHalf needs nu > -1")


Primitive = Union[Exp, ExpSin, ExpCos, PowerRational, BesselHalf]
_TAGS = {"exp": Exp, "expsin": ExpSin, "expcos": ExpCos,
         "power_rational": PowerRational, "bessel_half": BesselHalf}
_TAG_OF = {v: k for k, v in _TAGS.items()}


def strip(p: Primitive) -> tuple[float, float]:
    """Open interval of Re s on which the Mellin integral of ``p`` exists."""
    if isinstance(p, Exp):
        return 0.0, math.inf
    if isinstance(p, ExpSin):
        return (-1.0, 1.0) if p.beta == 0 else (-1.0, math.inf)
    if isinstance(p, ExpCos):
        return (0.0, 1.0) if p.beta == 0 else (0.0, math.inf)
    if isinstance(p, PowerRational):
        return -p.alpha, 2.0 - p.alpha
    if isinstance(p, BesselHalf):
        return -p.nu - 0.5, 1.0
    raise UnsupportedPrimitiveError(type(p).__name__)


@dataclass(frozen=True)
class KernelExpr:
    """sum_j c_j * primitive_j."""

    terms: tuple  # ((coefficient, primitive), ...)

    def __post_init__(self):
        terms = tuple((complex(c), p) for c, p in self.terms)
        special = [p for _, p in terms if isinstance(p, (PowerRational, BesselHalf))]
        if len(special) > 1:
            raise ValueError("at most one PowerRational/BesselHalf term per expression")
        object.__setattr__(self, "terms", terms)

    def __add__(self, other: "KernelExpr") -> "KernelExpr":
        return KernelExpr(self.terms + other.terms)

    def __rmul__(self, c) -> "KernelExpr":
        return KernelExpr(tuple((c * k, p) for k, p in self.terms))

    def strip(self) -> tuple[float, float]:
        lo, hi = -math.inf, math.inf
        for _, p in self.terms:
            a, b = strip(p)
            lo, hi = max(lo, a), min(hi, b)
        return lo, hi

    def is_exponential(self) -> bool:
        """True when every term decays exponentially (beta > 0)."""
        return all(isinstance(p, Exp)
                   or (isinstance(p, (ExpSin, ExpCos)) and p.beta > 0)
                   for _, p in self.terms)

    def min_decay(self) -> float:
        return min(p.beta for _, p in self.terms)

    def to_json(self) -> str:
        items = []
        for c, p in self.terms:
            d = {"type": _TAG_OF[type(p)], "coef": [c.real, c.imag]}
            d.update(p.__dict__)
            items.append(d)
        return json.dumps(items, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "KernelExpr":
        terms = []
        for d in json.loads(text):
            d = dict(d)
            kind = _TAGS[d.pop("type")]
            re_, im_ = d.pop("coef")
            terms.append((complex(re_, im_), kind(**d)))
        return cls(tuple(terms))


def kernel(*terms) -> KernelExpr:
    return KernelExpr(tuple(terms))


def _eval_primitive(p: Primitive, x):
    if isinstance(p, Exp):
        return np.exp(-p.beta * x)
    if isinstance(p, ExpSin):
        return np.exp(-p.beta * x) * np.sin(p.gamma * x)
    if isinstance(p, ExpCos):
        return np.exp(-p.beta * x) * np.cos(p.gamma * x)
    if isinstance(p, PowerRational):
        return x ** p.alpha / (1.0 + x * x)
    raise UnsupportedPrimitiveError(
        f"{type(p).__name__} has no pointwise evaluation")


def kernel_eval(K: KernelExpr, x):
    """Pointwise value of K at x > 0 (scalar or array)."""
    xa = np.asarray(x, dtype=float)
    if np.any(xa <= 0):
        raise ValueError("kernel_eval needs x > 0")
    out = np.zeros(xa.shape, dtype=complex)
    for c, p in K.terms:
        out = out + c * _eval_primitive(p, xa)
    return complex(out) if np.ndim(x) == 0 else out


def _mellin_primitive(p: Primitive, s: complex) -> complex:
    if isinstance(p, Exp):
        return cgamma(s) * cmath.exp(-s * math.log(p.beta))
    if isinstance(p, (ExpSin, ExpCos)):
        if p.beta == 0:
            trig = sin_pi(s / 2) if isinstance(p, ExpSin) else sin_pi((s + 1) / 2)
            return cgamma(s) * trig * cmath.exp(-s * math.log(p.gamma))
        # (b - i g)^{-s}: the two conjugate exponentials give Re/Im parts
        # via the principal branch (|arg| < pi/2 since b > 0)
        w = complex(p.beta, -p.gamma)
        u = cmath.exp(-s * cmath.log(w))
        v = cmath.exp(-s * cmath.log(w.conjugate()))
        if isinstance(p, ExpSin):
            return cgamma(s) * (u - v) / 2j
        return cgamma(s) * (u + v) / 2
    if isinstance(p, PowerRational):
        return (math.pi / 2) / sin_pi((s + p.alpha) / 2)
    if isinstance(p, BesselHalf):
        return (cmath.exp((s - 0.5) * math.log(2.0))
                * cgamma((s + p.nu + 0.5) / 2) * rgamma((p.nu - s + 1.5) / 2))
    raise UnsupportedPrimitiveError(type(p).__name__)


def kernel_mellin(K: KernelExpr, s) -> complex:
    """Exact Mellin transform of K at s; raises StripError outside the strip."""
    s = complex(s)
    total = 0j
    for c, p in K.terms:
        lo, hi = strip(p)
        if not (lo < s.real < hi):
            raise StripError(
                f"Re s = {s.real} outside ({lo}, {hi}) for term {p!r}")
        if isinstance(p, ExpSin) and p.beta == 0 and s == 0:
            raise StripError("pure sine transform evaluated at s = 0")
        total += c * _mellin_primitive(p, s)
    return total


def product_check(K1: KernelExpr, K2: KernelExpr, points) -> list[complex]:
    """K1^(s) * K2^(1 - s) at each point."""
    return [kernel_mellin(K1, s) * kernel_mellin(K2, 1 - complex(s))
            for s in points]


# -- the catalogue ---------------------------------------------------------
_R3 = math.sqrt(3.0)
SIN = kernel((1, ExpSin(0.0, 1.0)))
COS = kernel((1, ExpCos(0.0, 1.0)))
EXP = kernel((1, Exp(1.0)))
# e^{-x} - cos x + sin x
MIXED = kernel((1, Exp(1.0)), (-1, ExpCos(0.0, 1.0)), (1, ExpSin(0.0, 1.0)))
PAIR_LEFT = kernel((0.25, ExpSin(0.0, 1.0)), (0.25, ExpSin(_R3 / 2, 0.5)),
                    (_R3 / 4, ExpCos(_R3 / 2, 0.5)))
PAIR_RIGHT = kernel((0.25, ExpSin(0.0, 1.0)), (-0.5, ExpSin(_R3 / 2, 0.5)))


def power_rational(alpha: int) -> KernelExpr:
    return kernel((1, PowerRational(alpha)))


def bessel_half(nu: float) -> KernelExpr:
    return kernel((1, BesselHalf(nu)))
