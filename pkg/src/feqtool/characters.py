"""Dirichlet characters: construction, evaluation, classification, Gauss sums.

A character mod ``q`` is stored through the CRT decomposition of the unit
group into cyclic factors.  Each factor has a generator ``g`` of order
``m`` and the character assigns ``chi(g) = e(j / m)`` for an integer
exponent ``j``.  Values are kept as exact angles ``k / e`` (``e`` the group
exponent) and turned into complex numbers on demand.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

from .exceptions import (AmbiguousCharacterError, CharacterNotFoundError,
                         SizeError)

MAX_MODULUS = 10**4


def _factorize(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def euler_phi(n: int) -> int:
    result = n
    for p, _ in _factorize(n):
        result -= result // p
    return result


def _primitive_root(p: int) -> int:
    # smallest g generating (Z/p^2)^*, hence every (Z/p^k)^*
    phi = p - 1
    primes = [r for r, _ in _factorize(phi)]
    for g in range(2, p * p):
        if g % p == 0:
            continue
        if all(pow(g, phi // r, p) != 1 for r in primes):
            if p == 2 or pow(g, p - 1, p * p) != 1:
                return g
    raise AssertionError(f"no primitive root mod {p}")


@dataclass(frozen=True)
class _Factor:
    modulus: int      # prime power p^e
    generator: int    # generator lifted to an integer mod q
    order: int
    log: dict         # residue mod p^e -> discrete log


@lru_cache(maxsize=256)
def _unit_group(q: int) -> tuple[_Factor, ...]:
    factors = []
    for p, e in _factorize(q):
        pe = p**e
        gens = []
        if p == 2:
            if e == 2:
                gens = [(pe - 1, 2)]
            elif e >= 3:
                gens = [(pe - 1, 2), (5, 2 ** (e - 2))]
        else:
            gens = [(_primitive_root(p) % pe, pe // p * (p - 1))]
        if p == 2 and e >= 3:
            # (Z/2^e)^* = <-1> x <5>; log table over pairs
            table = {}
            x5 = 1
            for b in range(2 ** (e - 2)):
                table[x5] = (0, b)
                table[(pe - x5) % pe] = (1, b)
                x5 = x5 * 5 % pe
            for idx, (g, order) in enumerate(gens):
                log = {r: t[idx] for r, t in table.items()}
                factors.append(_Factor(pe, _crt_lift(g, pe, q), order, log))
        else:
            for g, order in gens:
                log, x = {}, 1
                for k in range(order):
                    log[x] = k
                    x = x * g % pe
                factors.append(_Factor(pe, _crt_lift(g, pe, q), order, log))
    return tuple(factors)


def _crt_lift(g: int, pe: int, q: int) -> int:
    """Integer congruent to g mod pe and to 1 mod q / pe."""
    rest = q // pe
    if rest == 1:
        return g % q
    # x = 1 + rest * t with 1 + rest*t = g (mod pe)
    t = (g - 1) * pow(rest, -1, pe) % pe
    return (1 + rest * t) % q


@dataclass(frozen=True, eq=False)
class DirichletCharacter:
    """A Dirichlet character mod ``modulus``.

    ``generator_exponents`` maps each unit-group generator (an integer mod
    ``modulus``) to ``j`` with ``chi(g) = exp(2 pi i j / ord(g))``.
    """

    modulus: int
    generator_exponents: tuple  # ((generator, exponent), ...)
    _angles: tuple = field(repr=False, default=())  # k with chi(n)=e(k/E); -1 off units
    _denominator: int = field(repr=False, default=1)

    @classmethod
    def from_exponents(cls, q: int, exponents) -> "DirichletCharacter":
        factors = _unit_group(q)
        if isinstance(exponents, dict):
            exponents = [exponents.get(f.generator, 0) for f in factors]
        exponents = [int(j) % f.order for j, f in zip(exponents, factors)]
        if len(exponents) != len(factors):
            raise ValueError(f"expected {len(factors)} exponents for q={q}")
        denom = math.lcm(*(f.order for f in factors)) if factors else 1
        angles = []
        for n in range(q):
            if math.gcd(n, q) != 1:
                angles.append(-1)
                continue
            k = 0
            for j, f in zip(exponents, factors):
                k += j * f.log[n % f.modulus] * (denom // f.order)
            angles.append(k % denom)
        if q == 1:
            angles = [0]
        gens = tuple((f.generator, j) for f, j in zip(factors, exponents))
        return cls(q, gens, tuple(angles), denom)

    # -- evaluation -------------------------------------------------------
    def angle(self, n: int):
        """chi(n) as a fraction k/E of a full turn, or None off the units."""
        k = self._angles[n % self.modulus]
        return None if k < 0 else (k, self._denominator)

    def __call__(self, n: int) -> complex:
        return char_eval(self, n)

    def values(self) -> np.ndarray:
        """Value table chi(0), ..., chi(q-1) as complex numbers."""
        return np.array([char_eval(self, n) for n in range(self.modulus)])

    def __eq__(self, other):
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return (self.modulus == other.modulus
                and self.generator_exponents == other.generator_exponents)

    def __hash__(self):
        return hash((self.modulus, self.generator_exponents))

    def order(self) -> int:
        ks = [k for k in self._angles if k > 0]
        return self._denominator // math.gcd(self._denominator, *ks) if ks else 1

    def is_principal(self) -> bool:
        return all(j == 0 for _, j in self.generator_exponents)

    # -- serialization ----------------------------------------------------
    def to_dict(self) -> dict:
        return {"modulus": self.modulus,
                "generator_exponents": {str(g): j
                                        for g, j in self.generator_exponents}}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "DirichletCharacter":
        exps = {int(g): int(j) for g, j in d["generator_exponents"].items()}
        return cls.from_exponents(int(d["modulus"]), exps)

    @classmethod
    def from_json(cls, text: str) -> "DirichletCharacter":
        return cls.from_dict(json.loads(text))


def _root_of_unity(k: int, e: int) -> complex:
    # exact on the axes so that real characters stay real
    if (4 * k) % e == 0:
        return (1, 1j, -1, -1j)[(4 * k // e) % 4]
    return cmath.exp(2j * math.pi * k / e)


def char_eval(chi: DirichletCharacter, n: int) -> complex:
    """chi(n mod q); zero when gcd(n, q) > 1."""
    a = chi.angle(n)
    if a is None:
        return 0j
    return complex(_root_of_unity(*a))


def character_group(q: int) -> list[DirichletCharacter]:
    """All phi(q) characters mod q, principal first."""
    if not (1 <= q <= MAX_MODULUS):
        raise SizeError(f"modulus {q} outside [1, {MAX_MODULUS}]")
    factors = _unit_group(q)
    return [DirichletCharacter.from_exponents(q, exps)
            for exps in product(*(range(f.order) for f in factors))]


def principal_character(q: int) -> DirichletCharacter:
    return DirichletCharacter.from_exponents(q, [0] * len(_unit_group(q)))


def find_character(q: int, pins, tol: float = 1e-9) -> DirichletCharacter:
    """The unique character mod q with chi(n) = value for every (n, value)."""
    pins = dict(pins)
    found = [chi for chi in character_group(q)
             if all(abs(char_eval(chi, n) - complex(v)) <= tol
                    for n, v in pins.items())]
    if not found:
        raise CharacterNotFoundError(f"no character mod {q} matches {pins}")
    if len(found) > 1:
        raise AmbiguousCharacterError(
            f"{len(found)} characters mod {q} match {pins}", found)
    return found[0]


def parity(chi: DirichletCharacter) -> int:
    """0 for even characters (chi(-1) = 1), 1 for odd ones."""
    return 0 if chi.angle(-1)[0] == 0 else 1


def conductor(chi: DirichletCharacter) -> int:
    q = chi.modulus
    for d in sorted(d for d in range(1, q + 1) if q % d == 0):
        if all(chi.angle(n)[0] == 0
               for n in range(1, q, d) if math.gcd(n, q) == 1):
            return d
    return q


def is_primitive(chi: DirichletCharacter) -> bool:
    return conductor(chi) == chi.modulus


def conjugate(chi: DirichletCharacter) -> DirichletCharacter:
    factors = _unit_group(chi.modulus)
    return DirichletCharacter.from_exponents(
        chi.modulus, [-j for _, j in chi.generator_exponents][:len(factors)])


def gauss_sum(chi: DirichletCharacter) -> complex:
    """tau(chi) = sum_{a=1}^{q} e(a/q) chi(a), summed directly."""
    q = chi.modulus
    total = 0j
    for a in range(1, q + 1):
        c = char_eval(chi, a)
        if c:
            total += _root_of_unity(a % q, q) * c
    return total


def quadratic_character(q: int) -> DirichletCharacter:
    """The unique real non-principal character mod a prime q."""
    chis = [c for c in character_group(q) if c.order() == 2]
    if len(chis) != 1:
        raise AmbiguousCharacterError(
            f"{len(chis)} quadratic characters mod {q}", chis)
    return chis[0]
