import cmath
import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from feqtool.complexfn import (bernoulli_numbers, bernoulli_polynomial, cgamma,
                               cos_pi, hurwitz_zeta, hurwitz_zeta_with_bound,
                               rgamma, riemann_zeta, sin_pi,
                               zeta_reflection_factor)
from feqtool.exceptions import DomainError, PoleError

from conftest import rel

re_part = st.floats(-9.5, 19.5, allow_nan=False)
im_part = st.floats(-20, 20, allow_nan=False)


def _off_poles(s):
    return not (s.real <= 0.5 and abs(s - round(s.real)) < 1e-2)


@settings(max_examples=150, deadline=None)
@given(re_part, im_part)
def test_gamma_matches_mpmath(x, y):
    s = complex(x, y)
    if not _off_poles(s):
        return
    assert rel(cgamma(s), complex(mp.gamma(s))) < 1e-11


@settings(max_examples=150, deadline=None)
@given(st.floats(-8, 8), st.floats(-15, 15))
def test_gamma_reflection(x, y):
    s = complex(x, y)
    if not (_off_poles(s) and _off_poles(1 - s)):
        return
    lhs = cgamma(s) * cgamma(1 - s) * sin_pi(s)
    assert rel(lhs, math.pi) < 1e-11


@settings(max_examples=150, deadline=None)
@given(st.floats(-8, 15), st.floats(-15, 15))
def test_gamma_recurrence(x, y):
    s = complex(x, y)
    if not (_off_poles(s) and _off_poles(s + 1)):
        return
    assert rel(cgamma(s + 1), s * cgamma(s)) < 1e-11


def test_gamma_known_values():
    assert rel(cgamma(0.5), math.sqrt(math.pi)) < 1e-14
    assert rel(cgamma(6), 120) < 1e-13
    assert rel(cgamma(-0.5), -2 * math.sqrt(math.pi)) < 1e-13


def test_gamma_poles():
    for n in (0, -1, -7):
        with pytest.raises(PoleError):
            cgamma(n)
    assert abs(rgamma(-3)) < 1e-15
    assert rel(rgamma(2.5), 1 / cgamma(2.5)) < 1e-13


def test_trig_pi_reduction():
    assert sin_pi(1e6) == 0
    assert abs(cos_pi(0.5 + 2e5)) < 1e-15
    assert rel(sin_pi(0.25 + 0.3j), cmath.sin(math.pi * (0.25 + 0.3j))) < 1e-14


@settings(max_examples=120, deadline=None)
@given(st.floats(-9.5, 19.5), st.floats(-20, 20))
def test_zeta_matches_mpmath(x, y):
    s = complex(x, y)
    if abs(s - 1) < 1e-2:
        return
    if x < 0 and abs(y) < 0.05 and abs(x - 2 * round(x / 2)) < 0.05:
        return  # trivial zeros: relative error is meaningless there
    assert rel(riemann_zeta(s), complex(mp.zeta(s))) < 1e-10


@settings(max_examples=100, deadline=None)
@given(st.floats(-8, 9), st.floats(-15, 15))
def test_zeta_functional_equation(x, y):
    s = complex(x, y)
    if abs(s - 1) < 0.05 or abs(s) < 0.05 or not _off_poles(1 - s):
        return
    lhs = riemann_zeta(s)
    rhs = zeta_reflection_factor(s) * riemann_zeta(1 - s)
    assert abs(lhs - rhs) <= 1e-10 * max(abs(lhs), abs(rhs), 1e-300)


def test_zeta_special_values():
    assert rel(riemann_zeta(2), math.pi ** 2 / 6) < 1e-14
    assert rel(riemann_zeta(0), -0.5) < 1e-12
    assert rel(riemann_zeta(-1), -1 / 12) < 1e-12
    assert abs(riemann_zeta(-2)) < 1e-14
    with pytest.raises(PoleError):
        riemann_zeta(1)


@settings(max_examples=80, deadline=None)
@given(st.floats(-1, 3), st.floats(-10, 10), st.floats(0.05, 1.0))
def test_hurwitz_matches_mpmath(x, y, a):
    s = complex(x, y)
    if abs(s - 1) < 1e-2:
        return
    ref = complex(mp.zeta(s, a))
    assert abs(hurwitz_zeta(s, a) - ref) <= 1e-10 * max(abs(ref), 1.0)


def test_hurwitz_reduces_to_zeta_and_bound_is_small():
    v, bound = hurwitz_zeta_with_bound(0.5 + 3j, 1.0)
    assert rel(v, riemann_zeta(0.5 + 3j)) < 1e-12
    assert bound < 1e-14


def test_hurwitz_domain():
    with pytest.raises(DomainError):
        hurwitz_zeta(2, 0)
    with pytest.raises(DomainError):
        hurwitz_zeta(2, 1.5)
    with pytest.raises(PoleError):
        hurwitz_zeta(1, 0.3)


def test_bernoulli():
    b = bernoulli_numbers(12)
    assert b[1] == -0.5 and b[2] * 6 == 1 and b[12] * 2730 == -691
    assert bernoulli_polynomial(2, 0.5) == -bernoulli_numbers(2)[2] / 2
