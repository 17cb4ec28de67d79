import math

import mpmath as mp
import pytest

from feqtool.characters import character_group, find_character, is_primitive
from feqtool.complexfn import riemann_zeta
from feqtool.exceptions import DomainError, PoleError
from feqtool.lseries import (DH_ALPHA, DirichletPolySpec, davenport_heilbronn,
                             dh_coefficients, dirichlet_l, dirichlet_poly,
                             l_feq_residual, periodic_l, sigma_5)

from conftest import rel

CATALAN = 0.915965594177219015054603514932


def test_catalan():
    chi = find_character(4, {3: -1})
    assert rel(dirichlet_l(2, chi), CATALAN) < 1e-13


def test_l_matches_mpmath_dirichlet():
    chi = find_character(5, {2: 1j})
    vals = [complex(chi(n)) for n in range(5)]
    for s in (0.3 + 2j, 2.5, -1.5 + 0.5j):
        assert rel(dirichlet_l(s, chi), complex(mp.dirichlet(s, vals))) < 1e-11


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 11, 12])
def test_functional_equation_residual(q):
    for chi in character_group(q):
        if is_primitive(chi):
            for s in (0.3 + 1j, 0.7, 1.5 - 2j):
                assert l_feq_residual(s, chi) < 1e-11


def test_residual_rejects_imprimitive_and_pole():
    with pytest.raises(DomainError):
        l_feq_residual(0.5, character_group(6)[0])
    with pytest.raises(PoleError):
        dirichlet_l(1, character_group(5)[0])


def test_dh_alpha_and_table():
    closed = (math.sqrt(10 - 2 * math.sqrt(5)) - 2) / (math.sqrt(5) - 1)
    assert DH_ALPHA == closed
    assert abs(DH_ALPHA - 0.284079043840412296) < 1e-16
    table = dh_coefficients()
    expect = [0, 1, DH_ALPHA, -DH_ALPHA, -1]
    assert all(abs(a - b) < 1e-15 for a, b in zip(table, expect))


def test_dh_matches_direct_sum_and_reflects():
    direct = sum(dh_coefficients()[n % 5] * n ** -3.0 for n in range(1, 200000))
    assert rel(davenport_heilbronn(3), direct) < 1e-10
    from feqtool.complexfn import cgamma, cos_pi
    for s in (0.3, 0.6 + 2j):
        rhs = (5 ** (0.5 - s) * 2 ** s * math.pi ** (s - 1) * cgamma(1 - s)
               * cos_pi(s / 2) * davenport_heilbronn(1 - s))
        assert rel(davenport_heilbronn(s), rhs) < 1e-12


def test_periodic_l_and_sigma5():
    table = [1 + math.sqrt(5), 1, 1, 1, 1]
    for s in (0.4, 2.0 + 1j):
        assert rel(periodic_l(s, table), sigma_5(s)) < 1e-12


def test_dirichlet_poly_identity():
    for factors in (((2, 1), (3, 1)), ((4, -1),), ((2, -1), (5, 1), (7, -1))):
        P = DirichletPolySpec(factors)
        for s in (0.3 + 0.2j, 0.8, 2 - 1j):
            rhs = P.epsilon * P.A ** (0.5 - s) * dirichlet_poly(P, 1 - s)
            assert rel(dirichlet_poly(P, s), rhs) < 1e-13


def test_times_zeta_table():
    P = DirichletPolySpec(((2, 1), (3, 1)))
    table = P.times_zeta_table()
    assert len(table) == 6
    for s in (0.4, 1.7 + 2j):
        assert rel(periodic_l(s, table), dirichlet_poly(P, s) * riemann_zeta(s)) < 1e-12


def test_poly_spec_validation():
    with pytest.raises(ValueError):
        DirichletPolySpec(())
    with pytest.raises(ValueError):
        DirichletPolySpec(((1, 1),))
