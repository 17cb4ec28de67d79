import math

import numpy as np
import pytest

from feqtool.characters import principal_character, quadratic_character
from feqtool.complexfn import riemann_zeta
from feqtool.exceptions import SizeError, UnsupportedSeriesError
from feqtool.mellin import completed_lambda
from feqtool.modular import (CoeffSeries, delta_coefficients, divisor_sigma,
                             eisenstein4_coefficients, eta_power, eta_product_11,
                             fricke_eigenvalue, modular_l, theta_coefficients,
                             theta_eval, theta_modularity_residual,
                             twist_coefficients)

from conftest import rel

TAU = [0, 1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920]
L_DELTA_6 = 0.792122838646030569355944890486   # mpmath integral oracle


@pytest.fixture(scope="module")
def delta():
    return delta_coefficients(1500)


def test_tau_values(delta):
    assert list(delta.exact[:11]) == TAU


def test_tau_hecke(delta):
    t = delta.exact
    for m, n in [(2, 3), (3, 7), (4, 5), (11, 13), (8, 9)]:
        assert t[m * n] == t[m] * t[n]
    for p in (2, 3, 5, 7, 11):
        assert t[p * p] == t[p] ** 2 - p ** 11
        assert t[p ** 3] == t[p] * t[p * p] - p ** 11 * t[p]


def test_eta_power_euler():
    # (1 - q^n) product: pentagonal number theorem
    e = eta_power(1, 30)
    assert e[:8] == [1, -1, -1, 0, 0, 1, 0, 1]
    assert e[12] == -1 and e[15] == -1 and e[22] == 1 and e[26] == 1


def test_sizes():
    with pytest.raises(SizeError):
        delta_coefficients(0)
    with pytest.raises(SizeError):
        delta_coefficients(10**5 + 1)


def test_eisenstein():
    e = eisenstein4_coefficients(20)
    assert e.exact[:5] == (1, 240, 2160, 6720, 17520)
    assert divisor_sigma(1, 12)[12] == 28
    assert rel(modular_l(e, 5), 240 * riemann_zeta(5) * math.pi ** 2 / 6) < 1e-12


def test_theta():
    th = theta_coefficients(30)
    assert [int(a.real) for a in th.coefficients[:10]] == [1, 2, 0, 0, 2, 0, 0, 0, 0, 2]
    assert th.eval_scale == 2.0
    assert rel(modular_l(th, 2), math.pi ** 4 / 45) < 1e-12
    ts = np.linspace(0.3, 3, 50)
    assert max(theta_modularity_residual(t) for t in ts) <= 1e-12
    assert rel(theta_eval(1.0), 1.08643481121330801457531612151) < 1e-14
    with pytest.raises(ValueError):
        theta_eval(0)


def test_eta11():
    f = eta_product_11(200)
    assert list(f.exact[:6]) == [0, 1, -2, -1, 2, 1]
    # a_p = p + 1 - #E(F_p) for y^2 + y = x^3 - x^2 - 10x - 20
    assert f.exact[7] == -2 and f.exact[13] == 4
    assert f.level == 11 and f.eval_scale == pytest.approx(math.sqrt(11))
    assert abs(fricke_eigenvalue(f) + 1) < 1e-10


def test_twist(delta):
    psi = quadratic_character(5)
    tw = twist_coefficients(delta, psi)
    assert tw.level == 25
    assert tw.exact[2] == 24 and tw.exact[5] == 0 and tw.exact[4] == -1472
    assert twist_coefficients(delta, principal_character(1)).level == 1


def test_modular_l_delta(delta):
    assert rel(modular_l(delta, 6), L_DELTA_6) < 1e-10


def test_delta_completed_symmetry(delta):
    for s in (4, 6 + 2j):
        assert rel(completed_lambda(delta, s), completed_lambda(delta, 12 - s)) < 1e-10


def test_non_cusp_needs_closed_form():
    c = CoeffSeries([1, 3, 5], 1.0, 2, 1, "plain")
    with pytest.raises(UnsupportedSeriesError):
        modular_l(c, 3)


def test_csv_export(tmp_path):
    f = eta_product_11(12)
    path = tmp_path / "eta11.csv"
    text = f.to_csv(path)
    assert path.read_text() == text
    rows = text.splitlines()
    assert rows[0] == "index,re,im"
    assert rows[2] == "1,1.0,0.0" and rows[3] == "2,-2.0,0.0"
    assert len(rows) == 14


def test_validation():
    with pytest.raises(ValueError):
        CoeffSeries([0, 1], 0.0, 1, 1, "bad")
    with pytest.raises(ValueError):
        CoeffSeries([0, 1], 1.0, 1, 0, "bad")
