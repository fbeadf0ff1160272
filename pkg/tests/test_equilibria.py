import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from frontspec.core import ModelParams
from frontspec.equilibria import (
    cardano_roots, companion_roots, depressed_form, eval_f_ren, eval_f_ren_prime, expansion_residuals,
    root_residuals, solve_equilibria, validity_report, vieta_residuals,
)

SQRT3 = math.sqrt(3.0)


def oracle_coeffs(eps, alpha):
    """Expanded coefficients of the renormalised cubic, highest degree first."""
    k = eps ** -2
    return [-1.0, 1.0 + alpha, 3.0 * k - alpha, -(1.0 + alpha) * k]


def test_f_ren_matches_expanded_polynomial():
    p = ModelParams(alpha=0.3)
    u = np.linspace(-20, 20, 41)
    assert np.allclose(eval_f_ren(u, 0.1, p), np.polyval(oracle_coeffs(0.1, 0.3), u), rtol=1e-13, atol=1e-10)
    dcoef = np.polyder(oracle_coeffs(0.1, 0.3))
    assert np.allclose(eval_f_ren_prime(u, 0.1, p), np.polyval(dcoef, u), rtol=1e-13, atol=1e-10)


def test_roots_match_numpy_roots():
    p = ModelParams()
    eq = solve_equilibria(0.1, p)
    ref = np.sort(np.roots(oracle_coeffs(0.1, 0.25)).real)
    assert np.allclose(eq.as_tuple(), ref, rtol=1e-12)


def test_example_eps_01():
    eq = solve_equilibria(0.1, ModelParams())
    assert eq.z_zero == pytest.approx(1.25 / 3, abs=0.01)
    assert eq.z_plus == pytest.approx(10 * SQRT3 + 1.25 / 3, abs=0.2)
    assert eq.z_minus == pytest.approx(-10 * SQRT3 + 1.25 / 3, abs=0.2)
    assert eq.z_minus < eq.z_zero < eq.z_plus
    assert eq.discriminant > 0


def test_depressed_form_coefficients():
    a, e = 0.25, 0.2
    d = depressed_form(e, ModelParams(alpha=a))
    assert d.b1 == pytest.approx(-3 / e ** 2 + (3 * a - (1 + a) ** 2) / 3, rel=1e-14)
    assert d.b0 == pytest.approx((2 * (1 + a) ** 3 - 9 * a * (1 + a)) / 27, rel=1e-14)
    assert d.discriminant == pytest.approx(-4 * d.b1 ** 3 - 27 * d.b0 ** 2, rel=1e-14)


def test_companion_and_cardano_agree():
    p = ModelParams(alpha=0.1)
    for e in (0.3, 0.1, 0.01):
        c = np.sort_complex(companion_roots(e, p))
        k = np.sort_complex(cardano_roots(e, p))
        assert np.allclose(c, k, rtol=1e-10, atol=1e-10)


def test_complex_eps_branches_near_leading_terms():
    p = ModelParams()
    e = 0.1 * cmath.exp(1j * math.pi / 4)
    eq = solve_equilibria(e, p)
    m = 1.25 / 3
    assert abs(eq.z_zero - m) < 0.01
    assert abs(eq.z_plus - SQRT3 / e - m) < 0.2
    assert abs(eq.z_minus + SQRT3 / e - m) < 0.2
    assert max(root_residuals(eq, p)) < 1e-9


@settings(max_examples=60, deadline=None)
@given(st.floats(0.01, 0.5), st.floats(0.01, 0.49))
def test_vieta_and_residuals(eps, alpha):
    p = ModelParams(alpha=alpha)
    eq = solve_equilibria(eps, p)
    assert max(vieta_residuals(eq, p)) <= 1e-9
    assert max(root_residuals(eq, p)) <= 1e-9
    assert eq.z_minus < eq.z_zero < eq.z_plus


@settings(max_examples=40, deadline=None)
@given(st.floats(0.01, 0.45), st.floats(-2.5, 2.5), st.floats(0.05, 0.45))
def test_complex_eps_vieta(r, theta, alpha):
    # stays clear of the rejected real-negative axis
    e = r * cmath.exp(1j * theta) if theta else r
    p = ModelParams(alpha=alpha)
    eq = solve_equilibria(e, p)
    assert max(vieta_residuals(eq, p)) <= 1e-9


def test_middle_root_has_no_linear_term():
    p = ModelParams()
    r = [expansion_residuals(e, p)[0] for e in (0.2, 0.1, 0.05)]
    assert math.log(r[0] / r[1], 2) == pytest.approx(2.0, abs=0.05)
    assert math.log(r[1] / r[2], 2) == pytest.approx(2.0, abs=0.05)


def test_validity_report_ok():
    rep = validity_report(0.2, ModelParams())
    assert rep["ok"] and rep["ordered"] and rep["discriminant_positive"]
