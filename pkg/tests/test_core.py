import math

import pytest
from hypothesis import given, strategies as st

from frontspec.core import ModelParams, Scale, as_scale, epsilon_from_renorm, renorm_from_mollifier
from frontspec.errors import DomainError


def test_params_defaults_valid():
    p = ModelParams()
    assert p.alpha == 0.25 and p.beta_weight == 4.0


@pytest.mark.parametrize("alpha", [0.0, 0.5, -0.1, 0.7])
def test_params_reject_alpha(alpha):
    with pytest.raises(DomainError):
        ModelParams(alpha=alpha)


@pytest.mark.parametrize("beta", [2.0, 1.0, 0.0])
def test_params_reject_beta(beta):
    with pytest.raises(DomainError):
        ModelParams(beta_weight=beta)


def test_scale_rejects_zero_nonfinite_negative():
    for bad in (0, float("nan"), float("inf"), -0.1):
        with pytest.raises(DomainError):
            Scale(bad)


def test_scale_radius_is_closed():
    assert Scale(0.5).real == 0.5
    with pytest.raises(DomainError):
        Scale(0.5000001)


def test_scale_complex_value():
    s = as_scale(0.1j + 0.1)
    assert not s.is_real_positive
    assert s.value() == 0.1 + 0.1j
    with pytest.raises(DomainError):
        s.real


def test_epsilon_from_renorm_example():
    assert epsilon_from_renorm(100.0).real == pytest.approx(0.1, rel=1e-15)
    with pytest.raises(DomainError):
        epsilon_from_renorm(0.0)


@given(st.floats(1e-3, 1e6))
def test_epsilon_renorm_roundtrip(C):
    e = epsilon_from_renorm(C).real
    assert e ** -2 == pytest.approx(C, rel=1e-12)


@given(st.floats(1e-12, 0.999), st.floats(1e-3, 1e3), st.floats(0.1, 10.0))
def test_renorm_quadratic_in_sigma(delta, sigma, k):
    assert renorm_from_mollifier(delta, k * sigma) == pytest.approx(k * k * renorm_from_mollifier(delta, sigma), rel=1e-12)


def test_renorm_example():
    assert renorm_from_mollifier(math.exp(-1.0), 2.0) == pytest.approx(4.0)
    with pytest.raises(DomainError):
        renorm_from_mollifier(1.0, 1.0)
    with pytest.raises(DomainError):
        renorm_from_mollifier(0.5, 0.0)
