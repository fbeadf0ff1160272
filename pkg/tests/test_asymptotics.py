import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from frontspec import asymptotics as asy
from frontspec.core import ModelParams
from frontspec.equilibria import expansion_residuals
from frontspec.errors import DomainError, SectorError


def test_power_fit_exact():
    fit = asy.power_fit([(e, e ** 2) for e in asy.DEFAULT_EPS])
    assert fit.exponent == pytest.approx(2.0, abs=1e-12)
    assert fit.r_squared == pytest.approx(1.0)
    assert not fit.flagged


@given(st.floats(-4, 4), st.floats(0.01, 100))
def test_power_fit_recovers_law(p, c):
    fit = asy.power_fit([(e, c * e ** p) for e in (0.3, 0.1, 0.05, 0.02)])
    assert fit.exponent == pytest.approx(p, abs=1e-9)
    assert math.exp(fit.log_constant) == pytest.approx(c, rel=1e-8)


def test_power_fit_errors():
    with pytest.raises(DomainError):
        asy.power_fit([(0.1, 1.0), (0.2, 2.0)])
    with pytest.raises(DomainError):
        asy.power_fit([(0.1, 1.0), (0.2, 0.0), (0.3, 1.0)])


def test_noisy_fit_flagged():
    rng = np.random.default_rng(0)
    fit = asy.power_fit([(e, e * math.exp(rng.normal(0, 1.0))) for e in asy.DEFAULT_EPS])
    assert fit.flagged == (fit.r_squared < 0.98)
    assert 0.0 <= fit.r_squared <= 1.0


def test_convergence_order():
    assert asy.convergence_order([(h, h * h) for h in (0.1, 0.05, 0.025)]) == pytest.approx([2.0, 2.0])
    with pytest.raises(DomainError):
        asy.convergence_order([(0.1, 0.01)])


def test_middle_root_order_two():
    p = ModelParams()
    orders = asy.convergence_order([(e, expansion_residuals(e, p)[0]) for e in (0.2, 0.1, 0.05, 0.025)])
    assert all(abs(o - 2) < 0.05 for o in orders)


def test_sweep_row_rejects_nan():
    with pytest.raises(DomainError):
        asy.SweepRow(0.1, {"gap": float("nan")})


def test_sweep_order_and_workers():
    fn = lambda e: {"sq": e * e}  # noqa: E731
    a = asy.sweep(fn, (0.3, 0.05, 0.1), workers=1)
    b = asy.sweep(fn, (0.1, 0.3, 0.05), workers=3)
    assert [r.epsilon for r in a] == [0.05, 0.1, 0.3]
    assert a == b


def test_holomorphy_real_axis():
    rep = asy.holomorphy_check(angles=(0.0,))
    assert rep.phi_fits[0.0].exponent >= 1.45
    assert rep.q_fits[0.0].exponent >= 1.45
    assert rep.passes((0.0,))


def test_holomorphy_monotone_along_ray():
    a = math.pi / 6
    rep = asy.holomorphy_check(radii=(0.3, 0.2, 0.1, 0.05, 0.025), angles=(a,))
    errs = [c.phi_error for c in rep.cells]
    assert all(x > y for x, y in zip(errs, errs[1:]))


def test_holomorphy_conjugate_symmetry():
    rep = asy.holomorphy_check(angles=(0.5, -0.5))
    up = [c.phi_error for c in rep.cells if c.angle == 0.5]
    dn = [c.phi_error for c in rep.cells if c.angle == -0.5]
    assert np.allclose(up, dn, rtol=1e-9)


def test_holomorphy_skipped_cell(monkeypatch):
    def boom(*a, **k):
        raise SectorError("outside")

    monkeypatch.setattr(asy, "phi_hol_discrepancy", boom)
    rep = asy.holomorphy_check(angles=(0.0,))
    assert all(c.skipped and "SectorError" in c.skipped for c in rep.cells)
    assert rep.phi_fits == {} and not rep.passes((0.0,))


def test_holomorphy_radius_validation():
    with pytest.raises(DomainError):
        asy.holomorphy_check(radii=(0.6, 0.1, 0.05))
