import numpy as np
import pytest

from frontspec import evolution as evo
from frontspec.core import ModelParams
from frontspec.equilibria import eval_f_ren_prime, solve_equilibria
from frontspec.errors import DomainError, InstabilityError, TrackingError
from frontspec.grid import Grid, GridFunction
from frontspec.wave import phi_ren, wave_data

P = ModelParams()
EPS = 0.5


def small_cfg(T=2.0, N=401, stride=1):
    return evo.EvolutionConfig(Grid(16.0, N), T, evo.dt_max(EPS), None, stride)


def test_config_validation():
    with pytest.raises(DomainError):
        evo.EvolutionConfig(Grid(1.0, 11), 0.0, 0.01)
    with pytest.raises(DomainError):
        evo.EvolutionConfig(Grid(1.0, 11), 1.0, 0.01, bc="dirichlet")
    cfg = evo.EvolutionConfig(Grid(1.0, 11), 1.0, 0.2)
    with pytest.raises(DomainError):
        cfg.check_stiffness(0.5)


def test_default_config():
    cfg = evo.EvolutionConfig.default(EPS)
    assert cfg.grid.L >= 30 * EPS
    assert cfg.dt == pytest.approx(0.1 * EPS ** 2)
    assert cfg.T_final == pytest.approx(5 / EPS ** 2)


@pytest.mark.parametrize("which,T", [("z_minus", 2.0), ("z_plus", 2.0), ("z_zero", 0.5)])
def test_equilibria_are_fixed_points(which, T):
    # z0 is unstable (growth rate f'(z0) ~ 12 here): rounding is amplified, so keep T short
    cfg = small_cfg(T)
    z = getattr(solve_equilibria(EPS, P), which)
    sn = evo.evolve(GridFunction(cfg.grid, np.full(cfg.grid.N, z)), cfg, EPS, P)
    drift = np.max(np.abs(sn.values[-1] - z)) / cfg.T_final
    assert drift <= 1e-10


def test_middle_root_unstable():
    assert eval_f_ren_prime(solve_equilibria(EPS, P).z_zero, EPS, P) > 0
    cfg = small_cfg(T=5.0)
    z0 = solve_equilibria(EPS, P).z_zero
    sn = evo.evolve(GridFunction(cfg.grid, np.full(cfg.grid.N, z0 + 1e-6)), cfg, EPS, P)
    assert sn.values[-1].min() - z0 > 1e-3


def test_initial_data_checks():
    cfg = small_cfg()
    eq = solve_equilibria(EPS, P)
    with pytest.raises(DomainError):
        evo.evolve(GridFunction(cfg.grid, np.full(cfg.grid.N, eq.z_plus + 2)), cfg, EPS, P)
    bad = np.zeros(cfg.grid.N)
    bad[3] = np.nan
    with pytest.raises(DomainError):
        evo.evolve(GridFunction(cfg.grid, bad), cfg, EPS, P)


def test_blowup_reported(monkeypatch):
    monkeypatch.setattr(evo, "dt_max", lambda eps: 100.0)
    eps = 0.1
    cfg = evo.EvolutionConfig(Grid(2.0, 41), 50.0, 0.5)
    eq = solve_equilibria(eps, P)
    with pytest.raises(InstabilityError) as info:
        evo.evolve(GridFunction(cfg.grid, np.full(41, eq.z_plus + 0.5)), cfg, eps, P)
    assert info.value.step >= 1


def test_track_synthetic_translation():
    w = wave_data(EPS, P)
    g = Grid(16.0, 1601)
    v, dt = -0.3, 0.1
    t = dt * np.arange(40)
    vals = np.array([phi_ren(g.nodes - v * tk, w) for tk in t])
    tr = evo.track_front(evo.Snapshots(g, t, vals), evo.front_level(EPS, P))
    assert tr.fitted_speed == pytest.approx(v, rel=1e-3)
    assert tr.fit_window == (t[-1] / 2, t[-1])


def test_track_errors():
    g = Grid(1.0, 11)
    flat = evo.Snapshots(g, np.arange(20.0), np.zeros((20, 11)))
    with pytest.raises(TrackingError):
        evo.track_front(flat, 0.5)
    wiggle = np.tile(np.sin(6 * g.nodes), (20, 1))
    with pytest.raises(TrackingError):
        evo.track_front(evo.Snapshots(g, np.arange(20.0), wiggle), 0.0)
    mono = np.tile(g.nodes, (5, 1))
    with pytest.raises(TrackingError):
        evo.track_front(evo.Snapshots(g, np.arange(5.0), mono), 0.05)


def test_front_speed_and_shape():
    w = wave_data(EPS, P)
    cfg = evo.EvolutionConfig.default(EPS)
    sn = evo.evolve(GridFunction(cfg.grid, phi_ren(cfg.grid.nodes, w)), cfg, EPS, P)
    tr = evo.track_front(sn, evo.front_level(EPS, P))
    assert tr.fitted_speed < 0
    assert tr.fitted_speed == pytest.approx(w.s_ren.real, rel=0.05)
    assert evo.shape_error(sn, tr, w.phi) <= 0.02 * w.A_ren.real
