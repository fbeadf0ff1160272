"""Time integration of u_t = u_xx + f_ren(u) and front tracking.

Second-order IMEX (SBDF2): backward-difference implicit diffusion with a
Neumann tridiagonal solve per step, explicit reaction extrapolated from the
two previous levels. The first step is IMEX Euler.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from .core import ModelParams, as_scale
from .equilibria import eval_f_ren, solve_equilibria
from .errors import DomainError, InstabilityError, TrackingError
from .grid import Grid, GridFunction

C_DT = 0.1


def dt_max(eps) -> float:
    e = as_scale(eps).real
    return C_DT * e * e


@dataclass(frozen=True)
class EvolutionConfig:
    grid: Grid
    T_final: float
    dt: float
    level: float | None = None  # None -> (z_plus + z_minus) / 2
    snapshot_stride: int = 1
    bc: str = "neumann"

    def __post_init__(self):
        if not self.T_final > 0:
            raise DomainError("T_final must be positive")
        if not self.dt > 0:
            raise DomainError("dt must be positive")
        if self.snapshot_stride < 1:
            raise DomainError("snapshot_stride must be >= 1")
        if self.bc != "neumann":
            raise DomainError("only Neumann boundaries are supported")

    def check_stiffness(self, eps):
        cap = dt_max(eps)
        if self.dt > cap * (1.0 + 1e-12):
            raise DomainError(f"dt = {self.dt} exceeds the stiffness cap {cap} = {C_DT} eps^2")

    @classmethod
    def default(cls, eps, travel: float = 1.0, nodes_per_unit: float = 37.5):
        """Domain [-L_e, L_e] with L_e >= 30 eps + travel, T = 5/eps^2, dt = 0.1 eps^2."""
        e = as_scale(eps).real
        L = max(30.0 * e + travel, 1.0)
        N = int(2 * round(L * nodes_per_unit)) + 1
        return cls(Grid(L, N), 5.0 / (e * e), dt_max(e), None, 4)


@dataclass(frozen=True)
class Snapshots:
    grid: Grid
    times: np.ndarray
    values: np.ndarray  # shape (n_snap, N)

    def at(self, j: int) -> GridFunction:
        return GridFunction(self.grid, self.values[j])


def _neumann_band(N, r):
    """Banded form of I - r D with D the Neumann second difference (ghost reflection)."""
    ab = np.zeros((3, N))
    ab[1, :] = 1.0 + 2.0 * r
    ab[0, 1:] = -r
    ab[2, :-1] = -r
    ab[0, 1] = -2.0 * r
    ab[2, -2] = -2.0 * r
    return ab


def evolve(u0: GridFunction, cfg: EvolutionConfig, eps, params: ModelParams) -> Snapshots:
    e = as_scale(eps).real
    cfg.check_stiffness(e)
    eq = solve_equilibria(e, params)
    u = np.array(u0.values, dtype=float)
    if u.shape != (cfg.grid.N,):
        raise DomainError("initial data does not match the configured grid")
    if not np.all(np.isfinite(u)):
        raise DomainError("initial data must be finite")
    if u.min() < eq.z_minus - 1.0 or u.max() > eq.z_plus + 1.0:
        raise DomainError("initial data outside [z_minus - 1, z_plus + 1]")

    grid, dt = cfg.grid, cfg.dt
    r = dt / grid.h ** 2
    band_euler = _neumann_band(grid.N, r)
    band_bdf2 = _neumann_band(grid.N, 2.0 * r / 3.0)
    blowup = 10.0 * abs(eq.z_plus)

    n_steps = int(round(cfg.T_final / dt))
    times = [0.0]
    snaps = [u.copy()]
    u_prev = f_prev = None
    for n in range(1, n_steps + 1):
        f = eval_f_ren(u, e, params)
        if u_prev is None:
            u_new = solve_banded((1, 1), band_euler, u + dt * f)
        else:
            rhs = (4.0 * u - u_prev + 2.0 * dt * (2.0 * f - f_prev)) / 3.0
            u_new = solve_banded((1, 1), band_bdf2, rhs)
        if not np.all(np.isfinite(u_new)) or np.abs(u_new).max() > blowup:
            raise InstabilityError(f"solution exceeded {blowup:.3g} at step {n}", n)
        u_prev, f_prev, u = u, f, u_new
        if n % cfg.snapshot_stride == 0 or n == n_steps:
            times.append(n * dt)
            snaps.append(u.copy())
    return Snapshots(grid, np.array(times), np.array(snaps))


@dataclass(frozen=True)
class FrontTrack:
    times: np.ndarray
    positions: np.ndarray
    fitted_speed: float
    fit_window: tuple


def crossing(x, u, level) -> float:
    """Unique crossing of ``level`` by linear interpolation between nodes."""
    d = u - level
    idx = np.nonzero(np.sign(d[:-1]) * np.sign(d[1:]) < 0)[0]
    exact = np.nonzero(d == 0)[0]
    if idx.size + exact.size != 1:
        raise TrackingError(f"expected one crossing of {level}, found {idx.size + exact.size}")
    if exact.size:
        return float(x[exact[0]])
    i = idx[0]
    return float(x[i] + (level - u[i]) * (x[i + 1] - x[i]) / (u[i + 1] - u[i]))


def track_front(snaps: Snapshots, level: float, fit_window=None) -> FrontTrack:
    """Crossing positions per snapshot and a least-squares speed.

    The default fit window is the second half of the run.
    """
    x = snaps.grid.nodes
    pos = np.array([crossing(x, u, level) for u in snaps.values])
    t = snaps.times
    if fit_window is None:
        fit_window = (0.5 * t[-1], t[-1])
    sel = (t >= fit_window[0]) & (t <= fit_window[1])
    if sel.sum() < 10:
        raise TrackingError(f"only {sel.sum()} samples in the fit window; need >= 10")
    speed = float(np.polyfit(t[sel], pos[sel], 1)[0])
    return FrontTrack(t, pos, speed, tuple(fit_window))


def front_level(eps, params: ModelParams) -> float:
    eq = solve_equilibria(eps, params)
    return 0.5 * (eq.z_minus + eq.z_plus)


def shape_error(snaps: Snapshots, track: FrontTrack, profile, interior: float = 0.5) -> float:
    """sup |u(T, x + c T) - profile(x)| over the inner fraction of the domain."""
    x = snaps.grid.nodes
    T = snaps.times[-1]
    shift = track.fitted_speed * T
    L = snaps.grid.L
    xs = x[np.abs(x) <= interior * L]
    moved = np.interp(xs + shift, x, snaps.values[-1])
    return float(np.max(np.abs(moved - profile(xs))))
