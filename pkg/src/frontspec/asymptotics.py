"""eps-sweeps, power-law fits, convergence orders and the complex-eps bounds."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import EPS_MAX_DEFAULT, ModelParams, as_scale
from .errors import DomainError, FrontspecError
from .operators import q_hol, q_hol_limit
from .wave import phi_hol, phi_hol_limit

DEFAULT_EPS = (0.3, 0.25, 0.2, 0.15, 0.1, 0.07, 0.05)
DEFAULT_ANGLES = (0.0, math.pi / 6, -math.pi / 6, math.pi / 3, -math.pi / 3)
R2_FLAG = 0.98
HOLO_X = np.linspace(-10.0, 10.0, 2001)


@dataclass(frozen=True)
class SweepRow:
    epsilon: complex
    quantities: dict = field(default_factory=dict)

    def __post_init__(self):
        for k, v in self.quantities.items():
            if isinstance(v, (int, float, complex, np.number)) and np.isnan(v):
                raise DomainError(f"NaN in sweep row eps = {self.epsilon}: {k}")


@dataclass(frozen=True)
class PowerFit:
    exponent: float
    log_constant: float
    r_squared: float

    @property
    def flagged(self) -> bool:
        return self.r_squared < R2_FLAG


def power_fit(pairs) -> PowerFit:
    """Least squares of log(value) against log(eps)."""
    pairs = list(pairs)
    if len(pairs) < 3:
        raise DomainError(f"power_fit needs >= 3 pairs, got {len(pairs)}")
    x = np.array([p[0] for p in pairs], dtype=float)
    y = np.array([p[1] for p in pairs], dtype=float)
    if np.any(x <= 0) or np.any(y <= 0) or not np.all(np.isfinite(y)):
        raise DomainError("power_fit needs positive abscissae and values")
    lx, ly = np.log(x), np.log(y)
    slope, icpt = np.polyfit(lx, ly, 1)
    ss_res = float(np.sum((ly - (slope * lx + icpt)) ** 2))
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return PowerFit(float(slope), float(icpt), min(max(r2, 0.0), 1.0))


def convergence_order(values) -> list:
    """Orders log2(e_{2h} / e_h) between successive halvings.

    ``values`` is a list of (h, error) pairs; they are sorted by decreasing h.
    """
    values = sorted(values, key=lambda p: -p[0])
    if len(values) < 2:
        raise DomainError("convergence_order needs >= 2 pairs")
    out = []
    for (h0, e0), (h1, e1) in zip(values[:-1], values[1:]):
        out.append(math.log(e0 / e1) / math.log(h0 / h1))
    return out


def sweep(fn, eps_list=DEFAULT_EPS, workers: int = 1) -> list:
    """Evaluate fn(eps) -> dict for each eps, merged in ascending eps order."""
    eps_sorted = sorted(eps_list, key=lambda e: (abs(e), np.angle(e)))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(fn, eps_sorted))
    else:
        results = [fn(e) for e in eps_sorted]
    return [SweepRow(e, q) for e, q in zip(eps_sorted, results)]


# ---------------------------------------------------------------------------
# complex-eps discrepancies


def phi_hol_discrepancy(eps, params: ModelParams, x=HOLO_X) -> float:
    """sup_x |Phi_hol - Phi_hol^0 - eps (1 + alpha)/3|."""
    e = as_scale(eps).value()
    d = phi_hol(x, eps, params) - phi_hol_limit(x) - e * (1.0 + params.alpha) / 3.0
    return float(np.max(np.abs(d)))


def q_hol_discrepancy(eps, params: ModelParams, x=HOLO_X) -> float:
    """sup_x |Q_hol - Q_hol^0| (the first-order terms cancel)."""
    return float(np.max(np.abs(q_hol(x, eps, params) - q_hol_limit(x))))


@dataclass(frozen=True)
class HoloCell:
    radius: float
    angle: float
    phi_error: float | None
    q_error: float | None
    skipped: str | None = None


@dataclass(frozen=True)
class HoloReport:
    cells: list
    phi_fits: dict
    q_fits: dict

    def passes(self, angles, min_exponent=1.45, min_r2=R2_FLAG) -> bool:
        for a in angles:
            for fits in (self.phi_fits, self.q_fits):
                f = fits.get(a)
                if f is None or f.exponent < min_exponent or f.r_squared < min_r2:
                    return False
        return True


def holomorphy_check(radii=(0.2, 0.1, 0.05, 0.025), angles=DEFAULT_ANGLES, params=None, workers: int = 1) -> HoloReport:
    params = params or ModelParams()
    jobs = [(r, a) for a in angles for r in radii]
    for r, _ in jobs:
        if not 0 < r < EPS_MAX_DEFAULT:
            raise DomainError(f"radius {r} outside (0, eps_max)")

    def cell(job):
        r, a = job
        eps = r * complex(math.cos(a), math.sin(a)) if a else r
        try:
            return HoloCell(r, a, phi_hol_discrepancy(eps, params), q_hol_discrepancy(eps, params))
        except FrontspecError as exc:  # sector / pole failures become skipped cells
            return HoloCell(r, a, None, None, f"{type(exc).__name__}: {exc}")

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            cells = list(ex.map(cell, jobs))
    else:
        cells = [cell(j) for j in jobs]

    phi_fits, q_fits = {}, {}
    for a in angles:
        ok = [c for c in cells if c.angle == a and c.skipped is None]
        if len(ok) >= 3:
            phi_fits[a] = power_fit([(c.radius, c.phi_error) for c in ok])
            q_fits[a] = power_fit([(c.radius, c.q_error) for c in ok])
    return HoloReport(cells, phi_fits, q_fits)
