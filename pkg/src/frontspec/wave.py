"""Huxley base front, the renormalised front and its rescaled extension.

Phi_ren(x) = A_ren * Phi_hux(A_ren x) + z_minus travels with speed
s_ren = A_ren sqrt(2) (alpha_hux - 1/2); for complex eps only the rescaled
profile Phi_hol(x) = eps Phi_ren(eps x) is exposed.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import ModelParams, as_scale
from .equilibria import Equilibria, eval_f_ren, solve_equilibria
from .errors import DomainError, PoleError, SectorError

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)
SQRT6 = math.sqrt(6.0)
SQRT12 = math.sqrt(12.0)
POLE_GUARD = 1e-6
_POLE_PERIOD = math.sqrt(8.0) * math.pi


def _nearest_pole_distance(z):
    # poles at i sqrt2 pi (2k + 1)
    z = np.asarray(z, dtype=complex)
    k = np.round((z.imag / (SQRT2 * math.pi) - 1.0) / 2.0)
    pole = SQRT2 * math.pi * (2.0 * k + 1.0)
    return np.hypot(z.real, z.imag - pole)


def phi_hux(z):
    """Logistic Huxley profile (1 + exp(-z/sqrt2))^-1, overflow safe.

    Works for real and complex input; raises PoleError within POLE_GUARD of a
    pole when the input is complex.
    """
    z = np.asarray(z)
    if np.iscomplexobj(z):
        if np.any(_nearest_pole_distance(z) < POLE_GUARD):
            raise PoleError("argument within pole_guard of a pole of Phi_hux")
    w = z / SQRT2
    pos = np.real(w) >= 0
    # choose the exponential with non-positive real part on each branch
    t = np.exp(np.where(pos, -w, w))
    out = np.where(pos, 1.0 / (1.0 + t), t / (1.0 + t))
    return out[()] if out.ndim == 0 else out


def phi_hux_d1(z):
    p = phi_hux(z)
    return p * phi_hux(-np.asarray(z)) / SQRT2


def phi_hux_d2(z):
    z = np.asarray(z)
    p = phi_hux(z)
    q = phi_hux(-z)
    return p * q * (q - p) / 2.0


class Region(enum.Enum):
    SIGMA_PLUS = "SigmaPlus"
    SIGMA_MINUS = "SigmaMinus"
    OUTSIDE = "Outside"


@dataclass(frozen=True)
class SectorPoint:
    z: complex
    region: Region

    @classmethod
    def classify(cls, z) -> "SectorPoint":
        z = complex(z)
        if abs(z.imag) <= abs(z.real):
            return cls(z, Region.SIGMA_PLUS if z.real >= 0 else Region.SIGMA_MINUS)
        return cls(z, Region.OUTSIDE)


def phi_hux_decay_check(point) -> tuple[bool, float]:
    """Ratio |Phi_hux(z) - limit| / exp(-|Re z|/sqrt2); passes when <= 2."""
    if not isinstance(point, SectorPoint):
        point = SectorPoint.classify(point)
    z = point.z
    if point.region is Region.SIGMA_PLUS:
        # 1 - Phi(z) = Phi(-z), computed without cancellation
        gap = abs(complex(phi_hux(-z)))
        ratio = gap / math.exp(-z.real / SQRT2)
    elif point.region is Region.SIGMA_MINUS:
        ratio = abs(complex(phi_hux(z))) / math.exp(z.real / SQRT2)
    else:
        raise DomainError(f"{z} lies outside the sectors")
    return ratio <= 2.0, ratio


def sector_sample(n_per_sector: int = 200, re_max: float = 50.0):
    """Deterministic sample of points in Sigma^+ and Sigma^-.

    Real parts are spread over (0, re_max] and imaginary parts over the full
    cone |Im z| <= |Re z|.
    """
    side = int(math.isqrt(n_per_sector))
    while n_per_sector % side:
        side -= 1
    n_re, n_im = n_per_sector // side, side
    re = np.linspace(re_max / n_re, re_max, n_re)
    frac = np.linspace(-1.0, 1.0, n_im)
    pts = []
    for sign in (1.0, -1.0):
        for r in re:
            for f in frac:
                pts.append(SectorPoint.classify(complex(sign * r, f * r)))
    return pts


@dataclass(frozen=True)
class WaveData:
    A_ren: complex
    alpha_hux: complex
    s_ren: complex
    equilibria: Equilibria
    epsilon: complex
    params: ModelParams

    @property
    def is_real(self) -> bool:
        return self.epsilon.imag == 0 and self.epsilon.real > 0

    def _require_real(self):
        if not self.is_real:
            raise DomainError("Phi_ren is only exposed for real positive eps; use phi_hol")

    def phi(self, x):
        return phi_ren(x, self)

    def d1(self, x):
        return phi_ren_d1(x, self)

    def d2(self, x):
        return phi_ren_d2(x, self)


def wave_data(eps, params: ModelParams) -> WaveData:
    scale = as_scale(eps)
    eq = solve_equilibria(scale, params)
    zm, _, zp = eq.as_tuple()
    A = zp - zm
    s = _speed(scale.value(), eq.z_zero, params.alpha)
    # alpha_hux - 1/2 = s / (sqrt2 A), without subtracting two O(1) numbers
    ah = 0.5 + s / (SQRT2 * A)
    return WaveData(A, ah, s, eq, scale.epsilon, params)


def _speed(e, z0, a):
    return e * e * z0 * (z0 - a) * (z0 - 1.0) / SQRT2


def speed_closed_form(eps, params: ModelParams):
    """s_ren = A_ren sqrt2 (alpha_hux - 1/2) in cancellation-free form.

    With z_minus + z_plus = 1 + alpha - z0 the speed collapses to
    (3 z0 - (1 + alpha)) / sqrt2, and since z0 solves
    3 z - (1 + alpha) = eps^2 z (z - alpha)(z - 1) this equals
    eps^2 z0 (z0 - alpha)(z0 - 1) / sqrt2. The direct route loses about
    log10(A_ren / |s_ren|) digits; this one loses none.
    """
    e = as_scale(eps).value()
    return _speed(e, solve_equilibria(eps, params).z_zero, params.alpha)


def phi_ren(x, w: WaveData):
    w._require_real()
    A, zm = w.A_ren.real, w.equilibria.z_minus.real
    return A * phi_hux(A * np.asarray(x, dtype=float)) + zm


def phi_ren_d1(x, w: WaveData):
    w._require_real()
    A = w.A_ren.real
    return A * A * phi_hux_d1(A * np.asarray(x, dtype=float))


def phi_ren_d2(x, w: WaveData):
    w._require_real()
    A = w.A_ren.real
    return A ** 3 * phi_hux_d2(A * np.asarray(x, dtype=float))


def wave_residual(x, w: WaveData):
    """Phi'' + s Phi' + f_ren(Phi) with analytic derivatives."""
    e = w.epsilon.real
    return phi_ren_d2(x, w) + w.s_ren.real * phi_ren_d1(x, w) + eval_f_ren(phi_ren(x, w), e, w.params)


def phi_hol_limit(x):
    """eps -> 0 limit sqrt12 Phi_hux(sqrt12 x) - sqrt3 = sqrt3 tanh(sqrt6 x / 2)."""
    return SQRT3 * np.tanh(SQRT6 * np.asarray(x, dtype=float) / 2.0)


def in_sigma_plus(z) -> bool:
    z = complex(z)
    return z.real >= 0 and abs(z.imag) <= abs(z.real)


def phi_hol(x, eps, params: ModelParams):
    """eps Phi_ren(eps x) extended to complex eps; eps = 0 gives the limit."""
    if eps == 0 or (not hasattr(eps, "epsilon") and complex(eps) == 0):
        return phi_hol_limit(x)
    w = wave_data(eps, params)
    e = w.epsilon
    eA = e * w.A_ren
    if not in_sigma_plus(eA):
        raise SectorError(f"eps * A_ren = {eA} is outside Sigma^+")
    x = np.asarray(x, dtype=float)
    if w.is_real:
        return e.real * phi_ren(e.real * x, w)
    return eA * phi_hux(eA * x) + e * w.equilibria.z_minus
