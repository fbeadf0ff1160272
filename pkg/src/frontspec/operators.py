"""Coefficients of the linearised operators and their grid application.

L_ren u = u'' + s u' + f'(Phi) u            (weighted space)
M_ren   = T L_ren T^-1, T = w^(1/2)          (unweighted space)
H_ren u = -u'' + Q_ren u,  Q_ren = -f'(Phi) + s^2/4
H_hol u = -u'' + Q_hol u,  Q_hol(x) = eps^2 Q_ren(eps x)
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .core import ModelParams
from .equilibria import eval_f_ren_prime
from .errors import DomainError
from .grid import GridFunction
from .wave import SQRT6, WaveData, phi_hol, phi_ren, wave_data


def weight_w(x, beta):
    """(1 + x^2)^(-beta/2)."""
    x = np.asarray(x, dtype=float)
    return (1.0 + x * x) ** (-0.5 * beta)


def weight_integral(beta):
    """Closed form of the integral of w_beta over R (finite iff beta > 1)."""
    from math import gamma, pi, sqrt

    return sqrt(pi) * gamma(0.5 * (beta - 1.0)) / gamma(0.5 * beta)


def rho_eps(x, s):
    """exp(+s x / 2): rho L_ren rho^-1 = -H_ren.

    With this sign the first-order terms of rho L_ren (rho^-1 v) cancel and
    v'' - s^2 v / 4 + f' v remains. With exp(-s x / 2) they add up to
    2 s v' + s^2 v instead, and rho Phi_ren' misses the kernel by O(s A_ren).
    """
    return np.exp(0.5 * s * np.asarray(x, dtype=float))


@dataclass(frozen=True)
class OperatorBundle:
    wave: WaveData
    params: ModelParams
    a1_limits: tuple = field(init=False)
    a0_limits: tuple = field(init=False)

    def __post_init__(self):
        w = self.wave
        if not w.is_real:
            raise DomainError("operator bundles need a real-eps wave")
        s = w.s_ren.real
        e = w.epsilon.real
        eq = w.equilibria
        object.__setattr__(self, "a1_limits", (s, s))
        object.__setattr__(
            self,
            "a0_limits",
            (float(eval_f_ren_prime(eq.z_minus, e, self.params)), float(eval_f_ren_prime(eq.z_plus, e, self.params))),
        )

    @property
    def s(self) -> float:
        return self.wave.s_ren.real

    @property
    def epsilon(self) -> float:
        return self.wave.epsilon.real

    def fprime_wave(self, x):
        return eval_f_ren_prime(phi_ren(x, self.wave), self.epsilon, self.params)

    def a1(self, x):
        x = np.asarray(x, dtype=float)
        return self.s + self.params.beta_weight * x / (1.0 + x * x)

    def a0_weight_terms(self, x):
        """The two summands of a0 that vanish as |x| -> infinity."""
        x = np.asarray(x, dtype=float)
        b = self.params.beta_weight
        q = 1.0 + x * x
        return self.s * b * x / (2.0 * q), ((b * b - 2.0 * b) * x * x + 2.0 * b) / (4.0 * q * q)

    def a0(self, x):
        t1, t2 = self.a0_weight_terms(x)
        return t1 + t2 + self.fprime_wave(x)

    def q_ren(self, x):
        return -self.fprime_wave(x) + 0.25 * self.s ** 2

    def q_ren_limits(self):
        return tuple(-a + 0.25 * self.s ** 2 for a in self.a0_limits)

    def q_hol(self, y):
        return q_hol(y, self.epsilon, self.params)


def assemble_bundle(w: WaveData, params: ModelParams | None = None) -> OperatorBundle:
    return OperatorBundle(w, params or w.params)


def bundle_for(eps, params: ModelParams) -> OperatorBundle:
    return assemble_bundle(wave_data(eps, params), params)


def q_hol_limit(x):
    """6 - 9 sech^2(sqrt6 x / 2) = 3 Phi_hol^0(x)^2 - 3."""
    c = np.cosh(SQRT6 * np.asarray(x, dtype=float) / 2.0)
    return 6.0 - 9.0 / (c * c)


def q_hol(x, eps, params: ModelParams):
    """Q_hol through its polynomial form in Phi_hol, valid for complex eps."""
    if not hasattr(eps, "epsilon") and complex(eps) == 0:
        return q_hol_limit(x)
    w = wave_data(eps, params)
    e = w.epsilon if not w.is_real else w.epsilon.real
    s = w.s_ren if not w.is_real else w.s_ren.real
    p = phi_hol(x, eps, params)
    a = params.alpha
    return 3.0 * p * p - 2.0 * e * (1.0 + a) * p - (3.0 - e * e * a) + 0.25 * (e * s) ** 2


# ---------------------------------------------------------------------------
# grid application


class OperatorKind(str, enum.Enum):
    L_REN = "L_ren"
    M_REN = "M_ren"
    H_REN = "H_ren"
    H_HOL = "H_hol"


def _central(u, h):
    d1 = (u[2:] - u[:-2]) / (2.0 * h)
    d2 = (u[2:] - 2.0 * u[1:-1] + u[:-2]) / (h * h)
    return d1, d2


def apply_operator(kind, u: GridFunction, bundle: OperatorBundle | None) -> GridFunction:
    """Apply an operator with central differences; the image lives on interior nodes.

    ``bundle=None`` is accepted for H_hol only and selects the eps = 0 limit
    potential.
    """
    kind = OperatorKind(kind)
    grid = u.grid  # Grid itself rejects N < 5
    x = grid.nodes
    xi = x[1:-1]
    d1, d2 = _central(u.values, grid.h)
    ui = u.values[1:-1]
    if kind is OperatorKind.H_HOL:
        pot = q_hol_limit(xi) if bundle is None else q_hol(xi, bundle.epsilon, bundle.params)
        out = -d2 + pot * ui
    else:
        if bundle is None:
            raise DomainError(f"{kind.value} needs an operator bundle")
        if kind is OperatorKind.L_REN:
            out = d2 + bundle.s * d1 + bundle.fprime_wave(xi) * ui
        elif kind is OperatorKind.M_REN:
            out = d2 + bundle.a1(xi) * d1 + bundle.a0(xi) * ui
        else:
            out = -d2 + bundle.q_ren(xi) * ui
    return GridFunction(grid.interior(), out)
