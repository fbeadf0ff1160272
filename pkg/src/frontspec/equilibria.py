"""Roots of the renormalised cubic and their Laurent expansions.

    f_ren(u) = -u^3 + (1 + alpha) u^2 + (3 eps^-2 - alpha) u - (1 + alpha) eps^-2

For real eps the three roots are sorted; for complex eps each branch is
seeded with its leading expansion and polished by Newton on a rescaled
polynomial, so labels follow the holomorphic branches.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import ModelParams, Scale, as_scale
from .errors import BranchTrackingError, DegeneracyError, DomainError

TOL_ROOT = 1e-9
MAX_ITER = 50
COLLISION_REL = 1e-6
SQRT3 = math.sqrt(3.0)


def _eps_value(eps):
    # evaluators accept any non-zero eps; the validity radius is enforced by solvers
    return (eps if isinstance(eps, Scale) else Scale(complex(eps), math.inf)).value()


def _inv_eps2(eps):
    e = _eps_value(eps)
    return 1.0 / (e * e)


def eval_f_ren(u, eps, params: ModelParams):
    """Horner evaluation of f_ren; vectorised over u."""
    k = _inv_eps2(eps)
    a = params.alpha
    return ((-u + (1.0 + a)) * u + (3.0 * k - a)) * u - (1.0 + a) * k


def eval_f_ren_prime(u, eps, params: ModelParams):
    k = _inv_eps2(eps)
    a = params.alpha
    return (-3.0 * u + 2.0 * (1.0 + a)) * u + 3.0 * k - a


@dataclass(frozen=True)
class DepressedCubic:
    """f_ren(z) = y^3 + b1 y + b0 with y = -(z - (1 + alpha)/3)."""

    b1: complex
    b0: float
    discriminant: complex


def depressed_form(eps, params: ModelParams) -> DepressedCubic:
    k = _inv_eps2(eps)
    a = params.alpha
    b1 = -3.0 * k + (3.0 * a - (1.0 + a) ** 2) / 3.0
    b0 = (2.0 * (1.0 + a) ** 3 - 9.0 * a * (1.0 + a)) / 27.0
    disc = -4.0 * b1 ** 3 - 27.0 * b0 ** 2
    return DepressedCubic(b1, b0, disc)


def companion_roots(eps, params: ModelParams) -> np.ndarray:
    """Eigenvalues of the companion matrix of the monic cubic -f_ren."""
    k = _inv_eps2(eps)
    a = params.alpha
    # monic: u^3 + c2 u^2 + c1 u + c0
    c2 = -(1.0 + a)
    c1 = -(3.0 * k - a)
    c0 = (1.0 + a) * k
    comp = np.zeros((3, 3), dtype=complex)
    comp[1, 0] = comp[2, 1] = 1.0
    comp[:, 2] = [-c0, -c1, -c2]
    return np.linalg.eigvals(comp)


def cardano_roots(eps, params: ModelParams) -> np.ndarray:
    """Roots via the depressed cubic, trigonometric form when Disc > 0."""
    dc = depressed_form(eps, params)
    m = (1.0 + params.alpha) / 3.0
    p, q = complex(dc.b1), complex(dc.b0)
    if isinstance(dc.discriminant, float) or complex(dc.discriminant).imag == 0:
        disc = complex(dc.discriminant).real
        if disc > 0:
            # three real y: y_k = 2 sqrt(-p/3) cos(theta/3 - 2 pi k/3)
            p, q = p.real, q.real
            r = 2.0 * math.sqrt(-p / 3.0)
            arg = (3.0 * q / (2.0 * p)) * math.sqrt(-3.0 / p)
            theta = math.acos(max(-1.0, min(1.0, arg)))
            ys = np.array([r * math.cos(theta / 3.0 - 2.0 * math.pi * j / 3.0) for j in range(3)])
            return m - ys
    d = cmath.sqrt(q * q / 4.0 + p ** 3 / 27.0)
    u = (-q / 2.0 + d) ** (1.0 / 3.0)
    if abs(u) == 0:
        u = (-q / 2.0 - d) ** (1.0 / 3.0)
    w = cmath.exp(2j * math.pi / 3.0)
    ys = []
    for j in range(3):
        uj = u * w ** j
        ys.append(uj - p / (3.0 * uj))
    return m - np.array(ys)


@dataclass(frozen=True)
class Equilibria:
    z_minus: complex
    z_zero: complex
    z_plus: complex
    epsilon: complex
    discriminant: complex

    def as_tuple(self):
        return (self.z_minus, self.z_zero, self.z_plus)


def _newton(g, dg, x0, tol, max_iter):
    x = x0
    for it in range(max_iter):
        step = g(x) / dg(x)
        x = x - step
        if abs(step) <= tol * max(1.0, abs(x)):
            return x
    raise BranchTrackingError(f"Newton did not converge from seed {x0} in {max_iter} iterations")


def _track_branches(eps: complex, params: ModelParams):
    a = params.alpha
    m = (1.0 + a) / 3.0
    tol = 1e-15

    # bounded branch: eps^2 f_ren(z)
    def g0(z):
        return ((-eps * eps * z + eps * eps * (1.0 + a)) * z + (3.0 - eps * eps * a)) * z - (1.0 + a)

    def dg0(z):
        return (-3.0 * eps * eps * z + 2.0 * eps * eps * (1.0 + a)) * z + (3.0 - eps * eps * a)

    # unbounded branches in zeta = eps z: eps^3 f_ren(zeta / eps)
    def gpm(w):
        return ((-w + eps * (1.0 + a)) * w + (3.0 - a * eps * eps)) * w - eps * (1.0 + a)

    def dgpm(w):
        return (-3.0 * w + 2.0 * eps * (1.0 + a)) * w + (3.0 - a * eps * eps)

    z0 = _newton(g0, dg0, complex(m), tol, MAX_ITER)
    wp = _newton(gpm, dgpm, SQRT3 + eps * m, tol, MAX_ITER)
    wm = _newton(gpm, dgpm, -SQRT3 + eps * m, tol, MAX_ITER)
    return wm / eps, z0, wp / eps


def _polish(z, eps, params, iters=3):
    for _ in range(iters):
        d = eval_f_ren_prime(z, eps, params)
        if d == 0:
            break
        z = z - eval_f_ren(z, eps, params) / d
    return z


def solve_equilibria(eps, params: ModelParams) -> Equilibria:
    """Three labelled roots (z_minus, z_zero, z_plus) of f_ren."""
    scale = as_scale(eps)
    e = scale.value()
    dc = depressed_form(scale, params)
    oracle = companion_roots(scale, params)

    if scale.is_real_positive:
        if not dc.discriminant > 0:
            raise DegeneracyError(f"discriminant {dc.discriminant} <= 0 at eps = {e}; roots not all real")
        roots = np.sort(oracle.real)
        zs = tuple(float(_polish(r, e, params)) for r in roots)
    else:
        zs = tuple(complex(z) for z in _track_branches(complex(e), params))
        # every tracked branch must coincide with a distinct companion root
        used = set()
        for z in zs:
            j = int(np.argmin(np.abs(oracle - z)))
            if j in used:
                raise BranchTrackingError(f"two tracked branches converged to the same root {z}; companion roots {oracle}")
            if abs(oracle[j] - z) > 1e-6 * max(1.0, abs(z)):
                raise BranchTrackingError(f"tracked branch {z} does not match the companion roots {oracle}")
            used.add(j)

    zm, z0, zp = zs
    spread = abs(zp - zm)
    for i in range(3):
        for j in range(i + 1, 3):
            if abs(zs[i] - zs[j]) < COLLISION_REL * spread:
                raise DegeneracyError(f"roots {zs[i]} and {zs[j]} collide at eps = {e}")
    return Equilibria(zm, z0, zp, complex(e), dc.discriminant)


def root_residuals(eq: Equilibria, params: ModelParams):
    """|f_ren(z_k)| / max(1, |z_k|^3) for each branch."""
    e = eq.epsilon if eq.epsilon.imag else eq.epsilon.real
    return tuple(
        abs(eval_f_ren(z, e, params)) / max(1.0, abs(z) ** 3) for z in eq.as_tuple()
    )


def vieta_residuals(eq: Equilibria, params: ModelParams):
    """Relative defects of the three Vieta identities."""
    a = params.alpha
    e = eq.epsilon if eq.epsilon.imag else eq.epsilon.real
    k = 1.0 / (e * e)
    zm, z0, zp = eq.as_tuple()
    scale = max(1.0, abs(zm), abs(zp)) ** 3
    return (
        abs(zm + z0 + zp - (1.0 + a)) / max(1.0, abs(zp)),
        abs(zm * z0 + zm * zp + z0 * zp - (a - 3.0 * k)) / max(1.0, abs(zp)) ** 2,
        abs(zm * z0 * zp + (1.0 + a) * k) / scale,
    )


def expansion_residuals(eps, params: ModelParams):
    """Distances of the branches from their leading Laurent terms.

    Returns (|z0 - m|, |z_minus + sqrt3/eps - m|, |z_plus - sqrt3/eps - m|)
    with m = (1 + alpha)/3.
    """
    eq = solve_equilibria(eps, params)
    e = eq.epsilon if eq.epsilon.imag else eq.epsilon.real
    m = (1.0 + params.alpha) / 3.0
    return (
        abs(eq.z_zero - m),
        abs(eq.z_minus + SQRT3 / e - m),
        abs(eq.z_plus - SQRT3 / e - m),
    )


def validity_report(eps, params: ModelParams) -> dict:
    """Per-(alpha, eps) validity checks in place of an unknown eps_0."""
    report = {"epsilon": complex(as_scale(eps).epsilon), "ok": False}
    try:
        eq = solve_equilibria(eps, params)
    except (DomainError, DegeneracyError, BranchTrackingError) as exc:
        report["reason"] = str(exc)
        return report
    report["roots_residual"] = max(root_residuals(eq, params))
    report["vieta_residual"] = max(vieta_residuals(eq, params))
    ordered = True
    if as_scale(eps).is_real_positive:
        ordered = eq.z_minus < eq.z_zero < eq.z_plus
        report["discriminant_positive"] = bool(eq.discriminant > 0)
    report["ordered"] = bool(ordered)
    report["ok"] = bool(ordered and report["roots_residual"] <= TOL_ROOT and report["vieta_residual"] <= TOL_ROOT)
    return report
