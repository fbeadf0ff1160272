"""Fredholm borders of the essential spectrum from the asymptotic matrices.

For each end x -> +-inf the constant-coefficient system
(u, u')' = A(lambda) (u, u') with A = [[0, 1], [lambda - a0, -a1]]
decides the Fredholm property: lambda is on a border iff some spatial
eigenvalue is purely imaginary, and the index is the difference of the
Morse indices i(A^-) - i(A^+).
"""

from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass

import numpy as np

from .operators import OperatorBundle

MINUS, PLUS = "minus", "plus"
HYPERBOLICITY_REL = 1e-10


def _limits(side, bundle: OperatorBundle):
    if side == MINUS:
        return bundle.a1_limits[0], bundle.a0_limits[0]
    if side == PLUS:
        return bundle.a1_limits[1], bundle.a0_limits[1]
    raise ValueError(f"side must be {MINUS!r} or {PLUS!r}, got {side!r}")


@dataclass(frozen=True)
class AsymptoticMatrix:
    lam: complex
    side: str
    entries: np.ndarray

    @classmethod
    def build(cls, lam, side, bundle: OperatorBundle) -> "AsymptoticMatrix":
        a1, a0 = _limits(side, bundle)
        m = np.array([[0.0, 1.0], [lam - a0, -a1]], dtype=complex)
        return cls(complex(lam), side, m)

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    @property
    def det(self) -> complex:
        e = self.entries
        return complex(e[0, 0] * e[1, 1] - e[0, 1] * e[1, 0])


def _quadratic_roots(b, c):
    """Roots of mu^2 + b mu + c without cancellation."""
    b, c = complex(b), complex(c)
    d = cmath.sqrt(b * b - 4.0 * c)
    # pick the sign that adds magnitudes
    if (b.conjugate() * d).real < 0:
        d = -d
    q = -0.5 * (b + d)
    if q == 0:
        return 0j, 0j
    return q, c / q


def spatial_eigenvalues(lam, side, bundle: OperatorBundle):
    """Roots of mu^2 + a1 mu - (lambda - a0) = 0, i.e. eigenvalues of A(lambda)."""
    a1, a0 = _limits(side, bundle)
    return _quadratic_roots(a1, -(complex(lam) - a0))


def hyperbolicity_tol(lam, side, bundle: OperatorBundle) -> float:
    _, a0 = _limits(side, bundle)
    return HYPERBOLICITY_REL * (1.0 + abs(lam) + abs(a0))


def morse_index(lam, side, bundle: OperatorBundle):
    """Number of spatial eigenvalues with positive real part, or None if not hyperbolic."""
    tol = hyperbolicity_tol(lam, side, bundle)
    mus = spatial_eigenvalues(lam, side, bundle)
    if any(abs(m.real) <= tol for m in mus):
        return None
    return sum(1 for m in mus if m.real > tol)


@dataclass(frozen=True)
class BorderCurve:
    """Gamma(xi) = -xi^2 + i a1 xi + a0, the image of the imaginary axis."""

    side: str
    a1_lim: float
    a0_lim: float

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=float)
        return -xi * xi + 1j * self.a1_lim * xi + self.a0_lim

    @property
    def max_real(self) -> float:
        return self.a0_lim


def border_curve(side, bundle: OperatorBundle) -> BorderCurve:
    a1, a0 = _limits(side, bundle)
    return BorderCurve(side, a1, a0)


def border_max_real(bundle: OperatorBundle) -> float:
    """Largest real part on either border: max(a0^-, a0^+), attained at xi = 0."""
    return max(bundle.a0_limits)


class Verdict(enum.Enum):
    NOT_FREDHOLM = "NotFredholm"
    FREDHOLM_INDEX = "FredholmIndex"
    INDEX_ZERO = "IndexZeroRegion"


@dataclass(frozen=True)
class Classification:
    lam: complex
    verdict: Verdict
    morse_minus: int | None
    morse_plus: int | None

    @property
    def index(self):
        if self.morse_minus is None or self.morse_plus is None:
            return None
        return self.morse_minus - self.morse_plus


def classify_lambda(lam, bundle: OperatorBundle) -> Classification:
    i_m = morse_index(lam, MINUS, bundle)
    i_p = morse_index(lam, PLUS, bundle)
    if i_m is None or i_p is None:
        verdict = Verdict.NOT_FREDHOLM
    elif i_m == i_p:
        verdict = Verdict.INDEX_ZERO
    else:
        verdict = Verdict.FREDHOLM_INDEX
    return Classification(complex(lam), verdict, i_m, i_p)
