"""Parameter objects and conversions between (delta, sigma), C and epsilon."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError

EPS_MAX_DEFAULT = 0.5


@dataclass(frozen=True)
class ModelParams:
    """Fixed model scalars.

    alpha is the asymmetry of the cubic, beta_weight the exponent of the
    algebraic weight (1 + x^2)^(-beta/2).
    """

    alpha: float = 0.25
    beta_weight: float = 4.0

    def __post_init__(self):
        if not 0.0 < self.alpha < 0.5:
            raise DomainError(f"alpha must lie in (0, 1/2), got {self.alpha}")
        if not self.beta_weight > 2.0:
            raise DomainError(f"beta_weight must exceed 2, got {self.beta_weight}")


@dataclass(frozen=True)
class Scale:
    """The small parameter eps = C^(-1/2), possibly complex.

    Validity is |eps| <= eps_max; the upper end is closed so that eps = 0.5 is
    usable with the default radius.
    """

    epsilon: complex
    eps_max: float = EPS_MAX_DEFAULT

    def __post_init__(self):
        eps = complex(self.epsilon)
        object.__setattr__(self, "epsilon", eps)
        if not cmath.isfinite(eps):
            raise DomainError(f"epsilon must be finite, got {eps}")
        if eps == 0:
            raise DomainError("epsilon must be non-zero")
        if eps.imag == 0 and eps.real < 0:
            raise DomainError("real negative epsilon is not supported")
        if abs(eps) > self.eps_max:
            raise DomainError(f"|epsilon| = {abs(eps)} exceeds eps_max = {self.eps_max}")

    @property
    def is_real_positive(self) -> bool:
        return self.epsilon.imag == 0 and self.epsilon.real > 0

    @property
    def real(self) -> float:
        """epsilon as a float; only meaningful for real positive scales."""
        if not self.is_real_positive:
            raise DomainError(f"epsilon {self.epsilon} is not real positive")
        return self.epsilon.real

    def value(self):
        """epsilon as float when real, complex otherwise."""
        return self.epsilon.real if self.is_real_positive else self.epsilon


def as_scale(eps, eps_max: float = EPS_MAX_DEFAULT) -> Scale:
    if isinstance(eps, Scale):
        return eps
    return Scale(complex(eps), eps_max)


def epsilon_from_renorm(C: float, eps_max: float = math.inf) -> Scale:
    """eps = C^(-1/2).

    The returned Scale carries no validity radius unless eps_max is given,
    since large-eps values are still well defined as numbers.
    """
    if not C > 0:
        raise DomainError(f"renormalisation constant must be positive, got {C}")
    return Scale(C ** -0.5, eps_max)


def renorm_from_mollifier(delta: float, sigma: float) -> float:
    """C = sigma^2 log(1/delta), taken as an exact convention."""
    if not 0.0 < delta < 1.0:
        raise DomainError(f"delta must lie in (0, 1), got {delta}")
    if not sigma > 0:
        raise DomainError(f"sigma must be positive, got {sigma}")
    return sigma * sigma * math.log(1.0 / delta)
