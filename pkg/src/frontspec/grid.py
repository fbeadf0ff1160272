"""Uniform symmetric grids and functions sampled on them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError

MIN_SPECTRAL_NODES = 101


@dataclass(frozen=True)
class Grid:
    """Nodes x_j = -L + j h, j = 0..N-1, with h = 2L/(N-1) and x_mid = 0."""

    L: float
    N: int

    def __post_init__(self):
        if not self.L > 0:
            raise DomainError(f"half-width must be positive, got {self.L}")
        if self.N < 5 or self.N % 2 == 0:
            raise DomainError(f"node count must be odd and >= 5, got {self.N}")

    @property
    def h(self) -> float:
        return 2.0 * self.L / (self.N - 1)

    @property
    def mid(self) -> int:
        return (self.N - 1) // 2

    @cached_property
    def nodes(self) -> np.ndarray:
        x = -self.L + self.h * np.arange(self.N)
        x[self.mid] = 0.0
        x[-1] = self.L
        return x

    def interior(self) -> "Grid":
        return Grid(self.L - self.h, self.N - 2)

    def scaled(self, factor: float) -> "Grid":
        """Grid with nodes factor * x_j (the dilation x = eps y)."""
        return Grid(factor * self.L, self.N)

    def refined(self) -> "Grid":
        """Same interval, half the spacing."""
        return Grid(self.L, 2 * self.N - 1)

    def require_spectral(self):
        if self.N < MIN_SPECTRAL_NODES:
            raise DomainError(f"spectral computations need N >= {MIN_SPECTRAL_NODES}, got {self.N}")


@dataclass(frozen=True)
class GridFunction:
    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values)
        object.__setattr__(self, "values", vals)
        if vals.shape != (self.grid.N,):
            raise DomainError(f"{vals.shape} values for a grid of {self.grid.N} nodes")

    @classmethod
    def sample(cls, fn, grid: Grid) -> "GridFunction":
        return cls(grid, np.asarray(fn(grid.nodes)))

    @property
    def x(self) -> np.ndarray:
        return self.grid.nodes

    def norm(self) -> float:
        """Discrete L2 norm (h sum |u_j|^2)^(1/2)."""
        return float(np.sqrt(self.grid.h * np.sum(np.abs(self.values) ** 2)))
