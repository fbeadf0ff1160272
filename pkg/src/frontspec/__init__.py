"""Travelling fronts of the renormalised Allen-Cahn equation.

Equilibria of the renormalised cubic, the explicit front and its speed,
Fredholm borders, finite-difference spectra of the linearisation, complex-eps
bounds, and direct simulation of the PDE.
"""

from .core import ModelParams, Scale, as_scale, epsilon_from_renorm, renorm_from_mollifier
from .equilibria import Equilibria, solve_equilibria
from .grid import Grid, GridFunction
from .wave import WaveData, wave_data

__all__ = [
    "Equilibria", "Grid", "GridFunction", "ModelParams", "Scale", "WaveData",
    "as_scale", "epsilon_from_renorm", "renorm_from_mollifier", "solve_equilibria", "wave_data",
]
