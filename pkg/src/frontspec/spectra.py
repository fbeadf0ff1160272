"""Finite-difference Schrodinger spectra: gap, dilation scaling, kernel, decay."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from .core import ModelParams, as_scale
from .errors import DomainError, NumericError, WindowError
from .grid import Grid, GridFunction
from .operators import OperatorKind, apply_operator, bundle_for, q_hol, q_hol_limit, rho_eps
from .wave import phi_ren_d1

DEFAULT_GRID = Grid(20.0, 4001)
# coarser grid for the dilation identity: rounding in 2/h^2 + Q grows like 1/h^2
SCALING_GRID = Grid(20.0, 1001)
EIG_RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class Tridiagonal:
    """Symmetric tridiagonal matrix acting on the interior nodes of ``grid``."""

    diag: np.ndarray
    off: np.ndarray
    grid: Grid | None = None

    @property
    def n(self) -> int:
        return self.diag.shape[0]

    def matvec(self, v):
        out = self.diag * v
        out[:-1] += self.off * v[1:]
        out[1:] += self.off * v[:-1]
        return out

    def norm_inf(self) -> float:
        row = np.abs(self.diag).copy()
        row[:-1] += np.abs(self.off)
        row[1:] += np.abs(self.off)
        return float(row.max())

    def to_dense(self):
        return np.diag(self.diag) + np.diag(self.off, 1) + np.diag(self.off, -1)


def discretize(Q, grid: Grid) -> Tridiagonal:
    """-d^2/dx^2 + Q with homogeneous Dirichlet data at x = +-L.

    ``Q`` is a callable or an array of samples on all N nodes; the unknowns
    are the N - 2 interior nodes.
    """
    x = grid.nodes[1:-1]
    q = np.asarray(Q(x) if callable(Q) else np.asarray(Q)[1:-1], dtype=float)
    if q.shape != x.shape:
        raise DomainError("potential samples do not match the grid")
    if not np.all(np.isfinite(q)):
        raise DomainError("potential has non-finite samples")
    h2 = grid.h * grid.h
    diag = 2.0 / h2 + q
    off = np.full(x.size - 1, -1.0 / h2)
    return Tridiagonal(diag, off, grid)


def sturm_count(T: Tridiagonal, x) -> np.ndarray:
    """Number of eigenvalues strictly below each shift in ``x``.

    LDL^T pivot recurrence; independent of the LAPACK path used by
    lowest_eigenpairs and used to cross-check it.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    e2 = T.off ** 2
    pivmin = np.finfo(float).tiny * max(1.0, float(e2.max()) if e2.size else 1.0)
    q = T.diag[0] - x
    q = np.where(np.abs(q) < pivmin, -pivmin, q)
    count = (q < 0).astype(int)
    for i in range(1, T.n):
        q = T.diag[i] - x - e2[i - 1] / q
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        count += q < 0
    return count


def lowest_eigenpairs(T: Tridiagonal, k: int):
    """k smallest eigenpairs by Sturm bisection and inverse iteration.

    Returns (values, vectors) with vectors as columns, Euclidean-normalised.
    """
    k = min(k, T.n)
    try:
        vals, vecs = eigh_tridiagonal(
            T.diag, T.off, select="i", select_range=(0, k - 1), lapack_driver="stebz"
        )
    except LinAlgError as exc:
        raise NumericError(f"inverse iteration failed for n = {T.n}, k = {k}: {exc}") from exc
    tol = max(EIG_RESIDUAL_TOL, 1e3 * np.finfo(float).eps * T.norm_inf())
    for j in range(vals.size):
        v = vecs[:, j]
        res = np.linalg.norm(T.matvec(v) - vals[j] * v)
        if res > tol * np.linalg.norm(v):
            raise NumericError(
                f"eigenpair {j} stagnated: residual {res:.3e} > {tol:.3e} (lambda = {vals[j]!r}, n = {T.n})"
            )
    return vals, vecs


@dataclass(frozen=True)
class SpectrumResult:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # shape (k, N), zero at the two boundary nodes
    grid: Grid
    epsilon: float
    operator_kind: str
    extras: dict = field(default_factory=dict)

    @property
    def gap(self) -> float:
        return float(self.eigenvalues[1] - self.eigenvalues[0])

    @property
    def beta(self):
        """Gap in H_ren units, gap / eps^2 (None at eps = 0)."""
        if self.operator_kind == OperatorKind.H_HOL.value:
            return self.gap / self.epsilon ** 2 if self.epsilon else None
        return self.gap

    def vector(self, j: int) -> GridFunction:
        return GridFunction(self.grid, self.eigenvectors[j])


def _pack_vectors(vecs, grid: Grid):
    """Pad with Dirichlet zeros, L2-normalise with weight h, fix the sign."""
    out = np.zeros((vecs.shape[1], grid.N))
    out[:, 1:-1] = vecs.T
    norms = np.sqrt(grid.h * np.sum(out ** 2, axis=1))
    out /= norms[:, None]
    for row in out:
        if row[np.argmax(np.abs(row))] < 0:
            row *= -1.0
    return out


def solve_schrodinger(Q, grid: Grid, k: int = 2, epsilon: float = 0.0, kind: str = "H_hol") -> SpectrumResult:
    grid.require_spectral()
    T = discretize(Q, grid)
    vals, vecs = lowest_eigenpairs(T, k)
    return SpectrumResult(vals, _pack_vectors(vecs, grid), grid, epsilon, kind)


def h_hol_spectrum(eps, params: ModelParams, grid: Grid = DEFAULT_GRID, k: int = 2) -> SpectrumResult:
    if eps == 0:
        return solve_schrodinger(q_hol_limit, grid, k, 0.0)
    e = as_scale(eps).real
    return solve_schrodinger(lambda y: q_hol(y, e, params), grid, k, e)


def h_ren_spectrum(eps, params: ModelParams, grid: Grid = DEFAULT_GRID, k: int = 2) -> SpectrumResult:
    """H_ren on the mapped grid x = eps * y, where ``grid`` holds the y nodes."""
    e = as_scale(eps).real
    bundle = bundle_for(e, params)
    return solve_schrodinger(bundle.q_ren, grid.scaled(e), k, e, OperatorKind.H_REN.value)


def spectral_gap(eps, params: ModelParams, grid: Grid = DEFAULT_GRID) -> SpectrumResult:
    """Lowest two levels of H_hol; beta = gap / eps^2 is the gap of H_ren."""
    return h_hol_spectrum(eps, params, grid, k=2)


@dataclass(frozen=True)
class ScalingReport:
    eps: float
    hol: np.ndarray
    ren_scaled: np.ndarray
    mismatch: np.ndarray

    @property
    def max_mismatch(self) -> float:
        return float(self.mismatch.max())


def scaling_check(eps, params: ModelParams, grid: Grid = SCALING_GRID, k: int = 10, mapped: bool = True) -> ScalingReport:
    """Compare eps^2 lambda_j(H_ren) with lambda_j(H_hol) for j < k.

    The mismatch of level j is measured against the spectral scale
    max(|lambda_j|, |lambda_1|) so the near-zero ground level is compared in
    absolute terms. ``mapped=False`` discretises H_ren on the unscaled grid
    (diagnostic: differences then reflect resolution, not the identity).
    """
    e = as_scale(eps).real
    hol = h_hol_spectrum(e, params, grid, k).eigenvalues
    if mapped:
        ren = h_ren_spectrum(e, params, grid, k).eigenvalues
    else:
        bundle = bundle_for(e, params)
        ren = solve_schrodinger(bundle.q_ren, grid, k, e, OperatorKind.H_REN.value).eigenvalues
    ren_scaled = e * e * ren
    floor = abs(hol[1]) if hol.size > 1 else 1.0
    mismatch = np.abs(ren_scaled - hol) / np.maximum(np.abs(hol), floor)
    return ScalingReport(e, hol, ren_scaled, mismatch)


@dataclass(frozen=True)
class KernelReport:
    residual: float
    min_value: float
    positive: bool


def kernel_function(eps, params: ModelParams, grid: Grid) -> GridFunction:
    """rho_eps Phi_ren' sampled on the mapped grid (``grid`` in H_hol units)."""
    e = as_scale(eps).real
    bundle = bundle_for(e, params)
    xg = grid.scaled(e)
    u = rho_eps(xg.nodes, bundle.s) * phi_ren_d1(xg.nodes, bundle.wave)
    return GridFunction(xg, u)


def kernel_residual(eps, params: ModelParams, grid: Grid = DEFAULT_GRID) -> KernelReport:
    """||H_ren u|| / ||u|| on interior nodes for u = rho_eps Phi_ren'."""
    if eps == 0:
        y = grid.nodes
        u = GridFunction(grid, 1.0 / np.cosh(np.sqrt(6.0) * y / 2.0) ** 2)
        image = apply_operator(OperatorKind.H_HOL, u, None)
    else:
        u = kernel_function(eps, params, grid)
        image = apply_operator(OperatorKind.H_REN, u, bundle_for(as_scale(eps).real, params))
    ui = u.values[1:-1]
    res = float(np.linalg.norm(image.values) / np.linalg.norm(ui))
    m = float(u.values.min())
    return KernelReport(res, m, m > 0)


def decay_rate(v: GridFunction, window) -> float:
    """Least-squares slope of log|v| over nodes in ``window`` = (x_a, x_b)."""
    xa, xb = sorted(window)
    L = v.grid.L
    if xa < -L + 2.0 or xb > L - 2.0:
        raise WindowError(f"window [{xa}, {xb}] is within 2 of the boundary +-{L}")
    x = v.x
    sel = (x >= xa) & (x <= xb)
    if sel.sum() < 3:
        raise WindowError("fewer than 3 nodes in the window")
    mag = np.abs(v.values[sel])
    if np.any(mag <= np.finfo(float).tiny * 1e3):
        raise WindowError("eigenfunction underflows inside the window")
    slope = np.polyfit(x[sel], np.log(mag), 1)[0]
    return float(slope)


def sign_changes(v: GridFunction, rel_floor: float = 1e-8) -> int:
    """Sign changes of v ignoring entries below rel_floor * max|v|."""
    vals = v.values
    keep = np.abs(vals) > rel_floor * np.abs(vals).max()
    s = np.sign(vals[keep])
    return int(np.count_nonzero(s[1:] != s[:-1]))


def isolated_count(eps, params: ModelParams, grid: Grid, threshold: float) -> int:
    """Eigenvalues of H_hol below ``threshold`` via a single Sturm count."""
    if eps == 0:
        T = discretize(q_hol_limit, grid)
    else:
        e = as_scale(eps).real
        T = discretize(lambda y: q_hol(y, e, params), grid)
    return int(sturm_count(T, threshold)[0])
