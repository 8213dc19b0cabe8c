"""Eigenfunction expansion on the interval ``(0, L)`` with Dirichlet ends.

The Laplacian eigenpairs are ``lam_k = (k pi / L)^2`` and
``e_k(x) = sqrt(2/L) sin(k pi x / L)``.  A space-time source is projected onto
the first ``K`` modes, each mode is solved in closed form, and the modal
coefficients are summed back up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import closed_form
from .modal import (
    DomainError,
    ModeParams,
    ResolutionError,
    ShapeError,
    Signal,
    TimeGrid,
)
from .norms import bochner_norm_sq, trial_norm_sq
from .quadrature import simpson_weights

#: Minimum number of spatial grid points per half-wavelength of the top mode.
POINTS_PER_HALF_WAVE = 10


@dataclass(frozen=True)
class EigenBasis1D:
    L: float
    K: int

    @property
    def eigenvalues(self) -> np.ndarray:
        return (np.arange(1, self.K + 1) * np.pi / self.L) ** 2

    def eigenfunction(self, k: int, x) -> np.ndarray:
        if not 1 <= k <= self.K:
            raise DomainError(f"mode index {k} outside 1..{self.K}")
        return math.sqrt(2.0 / self.L) * np.sin(k * np.pi * np.asarray(x) / self.L)

    def matrix(self, x) -> np.ndarray:
        """``E[k-1, i] = e_k(x_i)``."""
        x = np.asarray(x, dtype=float)
        k = np.arange(1, self.K + 1)[:, None]
        return math.sqrt(2.0 / self.L) * np.sin(k * np.pi * x[None, :] / self.L)

    def spatial_nodes(self, nx: int) -> np.ndarray:
        return np.linspace(0.0, self.L, nx + 1)

    def check_resolution(self, nx: int) -> None:
        if nx < POINTS_PER_HALF_WAVE * self.K:
            raise ResolutionError(
                f"nx={nx} under-resolves mode {self.K}: need at least "
                f"{POINTS_PER_HALF_WAVE * self.K} intervals"
            )
        if nx % 2:
            raise ResolutionError(f"nx must be even for Simpson quadrature, got {nx}")


def build_basis(L: float, K: int) -> EigenBasis1D:
    if not L > 0:
        raise DomainError(f"L must be positive, got {L!r}")
    if int(K) != K or K < 1:
        raise DomainError(f"K must be a positive integer, got {K!r}")
    return EigenBasis1D(float(L), int(K))


@dataclass(frozen=True)
class SpectralField:
    """Modal coefficients ``w_k(t)`` of a space-time function."""

    basis: EigenBasis1D
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if len(coeffs) != self.basis.K:
            raise ShapeError(f"expected {self.basis.K} modal coefficients, got {len(coeffs)}")
        if len({w.grid for w in coeffs}) != 1:
            raise ShapeError("modal coefficients must share one time grid")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def grid(self) -> TimeGrid:
        return self.coeffs[0].grid

    def values(self, x) -> np.ndarray:
        """Samples ``w(x_i, t_j)`` as an array of shape ``(len(x), n_t)``."""
        E = self.basis.matrix(x)
        W = np.stack([w.values for w in self.coeffs])
        return E.T @ W

    def to_csv_rows(self):
        t = self.grid.nodes
        header = ["t"] + [f"mode_{k}" for k in range(1, self.basis.K + 1)]
        rows = np.column_stack([t] + [w.values for w in self.coeffs])
        return header, rows


def project_source(samples, basis: EigenBasis1D, grid: TimeGrid) -> list[Signal]:
    """Modal coefficients of ``f(x, t)`` sampled on ``basis.spatial_nodes(nx) x grid``.

    ``samples`` has shape ``(nx + 1, n_t)``; the projection uses Simpson's
    rule in space.
    """
    samples = np.asarray(samples)
    if samples.ndim != 2 or samples.shape[1] != grid.n + 1:
        raise ShapeError(f"expected samples of shape (nx+1, {grid.n + 1}), got {samples.shape}")
    nx = samples.shape[0] - 1
    basis.check_resolution(nx)
    x = basis.spatial_nodes(nx)
    weighted = basis.matrix(x) * simpson_weights(nx, basis.L / nx)[None, :]
    modal = weighted @ samples
    return [Signal(grid, row) for row in modal]


def sample_field(func, basis: EigenBasis1D, grid: TimeGrid, nx: int) -> np.ndarray:
    """Evaluate ``func(x, t)`` on the tensor grid used by :func:`project_source`."""
    x = basis.spatial_nodes(nx)
    X, Tm = np.meshgrid(x, grid.nodes, indexing="ij")
    return np.asarray(func(X, Tm))


def solve_ibvp(
    basis: EigenBasis1D,
    modal_forcings,
    c: float = 1.0,
    equation: str = "wave",
) -> SpectralField:
    """Solve every mode in closed form and collect the coefficients of ``u``."""
    modal_forcings = list(modal_forcings)
    if len(modal_forcings) != basis.K:
        raise ShapeError(f"expected {basis.K} modal forcings, got {len(modal_forcings)}")
    grid = modal_forcings[0].grid
    coeffs = []
    for lam_k, f_k in zip(basis.eigenvalues, modal_forcings):
        if equation == "wave":
            u, _ = closed_form.duhamel_wave(ModeParams(lam_k, c, grid.T), f_k, grid)
        elif equation == "heat":
            u = closed_form.solve_heat(lam_k, f_k, grid)
        elif equation == "schrodinger":
            u = closed_form.solve_schrodinger(lam_k, f_k, grid)
        else:
            raise DomainError(f"unknown equation {equation!r}")
        coeffs.append(u)
    return SpectralField(basis, tuple(coeffs))


def field_bochner_norm_sq(field: SpectralField, s: float) -> float:
    """``sum_k lam_k^s ||w_k||^2``."""
    return bochner_norm_sq(zip(field.basis.eigenvalues, field.coeffs), s)


def field_trial_norm_sq(field: SpectralField, forcings, c: float = 1.0) -> float:
    """``sum_k lam_k ||u_k||^2 + ||u_k''||^2 / (c^4 lam_k)``, ``u_k''`` from the equation."""
    forcings = list(forcings)
    if len(forcings) != field.basis.K:
        raise ShapeError("one forcing per mode is required")
    grid = field.grid
    return sum(
        trial_norm_sq(ModeParams(lam_k, c, grid.T), u_k, f_k)
        for lam_k, u_k, f_k in zip(field.basis.eigenvalues, field.coeffs, forcings)
    )
