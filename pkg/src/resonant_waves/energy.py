"""Pointwise energy balances and the resonance-aware data norm.

For the wave mode with zero initial data,

    lam u(t)^2 + u'(t)^2 / c^2 = c^2 (fc(t)^2 + fs(t)^2),

where ``fc``/``fs`` are the running cosine/sine transforms of ``f`` at the
resonance frequency.  Integrating over ``(0, T)`` gives a data norm that
weights sources near resonance more heavily.  The variants below cover
nonzero initial values, damping, the heat equation and the Schroedinger mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .modal import (
    DomainError,
    Forcing,
    ModeParams,
    ShapeError,
    Signal,
    TimeGrid,
    UnsupportedCaseError,
    forcing_frequency,
    on_grid,
)
from .norms import l2_norm_sq, trial_norm_sq
from .quadrature import integrate
from .transforms import TransformPair, transform_values, transforms

__all__ = [
    "TransformPair",
    "transforms",
    "BalanceReport",
    "rotation_matrix",
    "wave_balance_residual",
    "resonance_aware_data_norm_sq",
    "energy_norm_ratio",
    "balance_with_initial_values",
    "damped_transforms",
    "damped_balance_residual",
    "HeatEstimates",
    "heat_transform_and_estimates",
    "schrodinger_balance_residual",
]


@dataclass(frozen=True)
class BalanceReport:
    max_abs: float
    max_rel: float
    grid: TimeGrid
    energy: Optional[np.ndarray] = None  # left-hand side on the grid

    def __post_init__(self):
        if self.max_abs < 0 or self.max_rel < 0:
            raise DomainError("residuals are nonnegative")


def _report(lhs, rhs, grid: TimeGrid) -> BalanceReport:
    lhs = np.asarray(lhs, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    residual = np.abs(lhs - rhs)
    max_abs = float(residual.max())
    scale = float(max(np.abs(lhs).max(), np.abs(rhs).max()))
    max_rel = max_abs / scale if scale > 0 else 0.0
    return BalanceReport(max_abs, max_rel, grid, lhs)


def _same_grid(grid: TimeGrid, *signals: Signal) -> None:
    for s in signals:
        if s.grid != grid:
            raise ShapeError("signals live on different grids")


def rotation_matrix(frequency: float, t) -> np.ndarray:
    """``[[sin, -cos], [cos, sin]]`` at ``frequency * t``; shape ``(..., 2, 2)``."""
    t = np.asarray(t, dtype=float)
    s, c = np.sin(frequency * t), np.cos(frequency * t)
    return np.stack([np.stack([s, -c], -1), np.stack([c, s], -1)], -2)


def wave_balance_residual(
    params: ModeParams, u: Signal, uprime: Signal, pair: TransformPair
) -> BalanceReport:
    _same_grid(u.grid, uprime, pair.fc, pair.fs)
    if not math.isclose(pair.frequency, params.omega_res, rel_tol=1e-14):
        raise DomainError("transforms must be taken at the resonance frequency")
    c2 = params.c**2
    lhs = params.lam * u.values**2 + uprime.values**2 / c2
    rhs = c2 * (pair.fc.values**2 + pair.fs.values**2)
    return _report(lhs, rhs, u.grid)


def resonance_aware_data_norm_sq(
    params: ModeParams, forcing: Forcing | Signal, grid: TimeGrid
) -> float:
    """``||f||^2 / lam + c^2 (||fc||^2 + ||fs||^2)``."""
    pair = transforms(forcing, params.omega_res, grid)
    f = Signal(grid, on_grid(forcing, grid))
    return l2_norm_sq(f) / params.lam + params.c**2 * (
        l2_norm_sq(pair.fc) + l2_norm_sq(pair.fs)
    )


def energy_norm_ratio(params: ModeParams, forcing: Forcing, grid: TimeGrid) -> float:
    """``(||u||_U^2 + ||u'||^2 / c^2)`` over the resonance-aware data norm."""
    from .closed_form import duhamel_wave

    u, du = duhamel_wave(params, forcing, grid)
    lhs = trial_norm_sq(params, u, forcing) + l2_norm_sq(du) / params.c**2
    return lhs / resonance_aware_data_norm_sq(params, forcing, grid)


def balance_with_initial_values(
    params: ModeParams,
    g: float,
    h: float,
    forcing: Forcing | Signal,
    grid: TimeGrid,
    solution: tuple[Signal, Signal] | None = None,
) -> BalanceReport:
    """Balance for ``u(0) = g``, ``u'(0) = h``.

    ``lam u^2 + u'^2/c^2 = c^2 [(fc + h/c^2)^2 + (fs - sqrt(mu) g/c^2)^2]``.
    Without an explicit ``solution`` the Duhamel solver is used.
    """
    from .closed_form import duhamel_wave

    if solution is None:
        solution = duhamel_wave(params, forcing, grid, g=g, h=h)
    u, du = solution
    _same_grid(grid, u, du)
    c2, m = params.c**2, params.omega_res
    pair = transforms(forcing, m, grid)
    lhs = params.lam * u.values**2 + du.values**2 / c2
    rhs = c2 * ((pair.fc.values + h / c2) ** 2 + (pair.fs.values - m * g / c2) ** 2)
    return _report(lhs, rhs, grid)


def damped_transforms(forcing, rho: float, eta: float, grid: TimeGrid) -> TransformPair:
    """Transforms of ``f(s) exp(rho s / 2)`` at frequency ``sqrt(eta)``."""
    if rho * grid.T / 2 > 700:
        raise DomainError("exp(rho T / 2) overflows; shorten the horizon")
    ffreq = 0.0 if isinstance(forcing, Signal) else forcing_frequency(forcing)
    k = math.sqrt(eta)
    grid.check_resolution(max(k, rho, ffreq))
    tilde = on_grid(forcing, grid) * np.exp(rho * grid.nodes / 2)
    return transform_values(tilde, k, grid)


def damped_balance_residual(
    lam: float,
    rho: float,
    u: Signal,
    uprime: Signal,
    forcing: Forcing | Signal,
    grid: TimeGrid,
    shifted: bool = True,
) -> BalanceReport:
    """Balance ``eta u^2 + v^2 = exp(-rho t) (Fc^2 + Fs^2)`` of the damped mode.

    ``v = u' + rho u / 2`` when ``shifted`` (the form that actually holds);
    ``shifted=False`` tests the same identity with the bare velocity ``u'``.
    """
    _same_grid(grid, u, uprime)
    eta = (4.0 * lam - rho * rho) / 4.0
    if eta <= 0:
        raise UnsupportedCaseError("the damped balance needs 4*lam > rho**2")
    pair = damped_transforms(forcing, rho, eta, grid)
    v = uprime.values + (rho / 2.0) * u.values if shifted else uprime.values
    lhs = eta * u.values**2 + v**2
    rhs = np.exp(-rho * grid.nodes) * (pair.fc.values**2 + pair.fs.values**2)
    return _report(lhs, rhs, grid)


@dataclass(frozen=True)
class HeatEstimates:
    """Quantities of the heat mode ``u' + lam u = f``.

    ``scaled_fe`` holds ``exp(-lam t) fe(t)`` (which is ``u``) so that large
    ``lam T`` never overflows; :attr:`fe` rebuilds the raw transform.
    """

    lam: float
    scaled_fe: Signal
    lhs: float
    rhs: float
    u_prime_sq: float
    u_sq: float
    u_end_sq: float
    f_sq: float
    exact_balance_residual: float

    @property
    def fe(self) -> Signal:
        grid = self.scaled_fe.grid
        with np.errstate(over="raise"):
            return Signal(grid, np.exp(self.lam * grid.nodes) * self.scaled_fe.values)

    @property
    def isometry_gap(self) -> float:
        """``||f||^2/lam - (||u'||^2/lam + lam ||u||^2)``; equals ``u(T)^2``."""
        return self.f_sq / self.lam - (self.u_prime_sq / self.lam + self.lam * self.u_sq)


def heat_transform_and_estimates(
    lam: float, forcing: Forcing | Signal, grid: TimeGrid
) -> HeatEstimates:
    """Critical estimate ``lam int exp(-2 lam t) fe^2 <= (1/lam) int f^2`` and the
    exact balance ``||u'||^2 + lam^2 ||u||^2 + lam u(T)^2 = ||f||^2``."""
    from .closed_form import solve_heat

    u = solve_heat(lam, forcing, grid)
    f = on_grid(forcing, grid)
    du = f - lam * u.values
    u_sq = float(integrate(u.values**2, grid))
    du_sq = float(integrate(du**2, grid))
    f_sq = float(integrate(f**2, grid))
    u_end_sq = float(u.values[-1] ** 2)
    balance = du_sq + lam**2 * u_sq + lam * u_end_sq
    residual = abs(balance - f_sq) / f_sq if f_sq > 0 else abs(balance)
    return HeatEstimates(
        lam=lam,
        scaled_fe=u,
        lhs=lam * u_sq,
        rhs=f_sq / lam,
        u_prime_sq=du_sq,
        u_sq=u_sq,
        u_end_sq=u_end_sq,
        f_sq=f_sq,
        exact_balance_residual=residual,
    )


def schrodinger_balance_residual(
    lam: float, u: Signal, forcing: Forcing | Signal, grid: TimeGrid
) -> BalanceReport:
    """``|u|^2 = (Re fc + Im fs)^2 + (Re fs - Im fc)^2`` with transforms at ``lam``."""
    _same_grid(grid, u)
    pair = transforms(forcing, lam, grid)
    fc = pair.fc.values.astype(complex)
    fs = pair.fs.values.astype(complex)
    rhs = (fc.real + fs.imag) ** 2 + (fs.real - fc.imag) ** 2
    return _report(np.abs(u.values) ** 2, rhs, grid)
