"""Exact solutions of the single-mode initial value problems.

All solvers start from zero initial data unless stated otherwise:

* wave        ``u''/c^2 + lam u = f``
* damped wave ``u'' + rho u' + lam u = f``
* heat        ``u' + lam u = f``
* Schroedinger ``i u' + lam u = f``

Cosine sources on the wave mode have a fully analytic solution
(:func:`solve_wave_cosine`); everything else is evaluated through Duhamel's
formula with cumulative Simpson quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .modal import (
    ComplexSignal,
    DomainError,
    Forcing,
    ModeParams,
    Signal,
    TimeGrid,
    UnsupportedCaseError,
    forcing_frequency,
    on_grid,
)
from .quadrature import decaying_cumulative
from .transforms import transforms


def sinc(x):
    """Unnormalised sinc, ``sin(x)/x`` with ``sinc(0) = 1``."""
    return np.sinc(np.asarray(x) / np.pi)


@dataclass(frozen=True)
class WaveModeSolution:
    """Response of a wave mode to ``cos(omega t)``.

    Inside the resonance window the solution is written as
    ``c^2 t / (omega + sqrt(mu)) * sin((omega + sqrt(mu)) t / 2) * sinc((omega - sqrt(mu)) t / 2)``,
    which equals the literal difference quotient but has no ``mu - omega^2``
    denominator to cancel.  At ``omega == sqrt(mu)`` it reduces to
    ``c^2 t sin(sqrt(mu) t) / (2 sqrt(mu))``.
    """

    params: ModeParams
    omega: float

    @property
    def branch(self) -> str:
        return "resonant" if self.params.is_resonant(self.omega) else "nonresonant"

    def __call__(self, t):
        if self.branch == "resonant":
            return self.resonant_branch(t)
        return self.nonresonant_branch(t)

    def nonresonant_branch(self, t):
        t = np.asarray(t, dtype=float)
        c2, mu, m, w = self.params.c**2, self.params.mu, self.params.omega_res, self.omega
        sig, eps = w + m, w - m
        scale = -c2 / (mu - w * w)
        u = 2.0 * scale * np.sin(sig * t / 2) * np.sin(eps * t / 2)
        du = scale * (
            sig * np.cos(sig * t / 2) * np.sin(eps * t / 2)
            + eps * np.sin(sig * t / 2) * np.cos(eps * t / 2)
        )
        return u, du

    def resonant_branch(self, t):
        t = np.asarray(t, dtype=float)
        c2, m, w = self.params.c**2, self.params.omega_res, self.omega
        sig, eps = w + m, w - m
        s = sinc(eps * t / 2)
        u = c2 * t / sig * np.sin(sig * t / 2) * s
        du = 0.5 * c2 * ((np.sin(w * t) + np.sin(m * t)) / sig + t * np.cos(sig * t / 2) * s)
        return u, du

    def on_grid(self, grid: TimeGrid) -> tuple[Signal, Signal]:
        u, du = self(grid.nodes)
        return Signal(grid, u), Signal(grid, du)


def solve_wave_cosine(params: ModeParams, omega: float) -> WaveModeSolution:
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega!r}")
    return WaveModeSolution(params, float(omega))


def homogeneous_wave(params: ModeParams, grid: TimeGrid, g: float, h: float):
    """Free oscillation with ``u(0) = g`` and ``u'(0) = h``."""
    m = params.omega_res
    t = grid.nodes
    u = g * np.cos(m * t) + h / m * np.sin(m * t)
    du = -g * m * np.sin(m * t) + h * np.cos(m * t)
    return u, du


def duhamel_wave(
    params: ModeParams,
    forcing: Forcing | Signal,
    grid: TimeGrid,
    g: float = 0.0,
    h: float = 0.0,
) -> tuple[Signal, Signal]:
    """Duhamel solution of the wave mode for a general forcing.

    ``u(t) = c^2/m [sin(m t) fc(t) - cos(m t) fs(t)]`` and
    ``u'(t) = c^2 [cos(m t) fc(t) + sin(m t) fs(t)]`` with ``m = sqrt(mu)``;
    nonzero initial values add the free oscillation.
    """
    m, c2 = params.omega_res, params.c**2
    pair = transforms(forcing, m, grid)
    t = grid.nodes
    sn, cs = np.sin(m * t), np.cos(m * t)
    fc, fs = pair.fc.values, pair.fs.values
    u = c2 / m * (sn * fc - cs * fs)
    du = c2 * (cs * fc + sn * fs)
    if g or h:
        u0, du0 = homogeneous_wave(params, grid, g, h)
        u, du = u + u0, du + du0
    return Signal(grid, u), Signal(grid, du)


def solve_damped(
    lam: float, rho: float, forcing: Forcing | Signal, grid: TimeGrid
) -> tuple[Signal, Signal]:
    """Solution of ``u'' + rho u' + lam u = f`` away from critical damping.

    Both regimes reduce to exponentially decaying running convolutions, so
    large ``rho T`` cannot overflow.
    """
    if not (lam > 0 and rho > 0):
        raise DomainError("lam and rho must be positive")
    disc = 4.0 * lam - rho * rho
    if disc == 0.0:
        raise UnsupportedCaseError("critical damping 4*lam == rho**2 is not supported")
    ffreq = 0.0 if isinstance(forcing, Signal) else forcing_frequency(forcing)
    grid.check_resolution(max(math.sqrt(lam), rho, ffreq))
    f = on_grid(forcing, grid)
    if disc > 0:
        k = math.sqrt(disc) / 2.0
        rate = rho / 2.0 - 1j * k
        conv = decaying_cumulative(f, grid, rate)
        u = conv.imag / k
        du = (f - rate * conv).imag / k
    else:
        kappa = math.sqrt(-disc) / 2.0
        slow, fast = rho / 2.0 - kappa, rho / 2.0 + kappa
        h_slow = decaying_cumulative(f, grid, slow)
        h_fast = decaying_cumulative(f, grid, fast)
        u = (h_slow - h_fast) / (2.0 * kappa)
        du = (fast * h_fast - slow * h_slow) / (2.0 * kappa)
    return Signal(grid, np.real(u)), Signal(grid, np.real(du))


def solve_heat(lam: float, forcing: Forcing | Signal, grid: TimeGrid) -> Signal:
    """``u(t) = int_0^t exp(-lam (t - s)) f(s) ds``, evaluated panel by panel."""
    if not lam > 0:
        raise DomainError(f"lam must be positive, got {lam!r}")
    ffreq = 0.0 if isinstance(forcing, Signal) else forcing_frequency(forcing)
    grid.check_resolution(max(lam, ffreq))
    return Signal(grid, decaying_cumulative(on_grid(forcing, grid), grid, lam))


def solve_schrodinger(lam: float, forcing: Forcing | Signal, grid: TimeGrid) -> ComplexSignal:
    """``u(t) = -i exp(i lam t) (fc(t) - i fs(t))`` with transforms at frequency ``lam``.

    The homogeneous solutions of ``i u' + lam u = 0`` are ``exp(i lam t)``, so
    the phase frequency is ``lam`` itself.
    """
    if not lam > 0:
        raise DomainError(f"lam must be positive, got {lam!r}")
    pair = transforms(forcing, lam, grid)
    t = grid.nodes
    u = -1j * np.exp(1j * lam * t) * (pair.fc.values - 1j * pair.fs.values)
    return ComplexSignal(grid, u)
