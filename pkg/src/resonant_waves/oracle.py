"""Independent reference solvers used to validate the closed forms.

Classical fourth-order Runge-Kutta on the uniform grid, with the forcing
evaluated exactly at the stage times.  Nothing in ``closed_form`` may call into
this module; tests compare the two routes against each other.

The quadrature rules are re-exported here because the tests treat them as
oracles too (e.g. for the trial norm of a closed-form solution).
"""

from __future__ import annotations

import math

import numpy as np

from .modal import (
    ComplexSignal,
    DomainError,
    Forcing,
    ModeParams,
    Signal,
    TimeGrid,
    forcing_frequency,
    sample_forcing,
)
from .quadrature import cumulative_integrate, integrate

__all__ = [
    "integrate",
    "cumulative_integrate",
    "integrate_second_order_ivp",
    "integrate_first_order_ivp",
]


def _stage_forcing(forcing: Forcing, grid: TimeGrid):
    """Forcing at nodes (even entries) and panel midpoints (odd entries)."""
    fine = np.linspace(0.0, grid.T, 2 * grid.n + 1)
    return sample_forcing(forcing, fine, T=grid.T).tolist()


def _rk4_oscillator(grid, fs, a, b, u0, v0):
    # u'' = f - a u' - b u
    h = grid.h
    hh = 0.5 * h
    u, v = u0, v0
    us = [u]
    vs = [v]
    for i in range(grid.n):
        f0 = fs[2 * i]
        fm = fs[2 * i + 1]
        f1 = fs[2 * i + 2]
        k1u = v
        k1v = f0 - a * v - b * u
        k2u = v + hh * k1v
        k2v = fm - a * k2u - b * (u + hh * k1u)
        k3u = v + hh * k2v
        k3v = fm - a * k3u - b * (u + hh * k2u)
        k4u = v + h * k3v
        k4v = f1 - a * k4u - b * (u + h * k3u)
        u = u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        v = v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        us.append(u)
        vs.append(v)
    return np.array(us), np.array(vs)


def _rk4_linear(grid, fs, rate, gain):
    # u' = gain * f - rate * u
    h = grid.h
    hh = 0.5 * h
    u = 0.0 * rate
    us = [u]
    for i in range(grid.n):
        f0 = gain * fs[2 * i]
        fm = gain * fs[2 * i + 1]
        f1 = gain * fs[2 * i + 2]
        k1 = f0 - rate * u
        k2 = fm - rate * (u + hh * k1)
        k3 = fm - rate * (u + hh * k2)
        k4 = f1 - rate * (u + h * k3)
        u = u + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        us.append(u)
    return np.array(us)


def integrate_second_order_ivp(
    params: ModeParams,
    forcing: Forcing,
    grid: TimeGrid,
    u0: float = 0.0,
    v0: float = 0.0,
) -> tuple[Signal, Signal]:
    """RK4 solution of ``u''/c^2 + lam u = f`` with ``u(0)=u0``, ``u'(0)=v0``."""
    grid.check_resolution(max(params.omega_res, forcing_frequency(forcing)))
    fs = [params.c**2 * f for f in _stage_forcing(forcing, grid)]
    u, v = _rk4_oscillator(grid, fs, 0.0, params.mu, float(u0), float(v0))
    return Signal(grid, u), Signal(grid, v)


def integrate_first_order_ivp(
    lam: float,
    forcing: Forcing,
    grid: TimeGrid,
    kind: str = "heat",
    rho: float | None = None,
):
    """RK4 reference for the first-order and damped mode equations.

    ``kind`` selects ``u' + lam u = f`` (``"heat"``), ``i u' + lam u = f``
    (``"schrodinger"``, complex state) or ``u'' + rho u' + lam u = f``
    (``"damped"``, returns ``(u, u')``).  Initial values are zero.
    """
    if not lam > 0:
        raise DomainError(f"lam must be positive, got {lam!r}")
    ffreq = forcing_frequency(forcing)
    if kind == "heat":
        grid.check_resolution(max(lam, ffreq))
        return Signal(grid, _rk4_linear(grid, _stage_forcing(forcing, grid), lam, 1.0))
    if kind == "schrodinger":
        grid.check_resolution(max(lam, ffreq))
        # u' = -i f + i lam u
        u = _rk4_linear(grid, _stage_forcing(forcing, grid), -1j * lam, -1j)
        return ComplexSignal(grid, u)
    if kind == "damped":
        if rho is None or not rho > 0:
            raise DomainError("damped kind requires rho > 0")
        grid.check_resolution(max(math.sqrt(lam), rho, ffreq))
        u, v = _rk4_oscillator(grid, _stage_forcing(forcing, grid), rho, lam, 0.0, 0.0)
        return Signal(grid, u), Signal(grid, v)
    raise DomainError(f"unknown kind {kind!r}")
