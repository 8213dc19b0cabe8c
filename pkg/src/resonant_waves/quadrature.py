"""Composite Simpson quadrature on uniform grids.

Every integral in the package goes through these three functions, so the
closed-form evaluators, the norms and the balance laws share one error budget.
"""

from __future__ import annotations

import numpy as np
from scipy.signal import lfilter

from .modal import ShapeError, Signal, TimeGrid


def _values(signal_or_values, grid: TimeGrid | None):
    if isinstance(signal_or_values, Signal):
        return signal_or_values.values, signal_or_values.grid
    if grid is None:
        raise TypeError("a TimeGrid is required when passing raw values")
    values = np.asarray(signal_or_values)
    if values.shape != (grid.n + 1,):
        raise ShapeError(f"expected {grid.n + 1} values, got shape {values.shape}")
    return values, grid


def integrate(signal, grid: TimeGrid | None = None):
    """Composite Simpson approximation of the integral over ``[0, T]``."""
    y, grid = _values(signal, grid)
    return grid.h / 3.0 * (y[0] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-1:2].sum() + y[-1])


def cumulative_integrate(signal, grid: TimeGrid | None = None):
    """Running integrals ``F(t_i)`` with ``F(0) = 0``.

    Even nodes carry the composite Simpson value of the prefix.  An odd node
    adds the integral over its half panel of the parabola through the panel's
    three nodes, which keeps the local error at fourth order.
    """
    y, grid = _values(signal, grid)
    h = grid.h
    y0, y1, y2 = y[0:-1:2], y[1::2], y[2::2]
    panels = h / 3.0 * (y0 + 4.0 * y1 + y2)
    out = np.empty_like(y)
    out[0] = 0.0
    out[2::2] = np.cumsum(panels)
    out[1::2] = out[0:-1:2] + h / 12.0 * (5.0 * y0 + 8.0 * y1 - y2)
    if isinstance(signal, Signal):
        return Signal(grid, out)
    return out


def decaying_cumulative(values, grid: TimeGrid, rate):
    """Running convolution ``G(t_i) = int_0^{t_i} exp(-rate (t_i - s)) g(s) ds``.

    ``rate`` may be complex with nonnegative real part.  The kernel is
    evaluated relative to the end of each panel, so nothing grows like
    ``exp(rate t)`` and large rates cannot overflow.
    """
    g = np.asarray(values)
    if g.shape != (grid.n + 1,):
        raise ShapeError(f"expected {grid.n + 1} values, got shape {g.shape}")
    h = grid.h
    r1 = np.exp(-rate * h)
    r2 = r1 * r1
    g0, g1, g2 = g[0:-1:2], g[1::2], g[2::2]
    panels = h / 3.0 * (r2 * g0 + 4.0 * r1 * g1 + g2)
    dtype = np.result_type(g, np.asarray(rate), float)
    out = np.empty(g.shape, dtype=dtype)
    out[0] = 0.0
    out[2::2] = lfilter([1.0], [1.0, -r2], panels)
    out[1::2] = r1 * out[0:-1:2] + h / 12.0 * (5.0 * r1 * g0 + 8.0 * g1 - g2 / r1)
    return out


def simpson_weights(n: int, h: float) -> np.ndarray:
    """Composite Simpson weights for ``n + 1`` equispaced nodes (``n`` even)."""
    if n < 2 or n % 2:
        raise ValueError(f"Simpson weights need an even number of intervals, got {n}")
    w = np.full(n + 1, 2.0)
    w[1::2] = 4.0
    w[0] = w[-1] = 1.0
    return w * (h / 3.0)
