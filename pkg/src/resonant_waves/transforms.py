"""Running cosine/sine transforms of a forcing.

``fc(t) = int_0^t f(s) cos(w s) ds`` and ``fs(t) = int_0^t f(s) sin(w s) ds``.
The wave, damped and Schroedinger variants only differ in the phase
frequency ``w`` and in a weighting applied to ``f`` beforehand.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .modal import DomainError, Forcing, Signal, TimeGrid, forcing_frequency, on_grid
from .quadrature import cumulative_integrate


@dataclass(frozen=True)
class TransformPair:
    fc: Signal
    fs: Signal
    frequency: float

    @property
    def grid(self) -> TimeGrid:
        return self.fc.grid


def transform_values(values, frequency: float, grid: TimeGrid) -> TransformPair:
    """Transforms of forcing samples already on ``grid``."""
    if not frequency > 0:
        raise DomainError(f"transform frequency must be positive, got {frequency!r}")
    t = grid.nodes
    values = np.asarray(values)
    fc = cumulative_integrate(values * np.cos(frequency * t), grid)
    fs = cumulative_integrate(values * np.sin(frequency * t), grid)
    return TransformPair(Signal(grid, fc), Signal(grid, fs), float(frequency))


def transforms(forcing: Forcing | Signal, frequency: float, grid: TimeGrid) -> TransformPair:
    """Cumulative cosine/sine transforms of ``forcing`` at phase ``frequency``."""
    ffreq = 0.0 if isinstance(forcing, Signal) else forcing_frequency(forcing)
    grid.check_resolution(max(frequency, ffreq))
    return transform_values(on_grid(forcing, grid), frequency, grid)
