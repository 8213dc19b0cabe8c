"""Shared domain types for single-mode analysis of the wave equation.

A mode is described by the Laplacian eigenvalue ``lam``, the wave speed ``c``
and the time horizon ``T``.  Source terms are represented by the small family
of :class:`Forcing` variants below; sampled functions on a uniform time grid
are carried around as :class:`Signal` objects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

#: Relative half-width of the window around the resonance frequency inside
#: which cancellation-free formulas replace the literal non-resonant ones.
DELTA_RES = 1e-4

#: Minimum number of grid points per period of the fastest oscillation.
MIN_POINTS_PER_PERIOD = 50


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class ResolutionError(ValueError):
    """Time grid too coarse for the oscillation it has to carry."""


class ShapeError(ValueError):
    """Signals or coefficient arrays of incompatible shape."""


class UnsupportedCaseError(ValueError):
    """Parameter combination deliberately not handled (e.g. critical damping)."""


@dataclass(frozen=True)
class ModeParams:
    """Constants of one spectral mode: eigenvalue, wave speed and horizon."""

    lam: float
    c: float = 1.0
    T: float = 1.0

    def __post_init__(self):
        for name in ("lam", "c", "T"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be finite and positive, got {value!r}")

    @classmethod
    def from_sqrt_mu(cls, sqrt_mu: float, c: float = 1.0, T: float = 1.0) -> "ModeParams":
        """Build the mode whose resonance frequency is ``sqrt_mu``."""
        if not sqrt_mu > 0:
            raise DomainError(f"sqrt_mu must be positive, got {sqrt_mu!r}")
        return cls(lam=(sqrt_mu / c) ** 2, c=c, T=T)

    @property
    def mu(self) -> float:
        return self.c**2 * self.lam

    @property
    def omega_res(self) -> float:
        return math.sqrt(self.mu)

    def is_resonant(self, omega: float) -> bool:
        return abs(omega - self.omega_res) <= DELTA_RES * self.omega_res


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid ``t_i = i*T/n`` on ``[0, T]`` with an even number of intervals."""

    T: float
    n: int

    def __post_init__(self):
        if not (math.isfinite(self.T) and self.T > 0):
            raise DomainError(f"T must be positive, got {self.T!r}")
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"n must be an integer >= 2, got {self.n!r}")
        if self.n % 2:
            raise DomainError(f"n must be even for Simpson quadrature, got {self.n}")
        object.__setattr__(self, "n", int(self.n))

    @classmethod
    def resolving(
        cls,
        T: float,
        frequency: float,
        points_per_period: int = 400,
        min_n: int = 64,
    ) -> "TimeGrid":
        """Smallest even grid with ``points_per_period`` nodes per period of ``frequency``."""
        n = math.ceil(points_per_period * frequency * T / (2 * math.pi))
        n = max(n, min_n)
        n += n % 2
        return cls(T, n)

    @property
    def h(self) -> float:
        return self.T / self.n

    @property
    def nodes(self) -> np.ndarray:
        t = np.arange(self.n + 1) * self.h
        t[-1] = self.T
        return t

    def check_resolution(self, frequency: float) -> None:
        """Raise :class:`ResolutionError` unless the grid resolves ``frequency``."""
        required = MIN_POINTS_PER_PERIOD * frequency * self.T / (2 * math.pi)
        if self.n < required:
            raise ResolutionError(
                f"grid with n={self.n} on [0, {self.T}] under-resolves frequency "
                f"{frequency:.6g}: need n >= {math.ceil(required)} "
                f"({MIN_POINTS_PER_PERIOD} points per period)"
            )


@dataclass(frozen=True)
class Signal:
    """Real or complex values on the nodes of a :class:`TimeGrid`."""

    grid: TimeGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values)
        if not np.iscomplexobj(values):
            values = values.astype(float)
        if values.shape != (self.grid.n + 1,):
            raise ShapeError(
                f"expected {self.grid.n + 1} values for grid n={self.grid.n}, got shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise DomainError("signal values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def t(self) -> np.ndarray:
        return self.grid.nodes

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.values)

    def __len__(self):
        return len(self.values)


class ComplexSignal(Signal):
    """Signal whose values are always stored as complex numbers."""

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=complex))
        super().__post_init__()


# --- forcings -----------------------------------------------------------------


@dataclass(frozen=True)
class Cosine:
    """``f(t) = cos(omega t)``."""

    omega: float

    def __post_init__(self):
        if not self.omega > 0:
            raise DomainError(f"omega must be positive, got {self.omega!r}")


@dataclass(frozen=True)
class CosineCombo:
    """Finite combination ``sum_j coeff_j cos(omega_j t)``."""

    omegas: tuple
    coeffs: tuple

    def __post_init__(self):
        omegas = tuple(float(w) for w in self.omegas)
        coeffs = tuple(float(a) for a in self.coeffs)
        if len(omegas) != len(coeffs):
            raise ShapeError("omegas and coeffs must have the same length")
        if any(not w > 0 for w in omegas):
            raise DomainError("all frequencies must be positive")
        object.__setattr__(self, "omegas", omegas)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_pairs(cls, pairs) -> "CosineCombo":
        pairs = list(pairs)
        return cls(tuple(w for w, _ in pairs), tuple(a for _, a in pairs))


@dataclass(frozen=True)
class Sampled:
    """Real samples on a grid, read back as the piecewise-linear interpolant."""

    grid: TimeGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        sig = Signal(self.grid, self.values)
        if sig.is_complex:
            raise DomainError("Sampled forcing must be real; use ComplexSampled")
        object.__setattr__(self, "values", sig.values)

    @classmethod
    def from_signal(cls, signal: Signal) -> "Sampled":
        return cls(signal.grid, signal.values)


@dataclass(frozen=True)
class ComplexSampled:
    """Complex samples on a grid, read back as the piecewise-linear interpolant."""

    grid: TimeGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "values", ComplexSignal(self.grid, self.values).values)


@dataclass(frozen=True)
class DampedResonant:
    """``f(t) = exp(rho (T - t) / 2) sin(sqrt(eta) t)``, resonant for the damped mode."""

    rho: float
    eta: float
    T: float = 1.0

    def __post_init__(self):
        if not (self.rho > 0 and self.eta > 0 and self.T > 0):
            raise DomainError("rho, eta and T must be positive")


Forcing = Union[Cosine, CosineCombo, Sampled, ComplexSampled, DampedResonant]


def _horizon(forcing: Forcing) -> Optional[float]:
    if isinstance(forcing, (Sampled, ComplexSampled)):
        return forcing.grid.T
    if isinstance(forcing, DampedResonant):
        return forcing.T
    return None


def sample_forcing(forcing: Forcing, t, T: Optional[float] = None) -> np.ndarray:
    """Vectorised :func:`evaluate_forcing` over an array of times."""
    t = np.asarray(t, dtype=float)
    horizon = _horizon(forcing)
    if horizon is None:
        horizon = T
    if np.any(t < 0) or (horizon is not None and np.any(t > horizon * (1 + 1e-12))):
        raise DomainError(f"evaluation time outside [0, {horizon}]")

    if isinstance(forcing, Cosine):
        return np.cos(forcing.omega * t)
    if isinstance(forcing, CosineCombo):
        out = np.zeros_like(t)
        for w, a in zip(forcing.omegas, forcing.coeffs):
            out = out + a * np.cos(w * t)
        return out
    if isinstance(forcing, Sampled):
        return np.interp(t, forcing.grid.nodes, forcing.values)
    if isinstance(forcing, ComplexSampled):
        nodes = forcing.grid.nodes
        return np.interp(t, nodes, forcing.values.real) + 1j * np.interp(
            t, nodes, forcing.values.imag
        )
    if isinstance(forcing, DampedResonant):
        return np.exp(forcing.rho * (forcing.T - t) / 2) * np.sin(math.sqrt(forcing.eta) * t)
    raise TypeError(f"unknown forcing type {type(forcing).__name__}")


def evaluate_forcing(forcing: Forcing, t: float, T: Optional[float] = None):
    """Value ``f(t)`` of a forcing; sampled variants interpolate linearly."""
    value = sample_forcing(forcing, np.array([t]), T=T)[0]
    return complex(value) if np.iscomplexobj(value) else float(value)


def on_grid(forcing: Union[Forcing, Signal], grid: TimeGrid) -> np.ndarray:
    """Forcing values at the nodes of ``grid`` (a Signal must already live there)."""
    if isinstance(forcing, Signal):
        if forcing.grid != grid:
            raise ShapeError("signal grid differs from the requested grid")
        return forcing.values
    if isinstance(forcing, (Sampled, ComplexSampled)) and forcing.grid == grid:
        return forcing.values
    return sample_forcing(forcing, grid.nodes, T=grid.T)


def forcing_frequency(forcing: Forcing) -> float:
    """Fastest oscillation frequency carried by the forcing (0 when unknown)."""
    if isinstance(forcing, Cosine):
        return forcing.omega
    if isinstance(forcing, CosineCombo):
        return max(forcing.omegas, default=0.0)
    if isinstance(forcing, DampedResonant):
        return math.sqrt(forcing.eta)
    return 0.0


@dataclass(frozen=True)
class NormReport:
    """Norms of one (mode, forcing) pair."""

    trial_norm_sq: float
    data_norm_sq: float
    l2l2_norm_sq: float
    energy_data_norm_sq: float
    amplification: Optional[float] = None
    infsup_ratio: Optional[float] = None

    def __post_init__(self):
        for name in ("trial_norm_sq", "data_norm_sq", "l2l2_norm_sq", "energy_data_norm_sq"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be nonnegative")
