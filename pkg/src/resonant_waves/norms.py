"""Trial and data norms of a wave mode and the amplification constant.

For a mode with eigenvalue ``lam``, speed ``c`` and ``mu = c^2 lam``:

* trial norm   ``||u||_U^2  = lam ||u||^2 + ||u''||^2 / (c^4 lam)``
* data norm    ``||f||_V*^2 = ||f||^2 / lam``

and for ``f = cos(omega t)`` the two are tied by
``||u||_U^2 = (1 + C(omega)) ||f||_V*^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .modal import (
    DELTA_RES,
    Cosine,
    DomainError,
    Forcing,
    ModeParams,
    NormReport,
    ShapeError,
    Signal,
    TimeGrid,
    on_grid,
)
from .quadrature import integrate

# Within this distance (in units of 1/T) of resonance the literal formula loses
# digits to cancellation, so the rearranged form takes over.
_NEAR = 1.0


def _sinc(x: float) -> float:
    return math.sin(x) / x if x != 0.0 else 1.0


def _one_minus_sinc_over_sq(y: float) -> float:
    """``(1 - sinc(y)) / y^2`` without cancellation for small ``y``."""
    if abs(y) < 0.5:
        y2 = y * y
        term, total = 1.0 / 6.0, 0.0
        k = 1
        while abs(term) > 1e-18:
            total += term
            # next term of sum_{k>=1} (-1)^{k+1} y^{2k-2} / (2k+1)!
            term *= -y2 / ((2 * k + 2) * (2 * k + 3))
            k += 1
        return total
    return (1.0 - math.sin(y) / y) / (y * y)


# --- norms of sampled functions ----------------------------------------------------


def l2_norm_sq(signal: Signal) -> float:
    return float(np.real(integrate(np.abs(signal.values) ** 2, signal.grid)))


def data_norm_sq(params: ModeParams, f: Signal) -> float:
    """``||f||^2 / lam``, the restriction of the ``L2(H^-1)`` norm to the mode."""
    return l2_norm_sq(f) / params.lam


def l2l2_norm_sq(f: Signal) -> float:
    """``||f||^2`` on ``(0, T)``, the restriction of the ``L2(L2)`` norm."""
    return l2_norm_sq(f)


def trial_norm_sq(params: ModeParams, u: Signal, forcing: Forcing | Signal) -> float:
    """Trial norm of a mode solution.

    ``u''`` is never differentiated numerically; it is recovered from the
    equation as ``c^2 (f - lam u)``.
    """
    if isinstance(forcing, Signal) and forcing.grid != u.grid:
        raise ShapeError("u and forcing samples live on different grids")
    f = on_grid(forcing, u.grid)
    lam = params.lam
    residual = f - lam * u.values
    return float(
        lam * integrate(u.values**2, u.grid) + integrate(residual**2, u.grid) / lam
    )


def bochner_norm_sq(modes, s: float) -> float:
    """``sum_k lam_k^s ||w_k||^2`` for modal coefficient signals ``(lam_k, w_k)``."""
    if not -1.0 <= s <= 1.0:
        raise DomainError(f"smoothness index s must lie in [-1, 1], got {s!r}")
    modes = list(modes)
    grids = {w.grid for _, w in modes}
    if len(grids) > 1:
        raise ShapeError("modal coefficients must share one time grid")
    total = 0.0
    for lam_k, w in modes:
        if not lam_k > 0:
            raise DomainError("eigenvalues must be positive")
        total += lam_k**s * l2_norm_sq(w)
    return total


# --- amplification constant ----------------------------------------------------------


def _amplification_resonant(params: ModeParams) -> float:
    # Exact value at omega = sqrt(mu); the limit of the non-resonant formula.
    mu, T = params.mu, params.T
    x = 2.0 * params.omega_res * T
    s = _sinc(x)
    return mu / (1.0 + s) * (
        T * T / 6.0 - T * T / 2.0 * s + math.cos(x) / (4.0 * mu) - s / (4.0 * mu)
    )


def _amplification_nonresonant(params: ModeParams, omega: float) -> float:
    mu, m, T = params.mu, params.omega_res, params.T
    w2 = omega * omega
    bracket = (
        1.0
        - _sinc((m + omega) * T)
        - _sinc((m - omega) * T)
        + (mu * _sinc(2 * m * T) + w2 * _sinc(2 * omega * T)) / (mu + w2)
    )
    return 2.0 * mu / (1.0 + _sinc(2 * omega * T)) * (mu + w2) / (mu - w2) ** 2 * bracket


def _amplification_near_resonance(params: ModeParams, omega: float) -> float:
    # Same quantity with the (mu - omega^2)^2 division carried out analytically.
    mu, m, T = params.mu, params.omega_res, params.T
    sig = omega + m
    X, Y = sig * T, (omega - m) * T
    q = _one_minus_sinc_over_sq(Y)
    sx, cx = math.sin(X), math.cos(X)
    half = _sinc(Y / 2)
    second = (sx - X * cx * _sinc(Y) - 0.5 * X * X * sx * half * half) / (X * (X * X - Y * Y))
    first = (X * math.cos(X + Y / 2) * half - sx) / (X * (X + Y))
    return (
        2.0
        * mu
        / (1.0 + _sinc(2 * omega * T))
        * (2.0 * mu * T * T / sig**2 * (q + second) + T / sig * (Y * q + first))
    )


def amplification_constant(params: ModeParams, omega: float) -> float:
    """``C(omega)`` with ``||u_omega||_U^2 = (1 + C) ||cos(omega .)||_V*^2``."""
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega!r}")
    if omega == params.omega_res:
        return _amplification_resonant(params)
    if params.is_resonant(omega) or abs(omega - params.omega_res) * params.T < _NEAR:
        return _amplification_near_resonance(params, omega)
    return _amplification_nonresonant(params, omega)


def amplification_limits(params: ModeParams) -> tuple[float, float]:
    """Limits of ``C(omega)`` for ``omega -> 0`` and ``omega -> infinity``."""
    x = params.omega_res * params.T
    return 1.0 - 2.0 * _sinc(x) + _sinc(2 * x), 0.0


def infsup_ratio(params: ModeParams) -> float:
    """``||f||_V* / ||u||_U`` for the resonant cosine source, ``1/sqrt(1 + C)``.

    This bounds the modal inf-sup quotient from above.
    """
    return 1.0 / math.sqrt(1.0 + amplification_constant(params, params.omega_res))


@dataclass(frozen=True)
class AmplificationCurve:
    params: ModeParams
    omegas: np.ndarray
    values: np.ndarray  # 1 + C at each omega

    @property
    def argmax(self) -> float:
        return float(self.omegas[int(np.argmax(self.values))])


def amplification_curve(params: ModeParams, omegas) -> AmplificationCurve:
    omegas = np.asarray(omegas, dtype=float)
    if omegas.ndim != 1 or np.any(omegas <= 0) or np.any(np.diff(omegas) <= 0):
        raise DomainError("omega grid must be positive and strictly increasing")
    values = np.array([1.0 + amplification_constant(params, w) for w in omegas])
    return AmplificationCurve(params, omegas, values)


def norm_report(params: ModeParams, forcing: Forcing, grid: TimeGrid) -> NormReport:
    """All norms of one (mode, forcing) pair, solved through Duhamel's formula."""
    from .closed_form import duhamel_wave
    from .energy import resonance_aware_data_norm_sq

    u, _ = duhamel_wave(params, forcing, grid)
    f = Signal(grid, on_grid(forcing, grid))
    amplification = ratio = None
    if isinstance(forcing, Cosine):
        amplification = amplification_constant(params, forcing.omega)
        ratio = 1.0 / math.sqrt(1.0 + amplification)
    return NormReport(
        trial_norm_sq=trial_norm_sq(params, u, f),
        data_norm_sq=data_norm_sq(params, f),
        l2l2_norm_sq=l2l2_norm_sq(f),
        energy_data_norm_sq=resonance_aware_data_norm_sq(params, forcing, grid),
        amplification=amplification,
        infsup_ratio=ratio,
    )
