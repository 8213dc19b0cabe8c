"""Data norm of a wave mode as a quadratic form in cosine coefficients.

A forcing on ``(0, T)`` is expanded as ``f = sum_j c_j cos(w_j t)`` with
``w_j = (pi/2 + j pi) / T``, ``j = 0, 1, ...``, and
``c_j = (2/T) int_0^T f(t) cos(w_j t) dt``.  The trial norm of the solution is
then ``sum_{j,l} W(w_j, w_l) c_j c_l`` with the kernel :func:`kernel_w`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .modal import (
    DomainError,
    Forcing,
    ModeParams,
    Sampled,
    ShapeError,
    Signal,
    TimeGrid,
    forcing_frequency,
    on_grid,
)
from .norms import amplification_constant
from .quadrature import integrate

# Closer than this (in units of 1/T) to the resonance frequency, the kernel is
# evaluated through divided differences instead of the literal quotient.
_NEAR = 0.5

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(10)
_GL_NODES = 0.5 * (_GL_NODES + 1.0)
_GL_WEIGHTS = 0.5 * _GL_WEIGHTS

_FACT = [math.factorial(k) for k in range(40)]


def basis_frequencies(T: float, J: int) -> np.ndarray:
    """``w_j = (pi/2 + j pi) / T`` for ``j = 0 .. J-1``."""
    if int(J) != J or J < 1:
        raise DomainError(f"J must be a positive integer, got {J!r}")
    if not T > 0:
        raise DomainError(f"T must be positive, got {T!r}")
    return (np.pi / 2 + np.pi * np.arange(int(J))) / T


def expand_coefficients(
    forcing: Forcing | Signal, T: float, J: int, grid: TimeGrid | None = None
) -> np.ndarray:
    """Normalised cosine coefficients ``c_j = (2/T) int f cos(w_j t) dt``."""
    omegas = basis_frequencies(T, J)
    if grid is None:
        if isinstance(forcing, (Signal, Sampled)):
            grid = forcing.grid
        else:
            fastest = max(omegas[-1], forcing_frequency(forcing))
            grid = TimeGrid.resolving(T, fastest, points_per_period=400, min_n=2048)
    if not math.isclose(grid.T, T):
        raise ShapeError("grid horizon differs from T")
    f = on_grid(forcing, grid)
    t = grid.nodes
    return np.array([2.0 / T * integrate(f * np.cos(w * t), grid) for w in omegas])


# --- the kernel -------------------------------------------------------------------


def _sinc_d012(y):
    """``sinc``, ``sinc'`` and ``sinc''`` at ``y``, series-evaluated near zero."""
    y = np.asarray(y, dtype=float)
    small = np.abs(y) < 0.5
    ys = np.where(small, y, 0.0)
    s = np.zeros_like(y)
    d1 = np.zeros_like(y)
    d2 = np.zeros_like(y)
    for k in range(12):
        c = (-1) ** k / _FACT[2 * k + 1]
        s += c * ys ** (2 * k)
        if k >= 1:
            d1 += c * 2 * k * ys ** (2 * k - 1)
            d2 += c * 2 * k * (2 * k - 1) * ys ** (2 * k - 2)
    yb = np.where(small, 1.0, y)
    sb = np.sin(yb) / yb
    d1b = (yb * np.cos(yb) - np.sin(yb)) / yb**2
    d2b = -sb - 2.0 * d1b / yb
    return np.where(small, s, sb), np.where(small, d1, d1b), np.where(small, d2, d2b)


def _phi_p(p, q, T):
    # d/dp of phi(p, q) = (p^2 + q^2)/2 * (S(p - q) + S(p + q)),  S(x) = sinc(x T)
    s_m, d_m, _ = _sinc_d012((p - q) * T)
    s_p, d_p, _ = _sinc_d012((p + q) * T)
    return p * (s_m + s_p) + 0.5 * (p * p + q * q) * T * (d_m + d_p)


def _phi_pq(p, q, T):
    _, d_m, e_m = _sinc_d012((p - q) * T)
    _, d_p, e_p = _sinc_d012((p + q) * T)
    return (
        p * T * (d_p - d_m)
        + q * T * (d_m + d_p)
        + 0.5 * (p * p + q * q) * T * T * (e_p - e_m)
    )


def _divided_core(m: float, a: float, b: float, T: float, b_near: bool) -> float:
    """``K(a, b) / ((m - a)(m - b))`` where ``a`` is close to ``m``."""
    pa = a + _GL_NODES * (m - a)
    if b_near:
        qb = b + _GL_NODES * (m - b)
        P, Q = np.meshgrid(pa, qb, indexing="ij")
        vals = _phi_pq(P, Q, T)
        return float(_GL_WEIGHTS @ vals @ _GL_WEIGHTS)
    dp_m = float(_GL_WEIGHTS @ _phi_p(pa, m, T))
    dp_b = float(_GL_WEIGHTS @ _phi_p(pa, b, T))
    return (dp_m - dp_b) / (m - b)


def _is_near(params: ModeParams, w: float) -> bool:
    return params.is_resonant(w) or abs(w - params.omega_res) * params.T < _NEAR


def _kernel_literal(params: ModeParams, a, b):
    T, mu, m, lam, c2 = params.T, params.mu, params.omega_res, params.lam, params.c**2
    S = lambda x: np.sinc(x * T / np.pi)  # noqa: E731
    sp, sm = S(a + b), S(a - b)
    core = (
        mu * (1.0 + S(2 * m))
        + 0.5 * (a * a + b * b) * (sm + sp)
        - 0.5 * (mu + a * a) * (S(m - a) + S(m + a))
        - 0.5 * (mu + b * b) * (S(m - b) + S(m + b))
    )
    return T / (2 * lam) * (sp + sm) + c2 * T / ((mu - a * a) * (mu - b * b)) * core


def kernel_w(params: ModeParams, omega: float, omega_tilde: float) -> float:
    """Kernel ``W(omega, omega~)``: the trial inner product of the responses to
    ``cos(omega t)`` and ``cos(omega~ t)``."""
    if not (omega > 0 and omega_tilde > 0):
        raise DomainError("kernel frequencies must be positive")
    a, b = float(omega), float(omega_tilde)
    a_near, b_near = _is_near(params, a), _is_near(params, b)
    if not (a_near or b_near):
        return float(_kernel_literal(params, a, b))
    if not a_near:
        a, b = b, a
        a_near, b_near = b_near, a_near
    T, m, lam, c2 = params.T, params.omega_res, params.lam, params.c**2
    base = T / (2 * lam) * (math.sin((a + b) * T) / ((a + b) * T) + float(np.sinc((a - b) * T / np.pi)))
    core = _divided_core(m, a, b, T, b_near)
    return base + c2 * T * core / ((m + a) * (m + b))


# --- truncated quadratic form ----------------------------------------------------


@dataclass(frozen=True)
class FourierBlock:
    params: ModeParams
    J: int
    frequencies: np.ndarray = field(repr=False)
    matrix: np.ndarray = field(repr=False)

    def smallest_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.matrix)[0])


def assemble_block(params: ModeParams, J: int) -> FourierBlock:
    """The ``J x J`` matrix ``W(w_j, w_l)`` on the cosine basis frequencies."""
    w = basis_frequencies(params.T, J)
    A, B = np.meshgrid(w, w, indexing="ij")
    with np.errstate(divide="ignore", invalid="ignore"):
        W = _kernel_literal(params, A, B)
    near = np.array([_is_near(params, x) for x in w])
    for j in np.flatnonzero(near):
        for l in range(J):
            W[j, l] = W[l, j] = kernel_w(params, w[j], w[l])
    W = 0.5 * (W + W.T)
    W.setflags(write=False)
    return FourierBlock(params, int(J), w, W)


def quadratic_form_eval(block: FourierBlock, coeffs) -> float:
    """``sum_{j,l} W[j, l] c_j c_l``."""
    c = np.asarray(coeffs, dtype=float)
    if c.shape != (block.J,):
        raise ShapeError(f"expected {block.J} coefficients, got shape {c.shape}")
    return float(c @ block.matrix @ c)


@dataclass(frozen=True)
class DominanceReport:
    ratios: np.ndarray  # off-diagonal row mass over the diagonal entry
    violating_rows: tuple
    worst_ratio: float

    @property
    def diagonally_dominant(self) -> bool:
        return not self.violating_rows


def diagonal_dominance_audit(block) -> DominanceReport:
    """Rows whose off-diagonal absolute sum exceeds the diagonal entry."""
    W = block.matrix if isinstance(block, (FourierBlock, HeatBlock)) else np.asarray(block)
    diag = np.abs(np.diag(W))
    off = np.abs(W).sum(axis=1) - diag
    ratios = off / diag
    violating = tuple(int(j) for j in np.flatnonzero(ratios > 1.0))
    return DominanceReport(ratios, violating, float(ratios.max()) if len(ratios) else 0.0)


@dataclass(frozen=True)
class HeatBlock:
    """Heat-equation counterpart: ``T/(2 lam)`` times the identity.

    It represents ``||u'||^2/lam + lam ||u||^2 + u(T)^2``, which equals
    ``||f||^2 / lam`` for ``u' + lam u = f``, ``u(0) = 0``.
    """

    lam: float
    T: float
    J: int

    @property
    def matrix(self) -> np.ndarray:
        return self.T / (2 * self.lam) * np.eye(self.J)


def diagonal_identity_value(params: ModeParams, omega: float) -> float:
    """``(1 + C(omega)) ||cos(omega .)||^2 / lam``, the expected diagonal entry."""
    T = params.T
    norm_sq = T / 2 * (1 + math.sin(2 * omega * T) / (2 * omega * T))
    return (1.0 + amplification_constant(params, omega)) * norm_sq / params.lam
