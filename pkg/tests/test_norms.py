import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from resonant_waves import (
    Cosine,
    CosineCombo,
    DomainError,
    ModeParams,
    Signal,
    TimeGrid,
    amplification_constant,
    amplification_curve,
    amplification_limits,
    bochner_norm_sq,
    data_norm_sq,
    infsup_ratio,
    l2l2_norm_sq,
    norm_report,
    solve_wave_cosine,
    trial_norm_sq,
)
from resonant_waves.modal import ShapeError
from resonant_waves.verification import quad_amplification

RES_2PI = 2 * math.pi**2 / 3 + 0.25  # C at sqrt(mu) = 2 pi, T = 1


def trial_over_data(p, w):
    g = TimeGrid.resolving(p.T, max(p.omega_res, w), points_per_period=400, min_n=2000)
    u, _ = solve_wave_cosine(p, w).on_grid(g)
    f = Signal(g, np.cos(w * g.nodes))
    return trial_norm_sq(p, u, f) / data_norm_sq(p, f)


def test_zero_norms():
    g = TimeGrid(1.0, 10)
    zero = Signal(g, np.zeros(11))
    p = ModeParams(2.0)
    assert trial_norm_sq(p, zero, zero) == 0.0
    assert data_norm_sq(p, zero) == 0.0


def test_data_and_l2l2_values():
    g = TimeGrid(1.0, 400)
    w = 5 * math.pi / 2
    f = Signal(g, np.cos(w * g.nodes))
    assert data_norm_sq(ModeParams(1.0), f) == pytest.approx(0.5, rel=1e-9)
    assert l2l2_norm_sq(f) == pytest.approx(0.5, rel=1e-9)
    one = Signal(g, np.ones(401))
    assert data_norm_sq(ModeParams(4.0), one) == pytest.approx(0.25)
    assert l2l2_norm_sq(one) == pytest.approx(1.0)


def test_trial_norm_grid_mismatch():
    p = ModeParams(1.0)
    with pytest.raises(ShapeError):
        trial_norm_sq(p, Signal(TimeGrid(1, 4), np.zeros(5)), Signal(TimeGrid(1, 6), np.zeros(7)))


def test_resonant_value_at_two_pi():
    p = ModeParams.from_sqrt_mu(2 * math.pi)
    c = amplification_constant(p, 2 * math.pi)
    assert c == pytest.approx(RES_2PI, rel=1e-12)
    assert c == pytest.approx(quad_amplification(p, 2 * math.pi), rel=1e-10)
    assert trial_over_data(p, 2 * math.pi) - 1 == pytest.approx(RES_2PI, rel=1e-8)


@pytest.mark.parametrize("k", [1, 3, 10, 40])
def test_resonant_value_general_k(k):
    p = ModeParams.from_sqrt_mu(2 * math.pi * k)
    assert amplification_constant(p, p.omega_res) == pytest.approx(p.mu / 6 + 0.25, rel=1e-12)


@given(st.floats(1, 300), st.floats(0.1, 400))
@settings(max_examples=25, deadline=None)
def test_amplification_identity(sm, w):
    p = ModeParams.from_sqrt_mu(sm)
    assert trial_over_data(p, w) == pytest.approx(1 + amplification_constant(p, w), rel=1e-6)


@given(
    st.floats(1, 300),
    st.floats(-1.5, 1.5),
    st.floats(0.3, 3.0),
    st.floats(0.5, 2.0),
)
@settings(max_examples=40, deadline=None)
def test_near_resonance_matches_quadrature(sm, offset, T, c):
    # offsets in units of 1/T straddle both formula switches
    p = ModeParams.from_sqrt_mu(sm, c=c, T=T)
    w = sm + offset / T
    if w <= 0.05:
        return
    assert amplification_constant(p, w) == pytest.approx(quad_amplification(p, w), rel=1e-9, abs=1e-9)


@pytest.mark.parametrize("sm", [2 * math.pi, 17.3, 250.0])
def test_continuity_across_window(sm):
    # C has a nonzero slope at resonance, so the change is linear in the offset
    p = ModeParams.from_sqrt_mu(sm)
    c0 = amplification_constant(p, sm)
    for s in (-1, 1):
        d1 = amplification_constant(p, sm * (1 + s * 2e-4)) - c0
        d2 = amplification_constant(p, sm * (1 + s * 1e-4)) - c0
        assert abs(d1) <= 5 * 2e-4 * (1 + c0)
        assert d1 / d2 == pytest.approx(2.0, rel=0.2)


def test_limits():
    assert amplification_limits(ModeParams.from_sqrt_mu(2 * math.pi)) == pytest.approx((1.0, 0.0), abs=1e-15)
    lo, hi = amplification_limits(ModeParams.from_sqrt_mu(math.pi / 2))
    assert lo == pytest.approx(1 - 4 / math.pi, rel=1e-14)
    assert hi == 0.0
    p = ModeParams.from_sqrt_mu(2 * math.pi)
    assert amplification_constant(p, 1e-4) == pytest.approx(1.0, abs=1e-6)
    assert abs(amplification_constant(p, 1e4)) <= 1e-3


def test_domain_errors():
    p = ModeParams(1.0)
    with pytest.raises(DomainError):
        amplification_constant(p, 0.0)
    with pytest.raises(DomainError):
        bochner_norm_sq([(1.0, Signal(TimeGrid(1, 2), [1, 1, 1]))], 1.5)
    with pytest.raises(DomainError):
        amplification_curve(p, [2.0, 1.0])


def test_infsup_values():
    assert infsup_ratio(ModeParams.from_sqrt_mu(2 * math.pi)) == pytest.approx(
        1 / math.sqrt(1 + RES_2PI), rel=1e-12
    )
    assert infsup_ratio(ModeParams.from_sqrt_mu(2 * math.pi)) == pytest.approx(0.357377, abs=1e-6)
    assert infsup_ratio(ModeParams.from_sqrt_mu(8 * math.pi)) == pytest.approx(0.0968886, abs=1e-7)


def test_infsup_decreasing_and_small():
    r = [infsup_ratio(ModeParams.from_sqrt_mu(2 * math.pi * k)) for k in range(1, 51)]
    assert all(b < a for a, b in zip(r, r[1:]))
    assert max(r[3:]) < 0.1


def test_bochner_norms():
    g = TimeGrid(1.0, 10)
    one = Signal(g, np.ones(11))
    assert bochner_norm_sq([(9.0, one)], 1) == pytest.approx(9.0)
    assert bochner_norm_sq([(9.0, one)], -1) == pytest.approx(1 / 9)
    two = Signal(g, 2 * np.ones(11))
    assert bochner_norm_sq([(9.0, one), (4.0, two)], 0) == pytest.approx(5.0)
    with pytest.raises(ShapeError):
        bochner_norm_sq([(9.0, one), (4.0, Signal(TimeGrid(1, 2), [1, 1, 1]))], 0)


def test_curve_is_finite_and_peaks_near_resonance():
    p = ModeParams.from_sqrt_mu(20 * math.pi)
    omegas = np.linspace(0.1, 100, 4001)
    omegas = np.sort(np.append(omegas, p.omega_res))
    curve = amplification_curve(p, omegas)
    assert np.all(np.isfinite(curve.values)) and np.all(curve.values >= 0)
    # maximiser lies just below resonance, inside the main lobe
    assert -1.0 < curve.argmax - p.omega_res < 0


def test_sandwich_between_data_norms():
    p = ModeParams.from_sqrt_mu(2 * math.pi * 5)
    omegas = np.linspace(0.1, 60, 600)
    one_plus_c = amplification_curve(p, omegas).values
    assert one_plus_c.min() >= 1.0  # trial norm dominates the L2(H^-1) norm
    K = one_plus_c.max() / p.lam  # trial <= K ||f||^2 with K independent of omega
    assert K == pytest.approx((p.mu / 6 + 1.25) / p.lam, rel=0.05)


def test_norm_report_for_cosine():
    p = ModeParams.from_sqrt_mu(9.0)
    g = TimeGrid.resolving(1.0, 9.0, min_n=2000)
    rep = norm_report(p, Cosine(7.0), g)
    assert rep.trial_norm_sq == pytest.approx((1 + rep.amplification) * rep.data_norm_sq, rel=1e-8)
    assert rep.infsup_ratio == pytest.approx(1 / math.sqrt(1 + rep.amplification))
    assert rep.l2l2_norm_sq == pytest.approx(p.lam * rep.data_norm_sq)
    combo = norm_report(p, CosineCombo((1.0, 7.0), (1.0, 1.0)), g)
    assert combo.amplification is None and combo.infsup_ratio is None
