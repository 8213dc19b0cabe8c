import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from resonant_waves import (
    ComplexSampled,
    ComplexSignal,
    Cosine,
    CosineCombo,
    DampedResonant,
    DomainError,
    ModeParams,
    NormReport,
    ResolutionError,
    Sampled,
    ShapeError,
    Signal,
    TimeGrid,
    evaluate_forcing,
    sample_forcing,
)
from resonant_waves.modal import on_grid


def test_mode_params_derived_quantities():
    p = ModeParams(lam=4.0, c=3.0, T=2.0)
    assert p.mu == 36.0
    assert p.omega_res == 6.0
    assert math.isclose(p.omega_res**2, p.c**2 * p.lam, rel_tol=1e-15)


@pytest.mark.parametrize("kwargs", [dict(lam=0), dict(lam=1, c=-1), dict(lam=1, T=0), dict(lam=math.inf)])
def test_mode_params_rejects_nonpositive(kwargs):
    with pytest.raises(DomainError):
        ModeParams(**kwargs)


def test_from_sqrt_mu_round_trip():
    p = ModeParams.from_sqrt_mu(2 * math.pi, c=1.7, T=0.5)
    assert math.isclose(p.omega_res, 2 * math.pi, rel_tol=1e-15)
    assert p.c == 1.7 and p.T == 0.5


def test_resonance_window():
    p = ModeParams.from_sqrt_mu(100.0)
    assert p.is_resonant(100.0)
    assert p.is_resonant(100.0 * (1 + 0.9e-4))
    assert not p.is_resonant(100.0 * (1 + 1.1e-4))


def test_grid_nodes():
    g = TimeGrid(2.0, 8)
    t = g.nodes
    assert t[0] == 0.0 and t[-1] == 2.0
    assert np.all(np.diff(t) > 0)
    assert g.h == 0.25


@pytest.mark.parametrize("n", [3, 1, 0, 2.5])
def test_grid_rejects_bad_n(n):
    with pytest.raises(DomainError):
        TimeGrid(1.0, n)


def test_resolution_rule():
    g = TimeGrid(1.0, 100)
    g.check_resolution(2 * math.pi * 2)  # 50 points per period exactly
    with pytest.raises(ResolutionError, match="under-resolves"):
        g.check_resolution(2 * math.pi * 2.1)


@given(st.floats(0.01, 500), st.floats(0.1, 5))
def test_resolving_grid_passes_its_own_check(freq, T):
    g = TimeGrid.resolving(T, freq)
    assert g.n % 2 == 0
    g.check_resolution(freq)


def test_signal_validation():
    g = TimeGrid(1.0, 4)
    with pytest.raises(ShapeError):
        Signal(g, np.zeros(4))
    with pytest.raises(DomainError):
        Signal(g, [0, 1, np.nan, 0, 0])
    s = Signal(g, np.arange(5.0))
    with pytest.raises(ValueError):
        s.values[0] = 3.0
    assert not s.is_complex
    assert ComplexSignal(g, np.zeros(5)).is_complex


def test_cosine_evaluation():
    assert evaluate_forcing(Cosine(3.0), 0.0) == 1.0
    w = 1.3
    assert abs(evaluate_forcing(Cosine(w), math.pi / (2 * w))) < 1e-15


def test_sampled_interpolates_linearly():
    f = Sampled(TimeGrid(1.0, 2), np.array([0.0, 1.0, 2.0]))
    assert evaluate_forcing(f, 0.25) == 0.5


def test_complex_sampled_interpolates():
    g = TimeGrid(1.0, 2)
    f = ComplexSampled(g, np.array([0, 1j, 2 + 2j]))
    assert evaluate_forcing(f, 0.75) == pytest.approx(1 + 1.5j)


def test_sampled_rejects_complex_values():
    with pytest.raises(DomainError):
        Sampled(TimeGrid(1.0, 2), np.array([0, 1j, 0]))


def test_evaluation_outside_horizon():
    with pytest.raises(DomainError):
        evaluate_forcing(Sampled(TimeGrid(1.0, 2), [0.0, 1.0, 2.0]), 1.5)
    with pytest.raises(DomainError):
        evaluate_forcing(Cosine(1.0), -0.1)
    with pytest.raises(DomainError):
        evaluate_forcing(Cosine(1.0), 2.0, T=1.0)


@given(
    st.lists(st.tuples(st.floats(0.1, 50), st.floats(-3, 3)), min_size=1, max_size=6),
    st.floats(0, 1),
)
def test_combo_is_sum_of_cosines(pairs, t):
    combo = CosineCombo.from_pairs(pairs)
    expected = sum(a * math.cos(w * t) for w, a in pairs)
    assert evaluate_forcing(combo, t) == pytest.approx(expected, abs=1e-12)


def test_combo_validation():
    with pytest.raises(ShapeError):
        CosineCombo((1.0, 2.0), (1.0,))
    with pytest.raises(DomainError):
        CosineCombo((0.0,), (1.0,))
    with pytest.raises(DomainError):
        Cosine(-2.0)


def test_damped_resonant_values():
    f = DampedResonant(rho=2.0, eta=4.0, T=1.0)
    t = np.array([0.0, 0.5, 1.0])
    expected = np.exp((1.0 - t)) * np.sin(2 * t)
    np.testing.assert_allclose(sample_forcing(f, t), expected, rtol=1e-15)
    with pytest.raises(DomainError):
        DampedResonant(rho=0.0, eta=1.0)


def test_on_grid_requires_matching_signal():
    g = TimeGrid(1.0, 4)
    s = Signal(g, np.ones(5))
    with pytest.raises(ShapeError):
        on_grid(s, TimeGrid(1.0, 6))
    np.testing.assert_array_equal(on_grid(s, g), np.ones(5))


def test_norm_report_nonnegative():
    NormReport(1.0, 0.5, 0.5, 2.0, amplification=-0.2, infsup_ratio=1.1)
    with pytest.raises(DomainError):
        NormReport(-1.0, 0.5, 0.5, 2.0)
