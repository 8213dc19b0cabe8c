import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from resonant_waves import (
    ComplexSignal,
    Cosine,
    CosineCombo,
    DomainError,
    ModeParams,
    ResolutionError,
    Sampled,
    Signal,
    TimeGrid,
    UnsupportedCaseError,
    duhamel_wave,
    integrate_first_order_ivp,
    integrate_second_order_ivp,
    solve_damped,
    solve_heat,
    solve_schrodinger,
    solve_wave_cosine,
)
from resonant_waves.closed_form import WaveModeSolution


def literal(params, omega, t):
    c2, mu = params.c**2, params.mu
    return c2 * (np.cos(omega * t) - np.cos(params.omega_res * t)) / (mu - omega**2)


def test_resonant_values():
    p = ModeParams.from_sqrt_mu(2 * math.pi)
    sol = solve_wave_cosine(p, 2 * math.pi)
    assert sol.branch == "resonant"
    u, _ = sol(np.array([0.0, 0.25, 1.0]))
    assert u[0] == 0.0
    assert u[1] == pytest.approx(1 / (16 * math.pi), rel=1e-14)
    assert abs(u[2]) < 1e-15


def test_initial_values_exactly_zero():
    for w in (0.3, 7.0, 7.0 * (1 + 1e-6)):
        u, du = solve_wave_cosine(ModeParams.from_sqrt_mu(7.0, c=1.3), w)(np.array([0.0]))
        assert u[0] == 0.0 and du[0] == 0.0


def test_rejects_nonpositive_omega():
    with pytest.raises(DomainError):
        solve_wave_cosine(ModeParams(1.0), 0.0)


@given(st.floats(1, 300), st.floats(0.1, 400), st.floats(0.5, 2.0))
@settings(max_examples=60, deadline=None)
def test_nonresonant_branch_matches_literal_formula(sm, w, c):
    p = ModeParams.from_sqrt_mu(sm, c=c)
    if abs(w - sm) < 1e-2 * sm:
        return
    t = np.linspace(0, 1, 301)
    u, _ = solve_wave_cosine(p, w)(t)
    np.testing.assert_allclose(u, literal(p, w, t), atol=1e-12 * np.abs(u).max())


@pytest.mark.parametrize("sm", [1.0, 2 * math.pi, 150.0])
def test_branches_agree_at_the_window_edge(sm):
    p = ModeParams.from_sqrt_mu(sm)
    w = sm * (1 + 1e-4)
    sol = WaveModeSolution(p, w)
    t = np.linspace(0, 1, 501)
    u1, d1 = sol.nonresonant_branch(t)
    u2, d2 = sol.resonant_branch(t)
    assert np.abs(u1 - u2).max() <= 1e-7 * np.abs(u2).max()
    assert np.abs(d1 - d2).max() <= 1e-7 * np.abs(d2).max()


def test_derivative_is_consistent():
    p = ModeParams.from_sqrt_mu(9.0, c=1.4)
    for w in (3.0, 9.0, 9.0 * (1 + 5e-5)):
        sol = solve_wave_cosine(p, w)
        t = np.linspace(0.1, 0.9, 9)
        h = 1e-6
        fd = (sol(t + h)[0] - sol(t - h)[0]) / (2 * h)
        np.testing.assert_allclose(sol(t)[1], fd, rtol=1e-6, atol=1e-8)


def test_cosine_solution_vs_rk4():
    rng = np.random.default_rng(3)
    for _ in range(5):
        sm, w = rng.uniform(1, 300), rng.uniform(0.1, 400)
        p = ModeParams.from_sqrt_mu(sm)
        g = TimeGrid.resolving(1.0, max(sm, w), points_per_period=500)
        u, _ = solve_wave_cosine(p, w).on_grid(g)
        ref, _ = integrate_second_order_ivp(p, Cosine(w), g)
        assert np.abs(u.values - ref.values).max() <= 1e-6 * np.abs(u.values).max()


def test_duhamel_zero_forcing():
    p = ModeParams.from_sqrt_mu(4.0)
    u, du = duhamel_wave(p, CosineCombo((), ()), TimeGrid(1.0, 100))
    assert not u.values.any() and not du.values.any()


@given(st.floats(1, 300), st.floats(0.1, 400))
@settings(max_examples=20, deadline=None)
def test_duhamel_matches_cosine_solution(sm, w):
    p = ModeParams.from_sqrt_mu(sm)
    g = TimeGrid.resolving(1.0, max(sm, w))
    u, du = duhamel_wave(p, Cosine(w), g)
    ref_u, ref_du = solve_wave_cosine(p, w).on_grid(g)
    assert np.abs(u.values - ref_u.values).max() <= 1e-6 * max(1.0, np.abs(ref_u.values).max())
    assert np.abs(du.values - ref_du.values).max() <= 1e-6 * max(1.0, np.abs(ref_du.values).max())


def test_duhamel_combo_is_linear():
    p = ModeParams.from_sqrt_mu(12.0, c=0.8)
    combo = CosineCombo((3.0, 12.0, 20.0), (0.5, -1.0, 2.0))
    g = TimeGrid.resolving(1.0, 20.0)
    u, _ = duhamel_wave(p, combo, g)
    ref = sum(a * solve_wave_cosine(p, w)(g.nodes)[0] for w, a in zip(combo.omegas, combo.coeffs))
    assert np.abs(u.values - ref).max() <= 1e-6 * np.abs(ref).max()


def test_duhamel_with_initial_values():
    p = ModeParams.from_sqrt_mu(5.0)
    g = TimeGrid.resolving(1.0, 5.0, points_per_period=2000)
    u, du = duhamel_wave(p, Cosine(2.0), g, g=0.7, h=-1.5)
    ref, dref = integrate_second_order_ivp(p, Cosine(2.0), g, u0=0.7, v0=-1.5)
    np.testing.assert_allclose(u.values, ref.values, atol=1e-9)
    np.testing.assert_allclose(du.values, dref.values, atol=1e-8)


def test_duhamel_refuses_coarse_grid():
    with pytest.raises(ResolutionError):
        duhamel_wave(ModeParams.from_sqrt_mu(300.0), Cosine(1.0), TimeGrid(1.0, 64))


@pytest.mark.parametrize(
    "lam, rho, forcing",
    [(5.0, 2.0, Cosine(1.0)), (2.0, 6.0, CosineCombo((1e-9,), (1.0,))), (50.0, 1.0, Cosine(9.0))],
)
def test_damped_vs_rk4(lam, rho, forcing):
    g = TimeGrid(1.0, 2000)
    u, du = solve_damped(lam, rho, forcing, g)
    ref, dref = integrate_first_order_ivp(lam, forcing, g, kind="damped", rho=rho)
    assert np.abs(u.values - ref.values).max() <= 1e-6
    assert np.abs(du.values - dref.values).max() <= 1e-6


def test_damped_zero_and_critical():
    g = TimeGrid(1.0, 200)
    u, _ = solve_damped(5.0, 2.0, CosineCombo((), ()), g)
    assert not u.values.any()
    with pytest.raises(UnsupportedCaseError):
        solve_damped(4.0, 4.0, Cosine(1.0), g)


def test_heat_values():
    g = TimeGrid(1.0, 200)
    one = Sampled(g, np.ones(201))
    assert solve_heat(1.0, one, g).values[-1] == pytest.approx(1 - math.exp(-1), abs=1e-10)
    assert not solve_heat(1.0, CosineCombo((), ()), g).values.any()
    g = TimeGrid.resolving(1.0, 1e3)
    u = solve_heat(1e3, Sampled(g, np.ones(g.n + 1)), g)
    assert u.values[-1] == pytest.approx(1e-3, rel=0.01)


def test_heat_large_rate_stays_finite():
    g = TimeGrid.resolving(1.0, 2e4)
    u = solve_heat(2e4, Cosine(1.0), g)  # exp(lam T) overflows a naive evaluation
    assert np.all(np.isfinite(u.values))
    assert u.values[-1] == pytest.approx(math.cos(1.0) / 2e4, rel=1e-3)


def test_heat_vs_rk4():
    g = TimeGrid(1.0, 1000)
    combo = CosineCombo((2.0, 11.0), (1.0, -0.4))
    np.testing.assert_allclose(
        solve_heat(7.0, combo, g).values,
        integrate_first_order_ivp(7.0, combo, g, kind="heat").values,
        atol=1e-9,
    )


def test_schrodinger_resonant_modulus():
    lam = 4.0
    g = TimeGrid.resolving(1.0, lam, points_per_period=2000)
    u = solve_schrodinger(lam, ComplexSignal(g, np.exp(1j * lam * g.nodes)), g)
    np.testing.assert_allclose(np.abs(u.values), g.nodes, atol=1e-8)


def test_schrodinger_vs_rk4_and_zero():
    g = TimeGrid(1.0, 2000)
    one = Sampled(g, np.ones(2001))
    u = solve_schrodinger(3.0, one, g)
    assert u.values[0] == 0
    ref = integrate_first_order_ivp(3.0, one, g, kind="schrodinger")
    assert np.abs(u.values - ref.values).max() <= 1e-6
    assert not solve_schrodinger(3.0, CosineCombo((), ()), g).values.any()


def test_schrodinger_uses_lambda_not_its_root():
    # transforms at sqrt(lam) would miss the ODE badly
    g = TimeGrid(1.0, 4000)
    lam = 30.0
    combo = CosineCombo((5.0,), (1.0,))
    u = solve_schrodinger(lam, combo, g)
    ref = integrate_first_order_ivp(lam, combo, g, kind="schrodinger")
    assert np.abs(u.values - ref.values).max() <= 1e-8
