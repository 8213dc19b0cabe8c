"""Self-checks behind ``resonant-waves verify``.

Each suite compares library output against an independent reference (RK4,
analytic solutions, adaptive quadrature or exact decompositions) and reports
one :class:`Check` per comparison.  All tolerances live in :data:`TOLERANCES`.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from . import closed_form, energy, fourier, norms, oracle, spectral
from .modal import (
    ComplexSignal,
    Cosine,
    CosineCombo,
    DampedResonant,
    ModeParams,
    Signal,
    TimeGrid,
)

TOLERANCES = {
    "rk4_sup_rel": 1e-6,
    "rk4_runtime_s": 10.0,
    "amplification_rel": 1e-6,
    "resonant_value_rel": 1e-8,
    "figure2_argmax_lobe": 1.0,
    "figure2_growth_rel": 0.05,
    "small_omega_rel": 0.10,
    "infsup_small": 0.1,
    "balance_rel": 1e-8,
    "rotation_abs": 1e-14,
    "norm_equiv_low": 1.0 / 3.0,
    "norm_equiv_high": 3.0,
    "fourier_form_rel": 1e-6,
    "fourier_diag_rel": 1e-10,
    "heat_balance_rel": 1e-8,
    "manufactured_sup": 1e-6,
    "other_modes_sup": 1e-8,
    "field_ratio_rel": 1e-8,
}

SUITES = ("closed-form", "balances", "fourier", "heat", "infsup")


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tolerance: str  # human-readable acceptance condition
    passed: bool

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.name}: measured {self.value:.6g} (require {self.tolerance})"


@dataclass
class SuiteResult:
    name: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)  # tables and extra report lines

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def at_most(self, name: str, value: float, tol: float) -> None:
        self.checks.append(Check(name, float(value), f"<= {tol:g}", bool(value <= tol)))

    def within(self, name: str, value: float, lo: float, hi: float) -> None:
        self.checks.append(
            Check(name, float(value), f"in [{lo:g}, {hi:g}]", bool(lo <= value <= hi))
        )

    def holds(self, name: str, value: float, condition: str, ok: bool) -> None:
        self.checks.append(Check(name, float(value), condition, bool(ok)))

    def report(self) -> str:
        lines = [f"== suite {self.name} =="]
        lines += self.notes
        lines += [c.line() for c in self.checks]
        return "\n".join(lines)


# --- shared references --------------------------------------------------------------


def random_draws(seed: int = 20240611, count: int = 20):
    """``(sqrt_mu, omega)`` pairs; the last one sits inside the resonance window."""
    rng = np.random.default_rng(seed)
    draws = [(rng.uniform(1, 300), rng.uniform(0.1, 400)) for _ in range(count)]
    sm = draws[-1][0]
    draws[-1] = (sm, sm * (1 + 0.3 * 1e-4))
    return draws


def superposed_solution(params: ModeParams, combo: CosineCombo, grid: TimeGrid):
    """Exact response to a cosine combination, summed from the cosine solutions."""
    u = np.zeros(grid.n + 1)
    du = np.zeros(grid.n + 1)
    for w, a in zip(combo.omegas, combo.coeffs):
        uw, dw = closed_form.solve_wave_cosine(params, w)(grid.nodes)
        u += a * uw
        du += a * dw
    return Signal(grid, u), Signal(grid, du)


def random_combo(rng, max_freq: float, terms: int = 5) -> CosineCombo:
    return CosineCombo(
        tuple(rng.uniform(0.1, max_freq, terms)), tuple(rng.normal(size=terms))
    )


def quad_amplification(params: ModeParams, omega: float) -> float:
    """``C(omega)`` from adaptive quadrature of the analytic solution."""
    sol = closed_form.solve_wave_cosine(params, omega)
    lam, T = params.lam, params.T

    def trial(t):
        u = float(sol(np.array([t]))[0][0])
        return lam * u * u + (math.cos(omega * t) - lam * u) ** 2 / lam

    limit = int(50 + 4 * max(omega, params.omega_res) * T)
    num, _ = quad(trial, 0, T, limit=limit, epsabs=0, epsrel=1e-13)
    den, _ = quad(lambda t: math.cos(omega * t) ** 2 / lam, 0, T, limit=limit, epsabs=0, epsrel=1e-13)
    return num / den - 1.0


def resonant_params(k: int, T: float = 1.0) -> ModeParams:
    return ModeParams.from_sqrt_mu(2 * math.pi * k, 1.0, T)


# --- suites -------------------------------------------------------------------------


def suite_closed_form() -> SuiteResult:
    res = SuiteResult("closed-form")
    draws = random_draws()

    start = time.perf_counter()
    worst = 0.0
    for sm, w in draws:
        p = ModeParams.from_sqrt_mu(sm, 1.0, 1.0)
        grid = TimeGrid.resolving(1.0, max(sm, w), points_per_period=500)
        u, _ = closed_form.solve_wave_cosine(p, w).on_grid(grid)
        ref, _ = oracle.integrate_second_order_ivp(p, Cosine(w), grid)
        worst = max(worst, np.abs(u.values - ref.values).max() / np.abs(u.values).max())
    elapsed = time.perf_counter() - start
    res.at_most("cosine solution vs RK4, sup-norm / max|u|", worst, TOLERANCES["rk4_sup_rel"])
    res.at_most("RK4 comparison runtime [s]", elapsed, TOLERANCES["rk4_runtime_s"])

    worst = 0.0
    for sm, w in draws:
        p = ModeParams.from_sqrt_mu(sm, 1.0, 1.0)
        grid = TimeGrid.resolving(1.0, max(sm, w))
        u, _ = closed_form.solve_wave_cosine(p, w).on_grid(grid)
        f = Signal(grid, np.cos(w * grid.nodes))
        lhs = norms.trial_norm_sq(p, u, f)
        rhs = (1 + norms.amplification_constant(p, w)) * norms.data_norm_sq(p, f)
        worst = max(worst, abs(lhs / rhs - 1))
    res.at_most("trial norm = (1 + C) data norm, relative", worst, TOLERANCES["amplification_rel"])

    p = resonant_params(1)
    c_res = norms.amplification_constant(p, p.omega_res)
    ref = quad_amplification(p, p.omega_res)
    res.at_most(
        "C at resonance (sqrt(mu) = 2 pi) vs adaptive quadrature, relative",
        abs(c_res / ref - 1),
        TOLERANCES["resonant_value_rel"],
    )
    res.notes.append(f"C(2 pi) = {c_res:.12g}; closed form 2 pi^2/3 + 1/4 = {2 * math.pi**2 / 3 + 0.25:.12g}")

    basis = spectral.build_basis(1.0, 4)
    grid = TimeGrid(1.0, 2000)
    samples = spectral.sample_field(
        lambda x, t: (2 + np.pi**2 * t**2) * np.sin(np.pi * x), basis, grid, 200
    )
    fld = spectral.solve_ibvp(basis, spectral.project_source(samples, basis, grid))
    err = np.abs(fld.coeffs[0].values - grid.nodes**2 / math.sqrt(2)).max()
    rest = max(np.abs(c.values).max() for c in fld.coeffs[1:])
    res.at_most("manufactured u = t^2 sin(pi x), mode 1 sup error", err, TOLERANCES["manufactured_sup"])
    res.at_most("manufactured solution, other modes sup", rest, TOLERANCES["other_modes_sup"])
    return res


def suite_balances() -> SuiteResult:
    res = SuiteResult("balances")
    rng = np.random.default_rng(7)
    tol = TOLERANCES["balance_rel"]

    worst = 0.0
    for _ in range(10):
        sm = rng.uniform(1, 100)
        p = ModeParams.from_sqrt_mu(sm, rng.uniform(0.5, 2.0), 1.0)
        combo = random_combo(rng, 2 * p.omega_res)
        grid = TimeGrid.resolving(1.0, max(p.omega_res, max(combo.omegas)))
        u, du = superposed_solution(p, combo, grid)
        pair = energy.transforms(combo, p.omega_res, grid)
        worst = max(worst, energy.wave_balance_residual(p, u, du, pair).max_rel)
    res.at_most("wave balance, 10 band-limited forcings", worst, tol)

    p = ModeParams.from_sqrt_mu(17.0, 1.0, 1.0)
    grid = TimeGrid.resolving(1.0, p.omega_res)
    u, du = closed_form.solve_wave_cosine(p, p.omega_res).on_grid(grid)
    pair = energy.transforms(Cosine(p.omega_res), p.omega_res, grid)
    res.at_most("wave balance, f = cos(sqrt(mu) t)", energy.wave_balance_residual(p, u, du, pair).max_rel, tol)

    t = np.linspace(0, 10, 1001)
    R = energy.rotation_matrix(3.7, t)
    gap = np.abs(np.einsum("...ji,...jk->...ik", R, R) - np.eye(2)).max()
    res.at_most("rotation matrix orthogonality", gap, TOLERANCES["rotation_abs"])

    worst = 0.0
    for g0, h0 in [(1.0, 0.0), (0.3, -2.0)]:
        combo = random_combo(rng, 30.0)
        grid = TimeGrid.resolving(1.0, 30.0)
        base_u, base_du = superposed_solution(p, combo, grid)
        hu, hdu = closed_form.homogeneous_wave(p, grid, g0, h0)
        sol = (Signal(grid, base_u.values + hu), Signal(grid, base_du.values + hdu))
        rep = energy.balance_with_initial_values(p, g0, h0, combo, grid, solution=sol)
        worst = max(worst, rep.max_rel)
    res.at_most("wave balance with initial values", worst, tol)

    lo, hi = math.inf, 0.0
    for e in range(7):
        lam = 10.0**e
        p = ModeParams(lam, 1.0, 1.0)
        for _ in range(3):
            combo = random_combo(rng, 2 * p.omega_res, terms=4)
            grid = TimeGrid.resolving(1.0, max(p.omega_res, max(combo.omegas)))
            r = energy.energy_norm_ratio(p, combo, grid)
            lo, hi = min(lo, r), max(hi, r)
        grid = TimeGrid.resolving(1.0, p.omega_res)
        r = energy.energy_norm_ratio(p, Cosine(p.omega_res), grid)
        lo, hi = min(lo, r), max(hi, r)
    res.notes.append(f"energy norm ratio range over lam = 1e0..1e6: [{lo:.4f}, {hi:.4f}]")
    res.within("energy norm ratio, min", lo, TOLERANCES["norm_equiv_low"], TOLERANCES["norm_equiv_high"])
    res.within("energy norm ratio, max", hi, TOLERANCES["norm_equiv_low"], TOLERANCES["norm_equiv_high"])

    worst = 0.0
    for lam in (3.0, 25.0):
        combo = random_combo(rng, 20.0)
        grid = TimeGrid.resolving(1.0, max(lam, 20.0), points_per_period=2000)
        u = oracle.integrate_first_order_ivp(lam, combo, grid, kind="schrodinger")
        worst = max(worst, energy.schrodinger_balance_residual(lam, u, combo, grid).max_rel)
    res.at_most("Schroedinger balance (RK4 solution)", worst, tol)

    lam = 9.0
    grid = TimeGrid.resolving(1.0, lam, points_per_period=2000)
    f = ComplexSignal(grid, np.exp(1j * lam * grid.nodes))
    u = closed_form.solve_schrodinger(lam, f, grid)
    gap = np.abs(np.abs(u.values) - grid.nodes).max()
    res.at_most("resonant Schroedinger |u(t)| = t", gap, tol)

    worst = 0.0
    for lam, rho in [(40.0, 2.0), (10.0, 5.0)]:
        eta = lam - rho * rho / 4
        for forcing in (DampedResonant(rho, eta), random_combo(rng, 15.0)):
            fmax = max(math.sqrt(eta), rho, 15.0)
            grid = TimeGrid.resolving(1.0, fmax, points_per_period=2000)
            u, du = oracle.integrate_first_order_ivp(lam, forcing, grid, kind="damped", rho=rho)
            worst = max(worst, energy.damped_balance_residual(lam, rho, u, du, forcing, grid).max_rel)
    res.at_most("damped balance with shifted velocity (RK4 solution)", worst, tol)
    return res


def suite_fourier() -> SuiteResult:
    res = SuiteResult("fourier")
    rng = np.random.default_rng(11)
    J = 8
    worst = 0.0
    for sm in (7.0, fourier.basis_frequencies(1.0, J)[3], 23.5):
        p = ModeParams.from_sqrt_mu(sm, 1.0, 1.0)
        coeffs = rng.normal(size=J)
        combo = CosineCombo(tuple(fourier.basis_frequencies(1.0, J)), tuple(coeffs))
        grid = TimeGrid.resolving(1.0, max(sm, max(combo.omegas)), points_per_period=400, min_n=4000)
        u, _ = superposed_solution(p, combo, grid)
        ref = norms.trial_norm_sq(p, u, combo)
        val = fourier.quadratic_form_eval(fourier.assemble_block(p, J), coeffs)
        worst = max(worst, abs(val / ref - 1))
    res.at_most("quadratic form vs trial norm, J = 8", worst, TOLERANCES["fourier_form_rel"])

    worst = 0.0
    p = ModeParams.from_sqrt_mu(40.0, 1.0, 1.0)
    for w in fourier.basis_frequencies(1.0, 20):
        got = fourier.kernel_w(p, w, w)
        worst = max(worst, abs(got / fourier.diagonal_identity_value(p, w) - 1))
    res.at_most("diagonal identity W(w, w) = (1 + C) ||cos||^2 / lam", worst, TOLERANCES["fourier_diag_rel"])

    block = fourier.assemble_block(ModeParams.from_sqrt_mu(200.0, 1.0, 1.0), 64)
    audit = fourier.diagonal_dominance_audit(block)
    res.notes.append(
        f"sqrt(mu) = 200, J = 64: {len(audit.violating_rows)} rows violate diagonal dominance, "
        f"worst off-diagonal/diagonal ratio {audit.worst_ratio:.4g}"
    )
    n_bad = len(audit.violating_rows)
    res.holds("violating rows at sqrt(mu) = 200, J = 64", n_bad, ">= 1", n_bad >= 1)
    return res


def suite_heat() -> SuiteResult:
    res = SuiteResult("heat")
    grid = TimeGrid(1.0, 4000)
    est = energy.heat_transform_and_estimates(1.0, Signal(grid, np.ones(grid.n + 1)), grid)
    res.notes.append(f"lam = 1, f = 1: critical estimate lhs / rhs = {est.lhs:.5f} / {est.rhs:.1f}")
    res.notes.append(
        f"decomposition ||u'||^2 + lam^2 ||u||^2 + lam u(T)^2 = "
        f"{est.u_prime_sq:.5f} + {est.u_sq:.5f} + {est.u_end_sq:.5f} = {est.f_sq:.1f}"
    )
    exact = ((1 - math.exp(-2)) / 2, 1 - 2 * (1 - math.exp(-1)) + (1 - math.exp(-2)) / 2, (1 - math.exp(-1)) ** 2)
    gap = max(
        abs(est.u_prime_sq - exact[0]) / exact[0],
        abs(est.u_sq - exact[1]) / exact[1],
        abs(est.u_end_sq - exact[2]) / exact[2],
    )
    res.at_most("lam = 1, f = 1 decomposition vs exact terms", gap, TOLERANCES["heat_balance_rel"])

    rng = np.random.default_rng(5)
    worst_bal, worst_margin = 0.0, -math.inf
    for _ in range(20):
        lam = 10 ** rng.uniform(-1, 3)
        combo = random_combo(rng, 40.0)
        g = TimeGrid.resolving(1.0, max(lam, 40.0), min_n=2000)
        est = energy.heat_transform_and_estimates(lam, combo, g)
        worst_bal = max(worst_bal, est.exact_balance_residual)
        worst_margin = max(worst_margin, (est.lhs - est.rhs) / est.rhs)
    res.at_most("corrected heat balance, 20 draws, relative", worst_bal, TOLERANCES["heat_balance_rel"])
    res.holds("critical estimate (lhs - rhs)/rhs, 20 draws", worst_margin, "<= 0", worst_margin <= 0)
    return res


def infsup_table(k_max: int = 50) -> list[tuple[int, float, float]]:
    rows = []
    for k in range(1, k_max + 1):
        p = resonant_params(k)
        rows.append((k, p.omega_res, norms.infsup_ratio(p)))
    return rows


def figure2_sweep(k_min: int = 1, k_max: int = 15, steps: int = 2000, T: float = 1.0):
    top = 1.5 * 2 * math.pi * k_max / T
    omegas = np.linspace(0.1, top, steps)
    curves = [
        norms.amplification_curve(ModeParams.from_sqrt_mu(2 * math.pi * k / T, 1.0, T), omegas)
        for k in range(k_min, k_max + 1)
    ]
    return omegas, curves


def suite_infsup() -> SuiteResult:
    res = SuiteResult("infsup")
    rows = infsup_table(50)
    res.notes.append(" k   sqrt(mu)        ratio")
    res.notes += [f"{k:2d}  {m:10.5f}  {r:.8f}" for k, m, r in rows]
    ratios = np.array([r for _, _, r in rows])
    steps = np.diff(ratios)
    res.holds("inf-sup ratio strictly decreasing, k = 1..50", steps.max(), "< 0", bool(np.all(steps < 0)))
    tail = ratios[3:].max()
    res.at_most("max inf-sup ratio for k >= 4", tail, TOLERANCES["infsup_small"])

    omegas, curves = figure2_sweep()
    # The maximiser of 1 + C sits slightly below sqrt(mu): the cosine's own
    # norm dips there.  It stays inside the main lobe |omega - sqrt(mu)| T < 1.
    arg_gap = max(abs(cv.argmax - cv.params.omega_res) * cv.params.T for cv in curves)
    res.at_most("figure 2 |argmax - 2 pi k| T", arg_gap, TOLERANCES["figure2_argmax_lobe"])
    growth = [cv.values.max() / (cv.params.mu * cv.params.T**2 / 6) for cv in curves]
    res.notes.append(
        "figure 2 peak / (mu T^2 / 6), k = 1..15: " + " ".join(f"{g:.4f}" for g in growth)
    )
    res.holds(
        "figure 2 peak / (mu T^2 / 6) decreasing in k",
        max(np.diff(growth)),
        "< 0",
        bool(np.all(np.diff(growth) < 0)),
    )
    res.at_most("figure 2 peak / (mu T^2 / 6) - 1, k >= 5", max(growth[4:]) - 1, TOLERANCES["figure2_growth_rel"])
    small = max(abs(cv.values[0] / 2 - 1) for cv in curves)
    res.at_most("figure 2 small-omega endpoint vs 2", small, TOLERANCES["small_omega_rel"])

    worst = 0.0
    grid = TimeGrid.resolving(1.0, 2 * math.pi * 15, points_per_period=400)
    for k in range(1, 16):
        basis = spectral.build_basis(0.5, k)
        p = ModeParams(basis.eigenvalues[-1], 1.0, 1.0)
        f_field = single_mode_resonant_source(basis, k, grid)
        fld = spectral.solve_ibvp(basis, f_field.coeffs)
        ratio = math.sqrt(
            spectral.field_bochner_norm_sq(f_field, -1.0)
            / spectral.field_trial_norm_sq(fld, f_field.coeffs)
        )
        worst = max(worst, abs(ratio / norms.infsup_ratio(p) - 1))
    res.at_most("field-level ratio vs infsup_ratio, k = 1..15", worst, TOLERANCES["field_ratio_rel"])
    return res


def single_mode_resonant_source(basis, k: int, grid: TimeGrid, nx: int | None = None):
    """Projected source ``e_k(x) cos(sqrt(lam_k) t)`` (``c = 1``)."""
    nx = nx or max(20 * basis.K, 40)
    nx += nx % 2
    m = math.sqrt(basis.eigenvalues[k - 1])
    samples = spectral.sample_field(
        lambda x, t: basis.eigenfunction(k, x) * np.cos(m * t), basis, grid, nx
    )
    return spectral.SpectralField(basis, tuple(spectral.project_source(samples, basis, grid)))


_RUNNERS = {
    "closed-form": suite_closed_form,
    "balances": suite_balances,
    "fourier": suite_fourier,
    "heat": suite_heat,
    "infsup": suite_infsup,
}


def run(suite: str = "all") -> list[SuiteResult]:
    if suite == "all":
        return [_RUNNERS[name]() for name in SUITES]
    if suite not in _RUNNERS:
        raise ValueError(f"unknown suite {suite!r}; choose from all, {', '.join(SUITES)}")
    return [_RUNNERS[suite]()]
