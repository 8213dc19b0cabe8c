"""Command-line front end: CSV data for the resonance figures and the self-checks.

Every data command writes one CSV file (UTF-8, comma separated, header row,
17 significant digits) to ``--out`` or to standard output.
"""

from __future__ import annotations

import argparse
import io
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import closed_form, energy, fourier, norms, spectral, verification
from .modal import Cosine, ModeParams, TimeGrid

EXIT_OK, EXIT_VERIFY, EXIT_ARGS, EXIT_IO = 0, 1, 2, 3

FIGURE1_RATIOS = (0.8, 0.95, 1.0, 1.05, 1.2)


class CliError(ValueError):
    """Invalid parameter combination (exit status 2)."""


@dataclass(frozen=True)
class Table:
    header: list
    rows: np.ndarray

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(self.header) + "\n")
        for row in np.atleast_2d(self.rows):
            buf.write(",".join("%.17g" % v for v in row) + "\n")
        return buf.getvalue()


# --- parameter handling ----------------------------------------------------------------


def _mode(args, default_sqrt_mu: float | None = None) -> ModeParams:
    if args.sqrt_mu is not None and args.lam is not None:
        raise CliError("give either --sqrt-mu or --lambda, not both")
    if args.lam is not None:
        return ModeParams(args.lam, args.c, args.T)
    sqrt_mu = args.sqrt_mu if args.sqrt_mu is not None else default_sqrt_mu
    if sqrt_mu is None:
        raise CliError("--sqrt-mu or --lambda is required")
    return ModeParams.from_sqrt_mu(sqrt_mu, args.c, args.T)


def _sweep(args, lo: float, hi: float, steps: int) -> np.ndarray:
    lo = args.omega_min if args.omega_min is not None else lo
    hi = args.omega_max if args.omega_max is not None else hi
    steps = args.omega_steps if args.omega_steps is not None else steps
    if not lo < hi:
        raise CliError(f"sweep bounds must satisfy omega-min < omega-max, got {lo} and {hi}")
    if steps < 2:
        raise CliError("--omega-steps must be at least 2")
    return np.linspace(lo, hi, steps)


def _k_range(args, k_min: int, k_max: int) -> range:
    k_min = args.k_min if args.k_min is not None else k_min
    k_max = args.k_max if args.k_max is not None else k_max
    if not 1 <= k_min <= k_max:
        raise CliError(f"need 1 <= k-min <= k-max, got {k_min} and {k_max}")
    return range(k_min, k_max + 1)


def _grid(args, frequency: float) -> TimeGrid:
    if args.grid_n is not None:
        return TimeGrid(args.T, args.grid_n)
    return TimeGrid.resolving(args.T, frequency, min_n=256)


# --- data commands -------------------------------------------------------------------


def figure1(args) -> Table:
    """Source and response for frequencies bracketing resonance."""
    p = _mode(args, default_sqrt_mu=10 * math.pi)
    omegas = [r * p.omega_res for r in FIGURE1_RATIOS]
    grid = _grid(args, max(omegas))
    grid.check_resolution(max(omegas))
    t = grid.nodes
    header, cols = ["t"], [t]
    for r, w in zip(FIGURE1_RATIOS, omegas):
        u, _ = closed_form.solve_wave_cosine(p, w)(t)
        header += [f"f_ratio_{r:g}", f"u_ratio_{r:g}"]
        cols += [np.cos(w * t), u]
    return Table(header, np.column_stack(cols))


def figure2(args) -> Table:
    ks = _k_range(args, 1, 15)
    top = 1.5 * 2 * math.pi * ks[-1] / args.T
    omegas = _sweep(args, 0.1, top, 2000)
    header, cols = ["omega"], [omegas]
    for k in ks:
        p = ModeParams.from_sqrt_mu(2 * math.pi * k / args.T, args.c, args.T)
        header.append(f"one_plus_C_k{k}")
        cols.append(norms.amplification_curve(p, omegas).values)
    return Table(header, np.column_stack(cols))


def _norm_columns(p: ModeParams, omegas: np.ndarray):
    T = p.T
    f_sq = T / 2 * (1 + np.sinc(2 * omegas * T / np.pi))
    one_plus_c = norms.amplification_curve(p, omegas).values
    trial = np.sqrt(one_plus_c * f_sq / p.lam)
    return trial, np.sqrt(f_sq), np.sqrt(f_sq / p.lam)


def figure3(args) -> Table:
    k = args.k_max if args.k_max is not None else 50
    p = _mode(args, default_sqrt_mu=2 * math.pi * k / args.T)
    omegas = _sweep(args, 0.1, 2 * p.omega_res, 4000)
    trial, l2l2, l2hm1 = _norm_columns(p, omegas)
    header = ["omega", "trial_norm", "l2l2_norm", "l2hminus1_norm"]
    return Table(header, np.column_stack([omegas, trial, l2l2, l2hm1]))


def _kernel_table(args, absolute: bool, default_sqrt_mu: float, default_J: int) -> Table:
    p = _mode(args, default_sqrt_mu=default_sqrt_mu)
    J = args.J if args.J is not None else default_J
    if J < 2:
        raise CliError("--J must be at least 2")
    block = fourier.assemble_block(p, J)
    audit = fourier.diagonal_dominance_audit(block)
    print(
        f"dominance audit: {len(audit.violating_rows)} of {J} rows violate diagonal "
        f"dominance; worst off-diagonal/diagonal ratio {audit.worst_ratio:.6g}",
        file=sys.stderr,
    )
    W = np.abs(block.matrix) if absolute else np.array(block.matrix)
    header = ["omega"] + ["%.17g" % w for w in block.frequencies]
    return Table(header, np.column_stack([block.frequencies, W]))


def figure4(args) -> Table:
    return _kernel_table(args, absolute=True, default_sqrt_mu=200.0, default_J=64)


def fourier_kernel(args) -> Table:
    return _kernel_table(args, absolute=False, default_sqrt_mu=200.0, default_J=16)


def amplification(args) -> Table:
    p = _mode(args, default_sqrt_mu=2 * math.pi / args.T)
    omegas = _sweep(args, 0.1, 2 * p.omega_res, 1000)
    curve = norms.amplification_curve(p, omegas)
    return Table(["omega", "C", "one_plus_C"], np.column_stack([omegas, curve.values - 1, curve.values]))


def infsup(args) -> Table:
    rows = []
    for k in _k_range(args, 1, 50):
        p = ModeParams.from_sqrt_mu(2 * math.pi * k / args.T, args.c, args.T)
        c_res = norms.amplification_constant(p, p.omega_res)
        rows.append((k, p.omega_res, c_res, norms.infsup_ratio(p)))
    return Table(["k", "sqrt_mu", "C_resonant", "infsup_ratio"], np.array(rows))


def energy_cmd(args) -> Table:
    """Energy balance along the response to ``cos(omega t)``."""
    p = _mode(args, default_sqrt_mu=2 * math.pi / args.T)
    omega = args.omega if args.omega is not None else p.omega_res
    grid = _grid(args, max(omega, p.omega_res))
    u, du = closed_form.solve_wave_cosine(p, omega).on_grid(grid)
    pair = energy.transforms(Cosine(omega), p.omega_res, grid)
    c2 = p.c**2
    lhs = p.lam * u.values**2 + du.values**2 / c2
    rhs = c2 * (pair.fc.values**2 + pair.fs.values**2)
    header = ["t", "u", "u_prime", "fc", "fs", "energy", "transform_energy"]
    cols = [grid.nodes, u.values, du.values, pair.fc.values, pair.fs.values, lhs, rhs]
    return Table(header, np.column_stack(cols))


def solve(args) -> Table:
    """Modal coefficients of the Dirichlet problem on ``(0, L)`` for a built-in source."""
    K = args.K
    basis = spectral.build_basis(args.L, K)
    lam_top = basis.eigenvalues[-1]
    # heat and Schroedinger modes evolve at rate lam, wave modes at c sqrt(lam)
    fastest = args.c * math.sqrt(lam_top) if args.equation == "wave" else lam_top
    if args.source == "manufactured":
        grid = _grid(args, fastest)
        samples = spectral.sample_field(
            lambda x, t: (2 / args.c**2 + (math.pi / args.L) ** 2 * t**2)
            * np.sin(math.pi * x / args.L),
            basis,
            grid,
            max(20 * K, 40),
        )
        forcings = spectral.project_source(samples, basis, grid)
    else:
        k = args.k if args.k is not None else 1
        if not 1 <= k <= K:
            raise CliError(f"--k must lie in 1..{K}")
        grid = _grid(args, fastest)
        m = args.c * math.sqrt(basis.eigenvalues[k - 1])
        samples = spectral.sample_field(
            lambda x, t: basis.eigenfunction(k, x) * np.cos(m * t), basis, grid, max(20 * K, 40)
        )
        forcings = spectral.project_source(samples, basis, grid)
    field = spectral.solve_ibvp(basis, forcings, c=args.c, equation=args.equation)
    header, rows = field.to_csv_rows()
    if field.coeffs[0].is_complex:
        cols = [rows[:, 0].real]
        names = ["t"]
        for k, col in enumerate(rows[:, 1:].T, start=1):
            cols += [col.real, col.imag]
            names += [f"mode_{k}_re", f"mode_{k}_im"]
        return Table(names, np.column_stack(cols))
    return Table(header, rows.real)


# --- wiring ---------------------------------------------------------------------------


def _positive(kind):
    def parse(text):
        value = kind(text)
        if not value > 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text}")
        return value

    return parse


def _common(p: argparse.ArgumentParser) -> None:
    pf, pi = _positive(float), _positive(int)
    p.add_argument("--sqrt-mu", type=pf, help="resonance frequency c*sqrt(lambda)")
    p.add_argument("--lambda", dest="lam", type=pf, help="eigenvalue lambda (instead of --sqrt-mu)")
    p.add_argument("--c", type=pf, default=1.0, help="wave speed (default 1)")
    p.add_argument("--T", type=pf, default=1.0, help="final time (default 1)")
    p.add_argument("--grid-n", type=pi, help="number of time intervals (even)")
    p.add_argument("--out", default="-", help="output CSV path ('-' for stdout)")
    p.add_argument("--omega-min", type=pf)
    p.add_argument("--omega-max", type=pf)
    p.add_argument("--omega-steps", type=pi)
    p.add_argument("--J", type=pi, help="number of cosine basis functions")
    p.add_argument("--k-min", type=pi)
    p.add_argument("--k-max", type=pi)


COMMANDS = {
    "figure1": (figure1, "source and response around resonance"),
    "figure2": (figure2, "1 + C(omega) for sqrt(mu) = 2 pi k"),
    "figure3": (figure3, "trial norm against L2(L2) and L2(H^-1) data norms"),
    "figure4": (figure4, "|W(w_j, w_l)| on the cosine basis"),
    "amplification": (amplification, "amplification constant sweep for one mode"),
    "infsup": (infsup, "inf-sup ratio for sqrt(mu) = 2 pi k"),
    "fourier-kernel": (fourier_kernel, "signed kernel matrix W(w_j, w_l)"),
    "energy": (energy_cmd, "energy balance along a cosine response"),
    "solve": (solve, "modal solution of the Dirichlet problem on (0, L)"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="resonant-waves", description="Resonance and norm diagnostics for wave modes."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        _common(p)
        if name == "energy":
            p.add_argument("--omega", type=_positive(float), help="forcing frequency (default sqrt(mu))")
        if name == "solve":
            p.add_argument("--source", choices=("manufactured", "resonant"), default="manufactured")
            p.add_argument("--equation", choices=("wave", "heat", "schrodinger"), default="wave")
            p.add_argument("--L", type=_positive(float), default=1.0, help="interval length")
            p.add_argument("--K", type=_positive(int), default=4, help="number of modes")
            p.add_argument("--k", type=_positive(int), help="resonant mode index")
    v = sub.add_parser("verify", help="run the self-check suites")
    v.add_argument("--suite", choices=("all",) + verification.SUITES, default="all")
    return parser


def _write(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_ARGS

    if args.command == "verify":
        results = verification.run(args.suite)
        for r in results:
            print(r.report())
        ok = all(r.passed for r in results)
        print("verify: " + ("all checks passed" if ok else "FAILED"))
        return EXIT_OK if ok else EXIT_VERIFY

    func = COMMANDS[args.command][0]
    try:
        table = func(args)
    except ValueError as exc:  # DomainError, ResolutionError, CliError, ...
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    try:
        _write(table.to_csv(), args.out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
