"""Command-line interface: CSV output on stdout, diagnostics on stderr.

Exit codes: 0 success, 1 numerical non-convergence (or failed validation),
2 argument errors.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .closedform import rbar_closed_form
from .errors import EventCapError, NonConvergenceError, PivotError
from .hyperg import kummer_m
from .invert import InversionConfig, renewal_function
from .mcsim import SimConfig, simulate_renewal_counts
from .model import MMInfinityKernel, QueueParams
from .oracle import TruncationConfig, neumann_series_sum, solve_row_adaptive, solve_row_truncated


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _grid(text: str) -> np.ndarray:
    """Parse 'A:B:N' into N points linearly spaced over [A, B] inclusive."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must look like A:B:N, got {text!r}")
    try:
        a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}: {exc}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"grid needs N >= 1, got {n}")
    return np.linspace(a, b, n)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mrenew",
        description="Renewal-matrix transforms for the M|M|infinity queue: "
        "closed form, truncated-system solver, Laplace inversion, simulation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    tr = sub.add_parser("transform", help="rbar_ij(s) over an s grid (CSV)")
    tr.add_argument("--i", type=int, required=True)
    tr.add_argument("--j", type=int, required=True)
    tr.add_argument("--s-grid", type=_grid, required=True, metavar="A:B:N")
    tr.add_argument("--lambda", dest="lam", type=float, required=True)
    tr.add_argument("--alpha", type=float, required=True)
    tr.add_argument("--solver", choices=("oracle", "closedform", "both"), default="both")

    rn = sub.add_parser("renewal", help="R_ij(t) by Laplace inversion (CSV)")
    rn.add_argument("--i", type=int, required=True)
    rn.add_argument("--j", type=int, required=True)
    rn.add_argument("--t-grid", type=_grid, required=True, metavar="A:B:N")
    rn.add_argument("--lambda", dest="lam", type=float, required=True)
    rn.add_argument("--alpha", type=float, required=True)
    rn.add_argument("--method", choices=("gs", "euler"), required=True)
    rn.add_argument("--order", type=int, default=14, help="Gaver-Stehfest order (even, 4..18)")

    sm = sub.add_parser("simulate", help="Monte Carlo estimate of R_ij(t) (CSV)")
    sm.add_argument("--i", type=int, required=True)
    sm.add_argument("--j", type=int, required=True)
    sm.add_argument("--t-grid", type=_grid, required=True, metavar="A:B:N")
    sm.add_argument("--lambda", dest="lam", type=float, required=True)
    sm.add_argument("--alpha", type=float, required=True)
    sm.add_argument("--paths", type=int, required=True)
    sm.add_argument("--seed", type=int, required=True)
    sm.add_argument("--workers", type=int, default=1)

    hg = sub.add_parser("hyperg", help="confluent hypergeometric value")
    hg.add_argument("--a", type=float, required=True)
    hg.add_argument("--b", type=float, required=True)
    hg.add_argument("--z", type=float, required=True)

    va = sub.add_parser("validate", help="run the cross-check suites")
    va.add_argument("--quick", action="store_true", help="reduced grids and path counts")

    return parser


def _cmd_transform(args) -> int:
    p = QueueParams(args.lam, args.alpha)
    kernel = MMInfinityKernel(p)
    trunc = TruncationConfig(n0=max(64, args.j + 2))
    columns = {
        "oracle": "s,rbar_oracle",
        "closedform": "s,rbar_closedform",
        "both": "s,rbar_oracle,rbar_closedform,rel_diff",
    }
    print(columns[args.solver])
    for s in args.s_grid:
        s = float(s)
        fields = [_fmt(s)]
        if args.solver in ("oracle", "both"):
            row = solve_row_adaptive(args.i, s, kernel, trunc)
            oracle_val = float(row.values[args.j].real)
            fields.append(_fmt(oracle_val))
        if args.solver in ("closedform", "both"):
            closed_val = rbar_closed_form(args.i, args.j, s, p)
            fields.append(_fmt(closed_val))
        if args.solver == "both":
            rel = abs(oracle_val - closed_val) / max(abs(oracle_val), 1e-300)
            fields.append(_fmt(rel))
        print(",".join(fields))
    return 0


def _cmd_renewal(args) -> int:
    p = QueueParams(args.lam, args.alpha)
    method = "gaver-stehfest" if args.method == "gs" else "euler"
    cfg = InversionConfig(method=method, order=args.order)
    values = renewal_function(args.i, args.j, args.t_grid, p, solver="oracle", cfg=cfg)
    print("t,R")
    for t, r in zip(args.t_grid, values):
        print(f"{_fmt(t)},{_fmt(r)}")
    return 0


def _cmd_simulate(args) -> int:
    p = QueueParams(args.lam, args.alpha)
    t_grid = [float(t) for t in args.t_grid]
    cfg = SimConfig(n_paths=args.paths, seed=args.seed, t_max=max(t_grid))
    estimates = simulate_renewal_counts(args.i, [args.j], t_grid, p, cfg, workers=args.workers)
    print("t,mean,std_error")
    for est in estimates:
        print(f"{_fmt(est.t)},{_fmt(est.mean)},{_fmt(est.std_error)}")
    return 0


def _cmd_hyperg(args) -> int:
    print(_fmt(kummer_m(args.a, args.b, args.z)))
    return 0


def _check_two_oracle(quick: bool):
    states = [0, 2] if quick else [0, 1, 2, 5]
    s_values = [1.0, 10.0] if quick else [0.1, 1.0, 10.0]
    params = [(0.5, 1.0), (1.0, 1.0)] if quick else [(0.5, 1.0), (1.0, 1.0), (2.0, 0.5)]
    n = 256
    worst = 0.0
    for lam, alpha in params:
        kernel = MMInfinityKernel(QueueParams(lam, alpha))
        for i in states:
            for s in s_values:
                direct = solve_row_truncated(i, s, kernel, n).values
                series = neumann_series_sum(i, s, kernel, n, 200_000, stop_below=1e-12)
                worst = max(worst, float(np.max(np.abs(direct - series))))
    return worst <= 1e-8, f"max |diff| = {worst:.3e} (allowed 1e-8)"


def _check_closed_form(quick: bool):
    states = range(3) if quick else range(5)
    s_values = [1.0, 5.0] if quick else [0.5, 1.0, 5.0]
    rhos = [0.5, 2.0] if quick else [0.5, 1.0, 2.0]
    worst = 0.0
    for rho in rhos:
        p = QueueParams(rho, 1.0)
        kernel = MMInfinityKernel(p)
        for i in states:
            for s in s_values:
                row = solve_row_adaptive(i, s, kernel)
                for n in states:
                    reference = float(row.values[n])
                    closed = rbar_closed_form(i, n, s, p)
                    err = abs(closed - reference) / max(abs(reference), 1e-9 / 1e-6)
                    worst = max(worst, err)
    return worst <= 1e-6, f"max rel diff = {worst:.3e} (allowed 1e-6)"


def _check_inversion_vs_simulation(quick: bool):
    p = QueueParams(1.0, 1.0)
    t_grid = [0.5, 1.0, 2.0]
    n_paths = 20_000 if quick else 100_000
    cfg = SimConfig(n_paths=n_paths, seed=20240817, t_max=2.0)
    estimates = simulate_renewal_counts(0, [0, 1], t_grid, p, cfg)
    worst = 0.0
    for j in (0, 1):
        inverted = renewal_function(0, j, t_grid, p, solver="oracle")
        for est, value in zip([e for e in estimates if e.j == j], inverted):
            z = abs(value - est.mean) / max(est.std_error, 1e-300)
            worst = max(worst, z)
    return worst <= 3.0, f"max |z| = {worst:.2f} (allowed 3 standard errors)"


def _cmd_validate(args) -> int:
    checks = [
        ("two_oracle_agreement", _check_two_oracle),
        ("closed_form_vs_oracle", _check_closed_form),
        ("inversion_vs_simulation", _check_inversion_vs_simulation),
    ]
    all_ok = True
    print(f"{'check':<28}{'result':<8}detail")
    for name, fn in checks:
        ok, detail = fn(args.quick)
        all_ok &= ok
        print(f"{name:<28}{'PASS' if ok else 'FAIL':<8}{detail}")
    return 0 if all_ok else 1


_HANDLERS = {
    "transform": _cmd_transform,
    "renewal": _cmd_renewal,
    "simulate": _cmd_simulate,
    "hyperg": _cmd_hyperg,
    "validate": _cmd_validate,
}


def run(argv) -> int:
    """Parse argv and dispatch; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except (NonConvergenceError, PivotError, EventCapError) as exc:
        print(f"mrenew: numerical failure: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"mrenew: invalid arguments: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
