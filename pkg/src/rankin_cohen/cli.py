"""Command line entry point: ``rankin-cohen verify`` and ``rankin-cohen plot``."""
from __future__ import annotations

import argparse
import dataclasses
import sys

from .errors import DomainError
from .harness import SUITES, ConfigError, SuiteConfig, emit_plot_data, emit_report, load_config, run_suites
from .kernels import WeightTriple

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _complex(text):
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from exc


def _parser():
    p = argparse.ArgumentParser(prog="rankin-cohen", description="Numerical certification of Rankin-Cohen identities.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run identity suites and report pass/fail")
    v.add_argument("--config", help="TOML file with SuiteConfig fields")
    v.add_argument("--suite", action="append", choices=SUITES, help="restrict to this suite (repeatable)")
    v.add_argument("--tol", type=float, help="override every identity's tolerance")
    v.add_argument("--seed", type=int, help="override rng_seed")
    v.add_argument("--report", help="write reports to this path")
    v.add_argument("--format", default="json-lines", choices=("json-lines", "csv"))
    v.add_argument("--quiet", action="store_true", help="only print the summary line")

    q = sub.add_parser("plot", help="write CSV data for plotting")
    q.add_argument("--lambda1", type=float, required=True)
    q.add_argument("--lambda2", type=float, required=True)
    q.add_argument("--l", type=int, required=True)
    q.add_argument("--quantity", required=True, choices=("relative_kernel_abs", "psi_of_kernel_abs", "jacobi_weights"))
    q.add_argument("--grid", required=True, help='"x0:x1:nx,y0:y1:ny" over the half-plane or "v0:v1:n" over (-1, 1)')
    q.add_argument("--out", required=True)
    q.add_argument("--w1", type=_complex, default=0.5 + 1.0j)
    q.add_argument("--w2", type=_complex, default=-0.5 + 1.5j)
    return p


def _verify(args) -> int:
    try:
        cfg = load_config(args.config) if args.config else SuiteConfig()
        changes = {}
        if args.suite:
            changes["suites"] = tuple(args.suite)
        if args.tol is not None:
            changes["tolerance"] = args.tol
        if args.seed is not None:
            changes["rng_seed"] = args.seed
        if changes:
            cfg = dataclasses.replace(cfg, **changes)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    reports = run_suites(cfg)
    if not args.quiet:
        for r in reports:
            print(r.line())
    failed = sum(not r.passed for r in reports)
    print(f"{len(reports) - failed} passed, {failed} failed")
    if args.report:
        try:
            emit_report(reports, args.report, args.format)
        except OSError as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_CONFIG
    return EXIT_FAIL if failed else EXIT_OK


def _plot(args) -> int:
    try:
        tw = WeightTriple.from_l(args.lambda1, args.lambda2, args.l)
        n = emit_plot_data(tw, args.grid, args.quantity, args.out, w1=args.w1, w2=args.w2)
    except (ConfigError, DomainError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CONFIG
    print(f"wrote {n} rows to {args.out}")
    return EXIT_OK


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "verify":
        return _verify(args)
    return _plot(args)


if __name__ == "__main__":
    sys.exit(main())
