"""Command-line entry point.

    fragile-cpr run <config-path>        run one configured experiment
    fragile-cpr reproduce <target>       regenerate a reference dataset
    fragile-cpr validate <config-path>   check a config without running it

Exit codes: 0 success, 1 validation/config failure, 2 non-convergence.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from .config import ConfigError, load_config
from .reproduce import TARGETS, reproduce
from .resources import validate_assumption1
from .runner import EXIT_INVALID, EXIT_OK, InvalidResourceError, run


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fragile-cpr",
        description="Equilibrium solver and fragility metrics for fragile "
                    "common-pool resource games.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_solver_flags(p):
        p.add_argument("--tol", type=float, default=None,
                       help="override the solver sweep tolerance")
        p.add_argument("--max-sweeps", type=int, default=None,
                       help="override the sweep budget")
        p.add_argument("--seed", type=int, default=None,
                       help="override the sampling seed")
        p.add_argument("--grid-n", type=int, default=1000,
                       help="grid size for resource validation (default 1000)")

    p_run = sub.add_parser("run", help="run one experiment from a config document")
    p_run.add_argument("config", help="path to the JSON experiment config")
    add_solver_flags(p_run)

    p_rep = sub.add_parser("reproduce", help="regenerate a reference dataset")
    p_rep.add_argument("target", nargs="+", choices=list(TARGETS),
                       help="which dataset(s) to regenerate")
    p_rep.add_argument("--out", required=True, help="output directory for the CSVs")
    add_solver_flags(p_rep)

    p_val = sub.add_parser("validate", help="validate a config without running it")
    p_val.add_argument("config", help="path to the JSON experiment config")
    add_solver_flags(p_val)
    return parser


def _apply_overrides(cfg, args):
    solver = cfg.solver
    if args.tol is not None:
        solver = dataclasses.replace(solver, sweep_tol=args.tol)
    if args.max_sweeps is not None:
        solver = dataclasses.replace(solver, max_sweeps=args.max_sweeps)
    if args.seed is not None:
        solver = dataclasses.replace(solver, seed=args.seed)
    return dataclasses.replace(cfg, solver=solver)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "reproduce":
        for target in args.target:
            for path in reproduce(target, args.out):
                print(path)
        return EXIT_OK

    try:
        cfg = _apply_overrides(load_config(args.config), args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID

    if args.command == "validate":
        report = validate_assumption1(cfg.rate, cfg.failure, args.grid_n)
        print(report)
        if not report.ok:
            return EXIT_INVALID
        print(f"config ok: {cfg.kind} with {len(cfg.players)} players -> {cfg.output}")
        return EXIT_OK

    try:
        code = run(cfg, grid_n=args.grid_n)
    except InvalidResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(exc.report, file=sys.stderr)
        return EXIT_INVALID
    if code == EXIT_OK:
        print(cfg.output)
    else:
        print("warning: solver did not converge within the sweep budget",
              file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
