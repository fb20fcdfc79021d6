"""Experiment orchestration: config in, deterministic CSV out.

Sweep points are dispatched to a thread pool capped by the
FRAGILE_CPR_THREADS environment variable; rows are always written in sweep
order regardless of completion order.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor

from .best_response import compute_region
from .config import ExperimentConfig
from .csvio import write_csv
from .equilibrium import solve_homogeneous, solve_pne
from .game import FragileCprGame, RiskProfile
from .heterogeneity import (alpha_table, fragility_under_k_spread,
                            fragility_vs_alpha_sweep, sample_mean_preserving)
from .metrics import evaluate_bounds, price_of_anarchy, social_optimum
from .resources import PowerLaw, validate_assumption1

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NO_CONVERGENCE = 2

BOUND_COLUMNS = ("trivial_bound", "cor43_bound", "thm44_lower", "thm44_upper",
                 "thm46_bound")


def max_workers() -> int:
    env = os.environ.get("FRAGILE_CPR_THREADS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


def pool_map(fn, items):
    items = list(items)
    workers = max_workers()
    if workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _meta_common(cfg: ExperimentConfig) -> list[str]:
    return [
        f"experiment={cfg.kind}",
        f"seed={cfg.solver.seed}",
        f"sweep_tol={cfg.solver.sweep_tol:.12g}",
        f"max_sweeps={cfg.solver.max_sweeps}",
    ]


def _game(cfg: ExperimentConfig) -> FragileCprGame:
    return FragileCprGame(cfg.players, cfg.rate, cfg.failure)


def _run_solve(cfg: ExperimentConfig) -> int:
    game = _game(cfg)
    result = solve_pne(game, sweep_tol=cfg.solver.sweep_tol,
                       max_sweeps=cfg.solver.max_sweeps)
    header = ["player", "alpha", "k", "investment", "ybar", "in_support",
              "total", "fragility", "sweeps", "converged", "residual"]
    rows = []
    for i, profile in enumerate(game.players):
        region = compute_region(game, i)
        rows.append([i, profile.alpha, profile.k, result.investments[i],
                     region.ybar, i in result.support, result.total,
                     result.fragility, result.sweeps, result.converged,
                     result.residual])
    write_csv(cfg.output, header, rows, _meta_common(cfg))
    return EXIT_OK if result.converged else EXIT_NO_CONVERGENCE


def fuc_sweep_row(game: FragileCprGame, n: int):
    """One gamma-sweep row: the fragility ratio plus every bound value."""
    report = evaluate_bounds(game, n)
    b = report.bound_values
    return [report.fuc, report.fuc_limit, report.x_pvt, report.ybar,
            b["trivial"].value, b["cor43_fuc"].value if b["cor43_fuc"].applicable else None,
            b["thm44_lower"].value if b["thm44_lower"].applicable else None,
            b["thm44_upper"].value if b["thm44_upper"].applicable else None,
            b["thm46_fuc"].value if b["thm46_fuc"].applicable else None]


def _run_fuc_sweep(cfg: ExperimentConfig) -> int:
    meta = _meta_common(cfg)
    if "gamma_range" in cfg.params:
        lo, hi = cfg.params["gamma_range"]
        gammas = list(range(lo, hi + 1))
        n = len(cfg.players)

        def point(gamma):
            game = FragileCprGame(cfg.players, cfg.rate, PowerLaw(float(gamma)))
            return fuc_sweep_row(game, n)

        rows = [[g, *vals] for g, vals in zip(gammas, pool_map(point, gammas))]
        header = ["gamma", "fuc", "fuc_limit", "x_pvt", "ybar", *BOUND_COLUMNS]
        meta.append(f"n={n}")
    else:
        lo, hi = cfg.params["n_range"]
        ns = list(range(lo, hi + 1))
        game = _game(cfg)

        def point(n):
            total, per_player = solve_homogeneous(game, n)
            fragility = game.failure.eval(total)[0]
            x_pvt_frag = game.failure.eval(solve_homogeneous(game, 1)[0])[0]
            return [total, per_player, fragility, fragility / x_pvt_frag]

        rows = [[n, *vals] for n, vals in zip(ns, pool_map(point, ns))]
        header = ["n", "total", "per_player", "fragility", "fuc"]
    write_csv(cfg.output, header, rows, meta)
    return EXIT_OK


def _run_bounds(cfg: ExperimentConfig) -> int:
    game = _game(cfg)
    report = evaluate_bounds(game, game.n)
    meta = _meta_common(cfg) + [
        f"n={report.n}",
        f"x_pvt={report.x_pvt:.12g}",
        f"ybar={report.ybar:.12g}",
        f"investment_ratio={report.investment_ratio:.12g}",
        f"fuc={report.fuc:.12g}",
        f"fuc_limit={report.fuc_limit:.12g}",
        f"x_star_r={report.x_star_r:.12g}",
        f"zeta={report.zeta:.12g}",
    ]
    header = ["bound", "value", "applicable", "holds"]
    rows = [[name, entry.value, entry.applicable, entry.holds]
            for name, entry in report.bound_values.items()]
    write_csv(cfg.output, header, rows, meta)
    return EXIT_OK


def _run_k_spread(cfg: ExperimentConfig) -> int:
    n = len(cfg.players)
    alpha = cfg.players[0].alpha
    family = sample_mean_preserving(n, cfg.params["k_mean"],
                                    cfg.params["n_samples"], seed=cfg.solver.seed)
    report = fragility_under_k_spread((cfg.rate, cfg.failure), alpha, family)
    meta = _meta_common(cfg) + [
        f"k_mean={family.k_mean:.12g}",
        f"n_samples={len(family.samples)}",
        f"min_at_homogeneous={'true' if report.min_at_homogeneous else 'false'}",
    ]
    header = ["sample", "kind", *[f"k_{j + 1}" for j in range(n)], "fragility"]
    rows = [[0, "homogeneous", *[family.k_mean] * n, report.homogeneous_fragility]]
    for idx, (vec, frag) in enumerate(zip(family.samples, report.sample_fragilities), 1):
        rows.append([idx, "spread", *vec, frag])
    write_csv(cfg.output, header, rows, meta)
    return EXIT_OK


def _run_alpha_table(cfg: ExperimentConfig) -> int:
    n = len(cfg.players)
    k = cfg.players[0].k
    rows_in = cfg.params["alpha_rows"]
    frags = alpha_table((cfg.rate, cfg.failure), k, rows_in, n)
    header = ["row", *[f"alpha_{j + 1}" for j in range(n)], "fragility"]
    rows = [[i, *row, frag] for i, (row, frag) in enumerate(zip(rows_in, frags))]
    write_csv(cfg.output, header, rows, _meta_common(cfg) + [f"k={k:.12g}"])
    return EXIT_OK


def _run_alpha_sweep(cfg: ExperimentConfig) -> int:
    n = len(cfg.players)
    k = cfg.players[0].k
    curve = fragility_vs_alpha_sweep((cfg.rate, cfg.failure), k, n,
                                     cfg.params.get("alpha_grid"))
    meta = _meta_common(cfg) + [
        f"k={k:.12g}", f"n={n}",
        f"rise_then_fall={'true' if curve.rise_then_fall else 'false'}",
    ]
    rows = list(zip(curve.alphas, curve.fragilities))
    write_csv(cfg.output, ["alpha", "fragility"], rows, meta)
    return EXIT_OK


def _run_poa_sweep(cfg: ExperimentConfig) -> int:
    game = _game(cfg)
    lo, hi = cfg.params["n_range"]
    ns = list(range(lo, hi + 1))

    def point(n):
        poa = price_of_anarchy(game, n)
        _, _, w_opt = social_optimum(game, n)
        return [poa, w_opt, w_opt / poa if math.isfinite(poa) else 0.0]

    rows = [[n, *vals] for n, vals in zip(ns, pool_map(point, ns))]
    write_csv(cfg.output, ["n", "poa", "welfare_opt", "welfare_pne"], rows,
              _meta_common(cfg))
    return EXIT_OK


_RUNNERS = {
    "solve": _run_solve,
    "fuc_sweep": _run_fuc_sweep,
    "bounds": _run_bounds,
    "k_spread": _run_k_spread,
    "alpha_table": _run_alpha_table,
    "alpha_sweep": _run_alpha_sweep,
    "poa_sweep": _run_poa_sweep,
}


def run(cfg: ExperimentConfig, grid_n: int = 1000) -> int:
    """Validate the resource, run the configured experiment, emit its CSV."""
    report = validate_assumption1(cfg.rate, cfg.failure, grid_n)
    if not report.ok:
        raise InvalidResourceError(report)
    return _RUNNERS[cfg.kind](cfg)


class InvalidResourceError(ValueError):
    def __init__(self, report):
        self.report = report
        failures = "; ".join(f"{c.name}: {c.detail}" for c in report.failures())
        super().__init__(f"resource violates structural requirements: {failures}")
