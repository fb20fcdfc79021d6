"""Regeneration of every reference figure and table dataset.

Each target transcribes the exact resource and risk parameters from the
corresponding caption and emits one CSV per panel, named
repro_<target>_<panel>.csv.
"""

from __future__ import annotations

import os

from .best_response import compute_region
from .csvio import write_csv
from .equilibrium import solve_homogeneous
from .game import FragileCprGame, RiskProfile
from .heterogeneity import alpha_table, fragility_vs_alpha_sweep
from .metrics import compute_fuc
from .resources import Affine, AffineRbar, DirectRbar, PowerLaw, PowerShift
from .runner import BOUND_COLUMNS, fuc_sweep_row, pool_map

TARGETS = ("fig1", "fig2", "fig3", "fig4", "table1", "example2")

CURVE_POINTS = 400
GAMMA_SWEEP = range(1, 26)

EXAMPLE2_GRID = {
    "n": (1, 2, 5, 50),
    "gamma": (1.0, 2.0, 5.0),
    "alpha": (0.5, 0.88, 1.0),
    "k": (0.5, 1.0, 2.25),
    "b": (0.5, 1.0, 3.0),
}


def _f_curve_csv(path, rate, failure, k, label):
    game = FragileCprGame([RiskProfile(1.0, k)], rate, failure)
    f = game.f(0)
    region = compute_region(game, 0)
    meta = [f"config={label}", f"k={k:.12g}", f"ybar={region.ybar:.12g}"]
    if region.zhat is not None:
        meta.append(f"zhat={region.zhat:.12g}")
    rows = []
    for j in range(CURVE_POINTS + 1):
        x = j / CURVE_POINTS
        fv, fd, _ = f(x)
        rows.append([x, fv, fd])
    write_csv(path, ["x", "f", "f_prime"], rows, meta)
    return path


def _reproduce_fig1(out_dir):
    return [
        _f_curve_csv(os.path.join(out_dir, "repro_fig1_a.csv"),
                     DirectRbar(AffineRbar(-1.0, 2.0)), PowerLaw(1.0), 2.0,
                     "rbar(x)=2-x; p(x)=x"),
        _f_curve_csv(os.path.join(out_dir, "repro_fig1_b.csv"),
                     DirectRbar(PowerShift(0.1, 0.5)), PowerLaw(2.0), 1.0,
                     "rbar(x)=(x+0.1)^0.5; p(x)=x^2"),
    ]


def _gamma_sweep_csv(path, rate, label, alpha=0.88, k=2.25, n=2):
    players = (RiskProfile(alpha, k),) * n

    def point(gamma):
        game = FragileCprGame(players, rate, PowerLaw(float(gamma)))
        return fuc_sweep_row(game, n)

    rows = [[g, *vals] for g, vals in zip(GAMMA_SWEEP, pool_map(point, list(GAMMA_SWEEP)))]
    meta = [f"config={label}", f"alpha={alpha:.12g}", f"k={k:.12g}", f"n={n}"]
    write_csv(path, ["gamma", "fuc", "fuc_limit", "x_pvt", "ybar", *BOUND_COLUMNS],
              rows, meta)
    return path


def _reproduce_fig2(out_dir):
    return [
        _gamma_sweep_csv(os.path.join(out_dir, "repro_fig2_a.csv"),
                         Affine(1.21, -0.2), "r(x)=1.21-0.2x; p(x)=x^gamma"),
        _gamma_sweep_csv(os.path.join(out_dir, "repro_fig2_b.csv"),
                         Affine(4.0, -1.0), "r(x)=4-x; p(x)=x^gamma"),
    ]


def _reproduce_fig3(out_dir):
    return [
        _gamma_sweep_csv(os.path.join(out_dir, "repro_fig3_a.csv"),
                         Affine(4.0, 1.0), "r(x)=x+4; p(x)=x^gamma"),
        _gamma_sweep_csv(os.path.join(out_dir, "repro_fig3_b.csv"),
                         Affine(4.0, 4.0), "r(x)=4x+4; p(x)=x^gamma"),
    ]


def _alpha_sweep_csv(path, rate, label, k=1.0, n=3):
    curve = fragility_vs_alpha_sweep((rate, PowerLaw(1.0)), k, n)
    meta = [f"config={label}", f"k={k:.12g}", f"n={n}",
            f"rise_then_fall={'true' if curve.rise_then_fall else 'false'}"]
    write_csv(path, ["alpha", "fragility"],
              list(zip(curve.alphas, curve.fragilities)), meta)
    return path


def _reproduce_fig4(out_dir):
    return [
        _alpha_sweep_csv(os.path.join(out_dir, "repro_fig4_a.csv"),
                         Affine(1.25, -0.2), "r(x)=1.25-0.2x; p(x)=x"),
        _alpha_sweep_csv(os.path.join(out_dir, "repro_fig4_b.csv"),
                         Affine(1.1, 0.8), "r(x)=1.1+0.8x; p(x)=x"),
    ]


TABLE1_PANELS = {
    "a": [("r(x)=5-x", Affine(5.0, -1.0)), ("r(x)=1.55-0.5x", Affine(1.55, -0.5))],
    "b": [("r(x)=3+x", Affine(3.0, 1.0)), ("r(x)=1.05+0.9x", Affine(1.05, 0.9))],
}
TABLE1_ALPHA_ROWS = [[0.5, 0.5, 0.5], [0.3, 0.3, 0.9]]


def _reproduce_table1(out_dir):
    paths = []
    for panel, resources in TABLE1_PANELS.items():
        rows = []
        for label, rate in resources:
            frags = alpha_table((rate, PowerLaw(1.0)), 1.0, TABLE1_ALPHA_ROWS, 3)
            for alphas, frag in zip(TABLE1_ALPHA_ROWS, frags):
                rows.append([label, *alphas, frag])
        path = os.path.join(out_dir, f"repro_table1_{panel}.csv")
        write_csv(path, ["resource", "alpha_1", "alpha_2", "alpha_3", "fragility"],
                  rows, ["config=p(x)=x; k=1; n=3"])
        paths.append(path)
    return paths


def _reproduce_example2(out_dir):
    combos = [(n, g, a, k, b)
              for n in EXAMPLE2_GRID["n"] for g in EXAMPLE2_GRID["gamma"]
              for a in EXAMPLE2_GRID["alpha"] for k in EXAMPLE2_GRID["k"]
              for b in EXAMPLE2_GRID["b"]]

    def point(combo):
        n, gamma, alpha, k, b = combo
        from .resources import Constant
        game = FragileCprGame((RiskProfile(alpha, k),) * max(n, 2),
                              Constant(b), PowerLaw(gamma))
        fuc = compute_fuc(game, n)
        closed = (gamma + alpha) / (alpha + gamma / n)
        return [n, gamma, alpha, k, b, fuc, closed, abs(fuc - closed)]

    rows = pool_map(point, combos)
    max_diff = max(row[-1] for row in rows)
    path = os.path.join(out_dir, "repro_example2_grid.csv")
    write_csv(path, ["n", "gamma", "alpha", "k", "b", "fuc_solver",
                     "fuc_closed_form", "abs_diff"],
              rows, [f"max_abs_diff={max_diff:.12g}"])
    return [path]


_TARGET_RUNNERS = {
    "fig1": _reproduce_fig1,
    "fig2": _reproduce_fig2,
    "fig3": _reproduce_fig3,
    "fig4": _reproduce_fig4,
    "table1": _reproduce_table1,
    "example2": _reproduce_example2,
}


def reproduce(target: str, out_dir: str) -> list[str]:
    """Emit the CSV set for one reference target into out_dir."""
    if target not in _TARGET_RUNNERS:
        raise ValueError(f"unknown target {target!r} (expected one of {', '.join(TARGETS)})")
    os.makedirs(out_dir, exist_ok=True)
    return _TARGET_RUNNERS[target](out_dir)
