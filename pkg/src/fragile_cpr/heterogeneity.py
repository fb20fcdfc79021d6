"""Experiments on heterogeneous risk attitudes.

Covers three questions: how mean-preserving spreads of the loss-aversion
index move equilibrium fragility (they can only raise it), how fragility
responds to a common shift in loss aversion (it falls), and how fragility
varies with the sensitivity parameter (non-monotone; reported, not
asserted).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .equilibrium import solve_homogeneous, solve_pne
from .game import FragileCprGame, RiskProfile

DEFAULT_N_SAMPLES = 500
SHAPE_TOL = 1e-6

DEFAULT_ALPHA_GRID = tuple(i / 100 for i in range(1, 100)) + (1.0,)


@dataclass(frozen=True)
class MeanPreservingFamily:
    """Sorted loss-aversion vectors sharing a common mean k_mean."""

    n: int
    k_mean: float
    samples: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        for vec in self.samples:
            if len(vec) != self.n:
                raise ValueError(f"vector {vec} has length {len(vec)}, expected {self.n}")
            if any(v < 0.0 for v in vec):
                raise ValueError(f"vector {vec} has a negative entry")
            if list(vec) != sorted(vec):
                raise ValueError(f"vector {vec} is not sorted ascending")
            if abs(math.fsum(vec) / self.n - self.k_mean) >= 1e-12:
                raise ValueError(f"vector {vec} does not have mean {self.k_mean}")


def sample_mean_preserving(n: int, k_mean: float, n_samples: int = DEFAULT_N_SAMPLES,
                           seed: int = 0) -> MeanPreservingFamily:
    """Draw sorted nonnegative k-vectors with exact mean k_mean.

    Uniform draws are shifted to the target mean; vectors with negative
    entries are rejected and redrawn.
    """
    if k_mean <= 0.0:
        raise ValueError(f"k_mean must be > 0, got {k_mean}")
    rng = np.random.default_rng(seed)
    samples = []
    while len(samples) < n_samples:
        raw = rng.uniform(0.0, 2.0 * k_mean, size=n)
        vec = raw - raw.mean() + k_mean
        if vec.min() < 0.0:
            continue
        samples.append(tuple(sorted(float(v) for v in vec)))
    return MeanPreservingFamily(n=n, k_mean=k_mean, samples=tuple(samples))


@dataclass(frozen=True)
class KSpreadReport:
    k_mean: float
    homogeneous_fragility: float
    sample_fragilities: tuple[float, ...]
    min_at_homogeneous: bool


def fragility_under_k_spread(resource, alpha: float,
                             family: MeanPreservingFamily) -> KSpreadReport:
    """Equilibrium fragility of the homogeneous game against every spread.

    The homogeneous game (all k equal to the mean) must be nontrivial; a
    TrivialGameError propagates otherwise.
    """
    rate, failure = resource
    base = FragileCprGame([RiskProfile(alpha, family.k_mean)] * family.n, rate, failure)
    x_home, _ = solve_homogeneous(base)
    frag_home = failure.eval(x_home)[0]

    frags = []
    for vec in family.samples:
        game = FragileCprGame([RiskProfile(alpha, k) for k in vec], rate, failure)
        frags.append(solve_pne(game).fragility)

    min_at_home = all(frag_home <= fr + 1e-12 for fr in frags)
    return KSpreadReport(family.k_mean, frag_home, tuple(frags), min_at_home)


def k_monotone_fragility(resource, alpha: float, k1: float, k2: float,
                         n: int) -> tuple[float, float]:
    """Fragility of two homogeneous games with k2 > k1; the second is lower."""
    if not k2 > k1:
        raise ValueError(f"k2 must exceed k1, got k1={k1}, k2={k2}")
    rate, failure = resource
    frags = []
    for k in (k1, k2):
        game = FragileCprGame([RiskProfile(alpha, k)] * n, rate, failure)
        x_t, _ = solve_homogeneous(game)
        frags.append(failure.eval(x_t)[0])
    return frags[0], frags[1]


def alpha_table(resource, k: float, alpha_rows, n: int) -> tuple[float, ...]:
    """Equilibrium fragility for each row of per-player sensitivity values."""
    rate, failure = resource
    out = []
    for row in alpha_rows:
        if len(row) != n:
            raise ValueError(f"alpha row {row} has length {len(row)}, expected {n}")
        game = FragileCprGame([RiskProfile(a, k) for a in row], rate, failure)
        out.append(solve_pne(game).fragility)
    return tuple(out)


@dataclass(frozen=True)
class AlphaSweepCurve:
    alphas: tuple[float, ...]
    fragilities: tuple[float, ...]
    rise_then_fall: bool


def _is_rise_then_fall(values, tol: float = SHAPE_TOL) -> bool:
    """True when the sign of consecutive differences flips exactly once, + to -."""
    signs = []
    for d in np.diff(values):
        if d > tol:
            s = 1
        elif d < -tol:
            s = -1
        else:
            continue
        if not signs or signs[-1] != s:
            signs.append(s)
    return signs == [1, -1]


def fragility_vs_alpha_sweep(resource, k: float, n: int,
                             alpha_grid=None) -> AlphaSweepCurve:
    """Equilibrium fragility across a grid of common sensitivity values."""
    rate, failure = resource
    alphas = tuple(alpha_grid) if alpha_grid is not None else DEFAULT_ALPHA_GRID
    frags = []
    for a in alphas:
        game = FragileCprGame([RiskProfile(a, k)] * n, rate, failure)
        x_t, _ = solve_homogeneous(game)
        frags.append(failure.eval(x_t)[0])
    return AlphaSweepCurve(alphas, tuple(frags), _is_rise_then_fall(frags))
