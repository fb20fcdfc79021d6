"""Equilibrium computation by sequential best-response dynamics.

The game is an aggregative game of weak strategic substitutes: each player's
best response is decreasing in the others' total investment, which makes
round-robin best-response sweeps converge to the unique pure Nash
equilibrium from any starting profile.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .best_response import ResponseRegion, _respond, bisect_root, compute_region
from .game import FragileCprGame, expected_utility

DEFAULT_SWEEP_TOL = 1e-10
DEFAULT_MAX_SWEEPS = 10 ** 5


class TrivialGameError(ValueError):
    """The game has no profitable investment level (ybar = 0)."""


@dataclass(frozen=True)
class EquilibriumResult:
    """Converged equilibrium profile and its diagnostics.

    fragility is the failure probability at the equilibrium total; support is
    the set of players with positive investment; residual is the largest
    per-player distance from their exact best response.
    """

    investments: tuple[float, ...]
    total: float
    fragility: float
    support: frozenset[int]
    sweeps: int
    converged: bool
    residual: float


def solve_pne(game: FragileCprGame, initial=None, sweep_tol: float = DEFAULT_SWEEP_TOL,
              max_sweeps: int = DEFAULT_MAX_SWEEPS) -> EquilibriumResult:
    """Run round-robin best-response sweeps until the profile is a fixed point.

    Starts from all-zeros unless an initial profile in [0, 1)^n is given; the
    equilibrium is unique, so the start only affects the trajectory.
    """
    n = game.n
    if initial is None:
        x = [0.0] * n
    else:
        x = [float(v) for v in initial]
        if len(x) != n:
            raise ValueError(f"initial profile has length {len(x)}, game has {n} players")
        if any(not 0.0 <= v < 1.0 for v in x):
            raise ValueError("initial investments must lie in [0, 1)")

    fs = [game.f(i) for i in range(n)]
    regions = [compute_region(game, i) for i in range(n)]

    total = math.fsum(x)
    converged = False
    sweeps = 0
    for sweep in range(max_sweeps):
        max_delta = 0.0
        for i in range(n):
            y = total - x[i]
            if y < 0.0:
                y = 0.0
            xi = _respond(fs[i], regions[i], y)
            delta = xi - x[i]
            if delta > max_delta:
                max_delta = delta
            elif -delta > max_delta:
                max_delta = -delta
            total += delta
            x[i] = xi
        total = math.fsum(x)
        sweeps = sweep + 1
        if max_delta < sweep_tol:
            converged = True
            break

    residual = 0.0
    for i in range(n):
        y = max(total - x[i], 0.0)
        residual = max(residual, abs(x[i] - _respond(fs[i], regions[i], y)))

    support = frozenset(i for i in range(n) if total < regions[i].ybar)
    fragility = game.failure.eval(min(total, 1.0))[0]
    return EquilibriumResult(tuple(x), total, fragility, support, sweeps,
                             converged, residual)


def _require_homogeneous(game: FragileCprGame) -> None:
    if not game.is_homogeneous:
        raise ValueError("operation requires identical risk profiles for all players")


def solve_homogeneous(game: FragileCprGame, n: int | None = None) -> tuple[float, float]:
    """Total and per-player equilibrium investment for n identical players.

    Solves the shared first-order condition (x/n) f'(x) + alpha f(x) = 0 by
    bisection on the interval where f > 0 and f' < 0.
    """
    _require_homogeneous(game)
    if n is None:
        n = game.n
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    f = game.f(0)
    region = compute_region(game, 0)
    if region.ybar <= 0.0:
        raise TrivialGameError("no profitable investment level: equilibrium is all-zeros")
    alpha = f.alpha
    lo, hi = region.interval

    def h(x):
        fv, fd, _ = f(x)
        return (x / n) * fd + alpha * fv

    if lo == 0.0:
        lo = 1e-15
    x_T = bisect_root(h, lo, hi)
    return x_T, x_T / n


def welfare(game: FragileCprGame, investments) -> float:
    """Utilitarian welfare: the sum of all players' expected utilities."""
    x = [float(v) for v in investments]
    if len(x) != game.n:
        raise ValueError(f"profile has length {len(x)}, game has {game.n} players")
    total = math.fsum(x)
    return math.fsum(
        expected_utility(game, i, x[i], total - x[i]) for i in range(game.n))
