"""Best-response computation via the first-order condition.

A positive best response to rivals' total y is the unique root of

    l(x) = x * f'(x + y) + alpha * f(x + y)

inside the region where f > 0 and f' < 0; the response is exactly zero once
y reaches the player-specific threshold ybar (the root of f).  Bisection is
used throughout: every bracket below encloses exactly one sign change, so
convergence is guaranteed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .game import EffectiveRateOfReturn, FragileCprGame
from .resources import DomainError

ROOT_TOL = 1e-12
MAX_BISECT_ITER = 200
BRACKET_EPS = 1e-15
UNIT_CAP = 1.0 - 1e-9


def bisect_root(fn, lo: float, hi: float, tol: float = ROOT_TOL,
                max_iter: int = MAX_BISECT_ITER) -> float:
    """Root of fn on [lo, hi]; fn(lo) and fn(hi) must not share a strict sign."""
    flo = fn(lo)
    if flo == 0.0:
        return lo
    fhi = fn(hi)
    if fhi == 0.0:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise ValueError(f"no sign change on [{lo}, {hi}]: f(lo)={flo}, f(hi)={fhi}")
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        fm = fn(mid)
        if fm == 0.0:
            return mid
        if (fm > 0.0) == (flo > 0.0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class ResponseRegion:
    """Player-specific investment geometry.

    ybar is the rivals'-investment threshold above which staying out is the
    unique best response; interval is the band of total investment where
    f > 0 and f' < 0 (all positive best responses land there); zhat is the
    stationary point of f when the rate of return is increasing.
    """

    ybar: float
    interval: tuple[float, float] | None
    zhat: float | None


def _region_for(f: EffectiveRateOfReturn, increasing_rbar: bool) -> ResponseRegion:
    k = f.k
    if not increasing_rbar:
        # f is strictly decreasing: positive play possible iff f(0) > 0.
        if f.value(0.0) <= 0.0:
            return ResponseRegion(0.0, None, None)
        ybar = 1.0 if k == 0.0 else bisect_root(f.value, 0.0, 1.0)
        return ResponseRegion(ybar, (0.0, ybar), None)

    # Increasing rbar makes f concave, so its derivative crosses zero at most
    # once and the maximum of f sits at that crossing.
    d0 = f(0.0)[1]
    if d0 <= 0.0:
        if f.value(0.0) <= 0.0:
            return ResponseRegion(0.0, None, None)
        zhat = 0.0
    else:
        zhat = bisect_root(lambda x: f(x)[1], 0.0, 1.0)
        if f.value(zhat) <= 0.0:
            return ResponseRegion(0.0, None, None)
    ybar = 1.0 if k == 0.0 else bisect_root(f.value, zhat, 1.0)
    return ResponseRegion(ybar, (zhat, ybar), zhat)


def compute_region(game: FragileCprGame, player_index: int) -> ResponseRegion:
    """Threshold ybar, positive-response interval and zhat for one player."""
    cache = game._region_cache
    region = cache.get(player_index)
    if region is None:
        f = game.f(player_index)
        region = _region_for(f, game.rate.trend == "increasing")
        cache[player_index] = region
    return region


def _respond(f: EffectiveRateOfReturn, region: ResponseRegion, y: float) -> float:
    """Best response given a precomputed region (hot path for the dynamics)."""
    ybar = region.ybar
    if ybar <= 0.0 or y >= ybar:
        return 0.0
    lo = BRACKET_EPS
    if region.zhat is not None and region.zhat > y:
        lo = region.zhat - y
    hi = min(ybar, UNIT_CAP) - y
    if hi <= lo:
        return 0.0
    alpha = f.alpha

    def l(x):
        fv, fd, _ = f(x + y)
        return x * fd + alpha * fv

    return bisect_root(l, lo, hi)


def best_response(game: FragileCprGame, player_index: int, y: float) -> float:
    """Unique best response of a player to rivals' total investment y >= 0."""
    if y < 0.0:
        raise DomainError(f"rivals' total investment must be >= 0, got {y}")
    return _respond(game.f(player_index), compute_region(game, player_index), y)


def g_function(game: FragileCprGame, player_index: int, x_T: float) -> float:
    """Optimal investment share -alpha * f(x_T) / f'(x_T) at total investment x_T.

    Only defined where f > 0 and f' < 0; strictly decreasing there, which is
    what makes the equilibrium unique.
    """
    fv, fd, _ = game.f(player_index)(x_T)
    if fd >= 0.0 or fv <= 0.0:
        raise DomainError(
            f"g undefined at x_T={x_T}: needs f > 0 and f' < 0, got f={fv}, f'={fd}")
    return -game.players[player_index].alpha * fv / fd


def brute_force_best_response(game: FragileCprGame, player_index: int, y: float,
                              grid_n: int = 10 ** 6) -> float:
    """Grid argmax of the expected utility over {0, 1/grid_n, ..., 1}.

    Independent oracle for the root-finding path; ties resolve to the
    smallest investment.
    """
    if grid_n < 10 ** 4:
        raise ValueError(f"grid_n must be >= 1e4, got {grid_n}")
    profile = game.players[player_index]
    x = np.linspace(0.0, 1.0, grid_n + 1)
    x_T = x + y
    p = game.failure.value(x_T)
    rb = game.rate.rbar_value(profile.alpha, np.minimum(x_T, 1.0))
    f = rb * (1.0 - p) - profile.k * p
    utility = x ** profile.alpha * f
    utility[0] = 0.0
    best = int(np.argmax(utility))
    if utility[best] <= 0.0:
        return 0.0
    return float(x[best])
