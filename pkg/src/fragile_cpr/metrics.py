"""Fragility and inefficiency metrics with their analytic bounds.

Everything here is defined for games with homogeneous players.  The central
quantity is fragility under competition: the equilibrium failure probability
with n players relative to the failure probability under a single user's
optimal investment (x_pvt).  The module also evaluates every closed-form
bound on that ratio, with explicit applicability per rate-of-return regime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .best_response import best_response, bisect_root, compute_region
from .equilibrium import TrivialGameError, solve_homogeneous
from .game import FragileCprGame
from .resources import Affine, AffineRbar, DirectRbar, PowerLaw

X_STAR_R_SEARCH_CAP = 1e6
ZETA_GRID_N = 10 ** 5
ZETA_ABS_TOL = 1e-8
_BOUND_SLACK = 1e-9
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class BoundEntry:
    value: float
    applicable: bool
    holds: bool | None  # None when the bound does not apply to this game


@dataclass(frozen=True)
class BoundsReport:
    """Every fragility bound evaluated on one homogeneous game.

    fuc is the fragility ratio at the requested n; fuc_limit is its
    many-player limit p(ybar)/p(x_pvt).  bound_values maps bound names to
    (value, applicable, holds); the tightness entries carry the predicted
    flag (1.0 or 0.0) as their value, and holds records whether the
    prediction agrees with the actual comparison.
    """

    n: int
    x_pvt: float
    ybar: float
    investment_ratio: float
    fuc: float
    fuc_limit: float
    x_star_r: float
    zeta: float
    bound_values: dict[str, BoundEntry]


def _require_homogeneous(game: FragileCprGame) -> None:
    if not game.is_homogeneous:
        raise ValueError("metric defined only for homogeneous players")


def compute_x_pvt(game: FragileCprGame) -> float:
    """Optimal investment by a single user (the best response to y = 0)."""
    x_pvt = best_response(game, 0, 0.0)
    if x_pvt <= 0.0:
        raise TrivialGameError("no profitable investment level for a single user")
    return x_pvt


def compute_fuc(game: FragileCprGame, n: int) -> float:
    """Fragility under competition: p(total at n-player equilibrium) / p(x_pvt)."""
    _require_homogeneous(game)
    x_pvt = compute_x_pvt(game)
    x_tn, _ = solve_homogeneous(game, n)
    p_pvt = game.failure.eval(x_pvt)[0]
    if p_pvt <= 0.0:
        return math.inf
    return game.failure.eval(x_tn)[0] / p_pvt


def fuc_limit(game: FragileCprGame) -> float:
    """Many-player limit of fragility under competition, p(ybar)/p(x_pvt)."""
    _require_homogeneous(game)
    x_pvt = compute_x_pvt(game)
    ybar = compute_region(game, 0).ybar
    p_pvt = game.failure.eval(x_pvt)[0]
    if p_pvt <= 0.0:
        return math.inf
    return game.failure.eval(min(ybar, 1.0))[0] / p_pvt


def _rbar_positive_edge(rate) -> float:
    """Where a decreasing rbar reaches zero (beyond 1 for any valid game)."""
    if isinstance(rate, Affine) and rate.c1 < 0.0:
        return (rate.c0 - 1.0) / (-rate.c1)
    if isinstance(rate, DirectRbar) and isinstance(rate.family, AffineRbar) \
            and rate.family.a < 0.0:
        return -rate.family.b / rate.family.a
    return math.inf


def compute_x_star_r(game: FragileCprGame) -> float:
    """Maximizer of x**alpha * rbar(x) over [0, inf).

    Finite (the root of x*rbar'(x) + alpha*rbar(x) = 0) only when rbar is
    strictly decreasing; unbounded for increasing or constant rates.
    """
    if not game.is_alpha_uniform:
        raise ValueError("x_star_r requires a common sensitivity parameter")
    rate = game.rate
    if rate.trend != "decreasing":
        return math.inf
    alpha = game.players[0].alpha
    edge = _rbar_positive_edge(rate) * (1.0 - 1e-12)

    def phi(x):
        v, d1, _ = rate.rbar(alpha, x)
        return x * d1 + alpha * v

    lo = 1e-9
    hi = min(2.0, edge)
    while phi(hi) > 0.0:
        nxt = min(2.0 * hi, edge)
        if nxt == hi or nxt > X_STAR_R_SEARCH_CAP:
            return math.inf
        hi = nxt
    return bisect_root(phi, lo, hi)


def compute_zeta(p) -> float:
    """Convexity exponent sup of x*p'(x)/p(x) over (0, 1).

    Equals gamma exactly for the pure power family; polynomials are handled
    numerically by a coarse grid plus golden-section refinement.
    """
    if isinstance(p, PowerLaw):
        return p.gamma

    def ratio(x):
        pv, d1, _ = p.eval(x)
        if pv <= 0.0:
            return 0.0
        return x * d1 / pv

    xs = np.linspace(1e-9, 1.0 - 1e-12, ZETA_GRID_N)
    vals = [ratio(float(x)) for x in xs]
    j = int(np.argmax(vals))
    lo = float(xs[max(j - 1, 0)])
    hi = float(xs[min(j + 1, len(xs) - 1)])

    # Golden-section maximization of the ratio on [lo, hi].
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = ratio(c), ratio(d)
    while b - a > ZETA_ABS_TOL:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = ratio(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = ratio(d)
    return max(vals[j], fc, fd)


def social_optimum(game: FragileCprGame, n: int) -> tuple[float, float, float]:
    """Welfare-maximizing profile for n identical players.

    The welfare-optimal total equals the single-user optimum x_pvt split
    equally, with welfare n**(1-alpha) * x_pvt**alpha * f(x_pvt).
    """
    _require_homogeneous(game)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    x_pvt = compute_x_pvt(game)
    alpha = game.players[0].alpha
    w = n ** (1.0 - alpha) * x_pvt ** alpha * game.f(0).value(x_pvt)
    return x_pvt, x_pvt / n, w


def price_of_anarchy(game: FragileCprGame, n: int) -> float:
    """Optimal welfare over equilibrium welfare for n identical players."""
    _require_homogeneous(game)
    _, _, w_opt = social_optimum(game, n)
    x_tn, _ = solve_homogeneous(game, n)
    alpha = game.players[0].alpha
    w_pne = n ** (1.0 - alpha) * x_tn ** alpha * game.f(0).value(x_tn)
    if w_pne <= 1e-15:
        return math.inf
    return w_opt / w_pne


def tangent_perturbation(game: FragileCprGame, player_index: int = 0) -> FragileCprGame:
    """Replace rbar by its tangent line at the single-user optimum.

    The perturbed game keeps the same x_pvt (the tangent matches rbar and
    rbar' there) and can only raise the investment threshold ybar, because
    the tangent of a concave function dominates it everywhere.
    """
    if not game.is_alpha_uniform:
        raise ValueError("tangent construction requires a common sensitivity parameter")
    alpha = game.players[player_index].alpha
    x_pvt = best_response(game, player_index, 0.0)
    if x_pvt <= 0.0:
        raise TrivialGameError("no profitable investment level for a single user")
    v, d1, _ = game.rate.rbar(alpha, x_pvt)
    tangent = DirectRbar(AffineRbar(a=d1, b=v - x_pvt * d1))
    return FragileCprGame(game.players, tangent, game.failure)


def evaluate_bounds(game: FragileCprGame, n: int) -> BoundsReport:
    """Evaluate every fragility bound with applicability and a holds flag."""
    _require_homogeneous(game)
    profile = game.players[0]
    alpha, k = profile.alpha, profile.k
    rate, failure = game.rate, game.failure
    decreasing = rate.trend == "decreasing"

    x_pvt = compute_x_pvt(game)
    ybar = compute_region(game, 0).ybar
    ratio = ybar / x_pvt
    fuc = compute_fuc(game, n)
    limit = fuc_limit(game)
    zeta = compute_zeta(failure)
    x_star_r = compute_x_star_r(game)
    p_pvt = failure.eval(x_pvt)[0]

    bounds: dict[str, BoundEntry] = {}

    def entry(name, value, applicable, holds):
        bounds[name] = BoundEntry(value, applicable, holds if applicable else None)

    v42 = 1.0 + 2.0 / alpha
    entry("thm42_ratio", v42, decreasing, ratio < v42 + _BOUND_SLACK)

    v43 = v42 ** failure.degree
    entry("cor43_fuc", v43, decreasing, limit <= v43 + _BOUND_SLACK)

    rb0 = rate.rbar(alpha, 0.0)[0]
    rb1, rb1p, _ = rate.rbar(alpha, 1.0)
    if decreasing and x_star_r < 1.0 - _BOUND_SLACK and isinstance(failure, PowerLaw):
        v44lo = rb1 / (rb1 + k) * (1.0 / x_star_r) ** failure.gamma
        entry("thm44_lower", v44lo, True, v44lo <= limit + _BOUND_SLACK)
    else:
        entry("thm44_lower", math.nan, False, None)

    if decreasing and x_star_r > 1.0 + _BOUND_SLACK:
        denom = rb1p + alpha * rb1
        v44up = rb0 / (rb0 + k) * (1.0 + (zeta * (rb0 + k) + k * alpha) / denom)
        entry("thm44_upper", v44up, True, limit <= v44up + _BOUND_SLACK)
    else:
        entry("thm44_upper", math.nan, False, None)

    v46r = 1.0 + 1.0 / alpha
    entry("thm46_ratio", v46r, not decreasing, ratio <= v46r + _BOUND_SLACK)
    v46f = 1.0 + zeta / alpha
    entry("thm46_fuc", v46f, not decreasing, limit <= v46f + _BOUND_SLACK)

    trivial = math.inf if p_pvt <= 0.0 else 1.0 / p_pvt
    entry("trivial", trivial, True, limit <= trivial + _BOUND_SLACK)

    # Tightness predictions: value records the predicted flag, holds records
    # agreement between the closed-form condition and the actual comparison.
    is_linear_p = isinstance(failure, PowerLaw) and failure.gamma == 1.0
    if decreasing and is_linear_p:
        x_c = alpha / (alpha + 2.0)
        rv, rd, _ = rate.rbar(alpha, x_c)
        predicted = 2.0 * x_c * rd + alpha * rv <= k * alpha * (1.0 + alpha)
        actual = v42 <= trivial
        entry("prop45_tighter", 1.0 if predicted else 0.0, True, predicted == actual)
    else:
        entry("prop45_tighter", math.nan, False, None)

    if not decreasing and isinstance(failure, PowerLaw):
        g = failure.gamma
        x_c = (alpha / (alpha + g)) ** (1.0 / g)
        rd = rate.rbar(alpha, x_c)[1]
        predicted = x_c * rd <= k * alpha * (1.0 + alpha / g)
        actual = 1.0 + g / alpha <= trivial
        entry("prop47_tighter", 1.0 if predicted else 0.0, True, predicted == actual)
    else:
        entry("prop47_tighter", math.nan, False, None)

    return BoundsReport(n=n, x_pvt=x_pvt, ybar=ybar, investment_ratio=ratio,
                        fuc=fuc, fuc_limit=limit, x_star_r=x_star_r, zeta=zeta,
                        bound_values=bounds)
