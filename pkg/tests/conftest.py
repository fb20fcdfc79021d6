"""Shared random-game generators for the test suite.

All sampling is seeded by the caller, and every generator resamples until
the game is nontrivial (a lone player would invest a meaningful amount), so
downstream assertions never trip over degenerate corners.
"""

import numpy as np

from fragile_cpr import (Affine, AffineRbar, Constant, DirectRbar,
                         FragileCprGame, Polynomial, PowerLaw, PowerShift,
                         RiskProfile, best_response, compute_region)


def random_failure(rng, max_gamma=4.0):
    if rng.random() < 0.7:
        return PowerLaw(float(rng.uniform(1.0, max_gamma)))
    degree = int(rng.integers(1, 4))
    coeffs = rng.uniform(0.0, 1.0, size=degree + 1)
    coeffs[0] *= 0.3  # keep p(0) small so most games stay nontrivial
    coeffs = coeffs / coeffs.sum()
    return Polynomial(tuple(float(c) for c in coeffs))


def random_decreasing_rate(rng):
    if rng.random() < 0.5:
        c0 = float(rng.uniform(1.2, 5.0))
        c1 = float(rng.uniform(-(c0 - 1.0) * 0.95, -0.05))
        return Affine(c0, c1)
    b = float(rng.uniform(0.5, 3.0))
    a = float(rng.uniform(-b * 0.95, -0.05))
    return DirectRbar(AffineRbar(a, b))


def random_increasing_rate(rng, allow_constant=True):
    roll = rng.random()
    if roll < 0.35:
        return Affine(float(rng.uniform(1.2, 5.0)), float(rng.uniform(0.05, 4.0)))
    if roll < 0.6:
        return DirectRbar(PowerShift(float(rng.uniform(0.05, 1.0)),
                                     float(rng.uniform(0.2, 1.0))))
    if roll < 0.85 or not allow_constant:
        return DirectRbar(AffineRbar(float(rng.uniform(0.05, 3.0)),
                                     float(rng.uniform(0.3, 3.0))))
    return Constant(float(rng.uniform(0.3, 4.0)))


def random_profile(rng, alpha_lo=0.15):
    return RiskProfile(float(rng.uniform(alpha_lo, 1.0)),
                       float(rng.uniform(0.05, 3.0)))


def _nontrivial(game, min_x_pvt=1e-3):
    try:
        region = compute_region(game, 0)
    except Exception:
        return False
    if region.ybar <= min_x_pvt:
        return False
    return best_response(game, 0, 0.0) > min_x_pvt


def random_homogeneous_game(rng, n=None, trend="any", max_gamma=4.0):
    """Nontrivial game with identical players and the requested rate trend."""
    while True:
        if trend == "decreasing":
            rate = random_decreasing_rate(rng)
        elif trend == "increasing":
            rate = random_increasing_rate(rng)
        else:
            rate = (random_decreasing_rate(rng) if rng.random() < 0.5
                    else random_increasing_rate(rng))
        players = [random_profile(rng)] * (n or int(rng.integers(2, 6)))
        game = FragileCprGame(players, rate, random_failure(rng, max_gamma))
        if _nontrivial(game):
            return game


def random_heterogeneous_k_game(rng, n=None, trend="any"):
    """Alpha-uniform game with distinct loss-aversion indices."""
    while True:
        if trend == "decreasing":
            rate = random_decreasing_rate(rng)
        elif trend == "increasing":
            rate = random_increasing_rate(rng)
        else:
            rate = (random_decreasing_rate(rng) if rng.random() < 0.5
                    else random_increasing_rate(rng))
        m = n or int(rng.integers(2, 6))
        alpha = float(rng.uniform(0.2, 1.0))
        ks = sorted(float(v) for v in rng.uniform(0.05, 3.0, size=m))
        game = FragileCprGame([RiskProfile(alpha, k) for k in ks], rate,
                              random_failure(rng))
        if _nontrivial(game):
            return game


def random_concave_game(rng, n=3):
    """Homogeneous game whose rbar is concave (strictly, most of the time)."""
    while True:
        roll = rng.random()
        if roll < 0.4:
            c0 = float(rng.uniform(1.2, 5.0))
            c1 = float(rng.uniform(-(c0 - 1.0) * 0.95, -0.05))
            rate = Affine(c0, c1)
            alpha = float(rng.uniform(0.2, 0.95))
        elif roll < 0.7:
            rate = DirectRbar(PowerShift(float(rng.uniform(0.05, 1.0)),
                                         float(rng.uniform(0.2, 0.9))))
            alpha = float(rng.uniform(0.2, 1.0))
        elif roll < 0.9:
            rate = Affine(float(rng.uniform(1.2, 5.0)), float(rng.uniform(0.05, 4.0)))
            alpha = float(rng.uniform(0.2, 0.95))
        else:
            # affine rbar: the tangent construction must be the identity
            rate = DirectRbar(AffineRbar(float(rng.uniform(-0.5, 1.0)),
                                         float(rng.uniform(0.8, 2.0))))
            alpha = float(rng.uniform(0.2, 1.0))
        players = [RiskProfile(alpha, float(rng.uniform(0.05, 3.0)))] * n
        try:
            game = FragileCprGame(players, rate, random_failure(rng))
        except ValueError:
            continue
        if _nontrivial(game):
            return game


def rng_for(seed):
    return np.random.default_rng(seed)
