"""Threshold region, best-response map, optimal-share function, oracle."""

import math

import numpy as np
import pytest

from conftest import random_homogeneous_game, rng_for
from fragile_cpr import (AffineRbar, Constant, DirectRbar, DomainError,
                         FragileCprGame, Polynomial, PowerLaw, PowerShift,
                         RiskProfile, best_response, brute_force_best_response,
                         compute_region, g_function)

FIG1A = dict(rate=DirectRbar(AffineRbar(-1.0, 2.0)), failure=PowerLaw(1.0), k=2.0)
FIG1B = dict(rate=DirectRbar(PowerShift(0.1, 0.5)), failure=PowerLaw(2.0), k=1.0)


def _game(rate, failure, k, alpha=1.0, n=1):
    return FragileCprGame([RiskProfile(alpha, k)] * n, rate, failure)


def neutral_game(n=2):
    return _game(Constant(1.0), PowerLaw(1.0), 1.0, n=n)


def test_region_decreasing_reference():
    region = compute_region(_game(**FIG1A), 0)
    assert region.ybar == pytest.approx(0.4384, abs=1e-3)
    assert region.ybar == pytest.approx((5.0 - math.sqrt(17.0)) / 2.0, abs=1e-10)
    assert region.interval == (0.0, region.ybar)
    assert region.zhat is None


def test_region_increasing_reference():
    region = compute_region(_game(**FIG1B), 0)
    assert region.ybar == pytest.approx(0.6855, abs=1e-3)
    assert region.zhat == pytest.approx(0.2493, abs=1e-3)
    assert region.interval == (region.zhat, region.ybar)


def test_region_trivial_when_f_nonpositive():
    game = _game(DirectRbar(AffineRbar(0.0, 1.0)), Polynomial([0.5, 0.5]), 2.0)
    region = compute_region(game, 0)
    assert region.ybar == 0.0
    assert region.interval is None


def test_region_interval_has_positive_decreasing_f():
    rng = rng_for(21)
    for _ in range(30):
        game = random_homogeneous_game(rng)
        region = compute_region(game, 0)
        lo, hi = region.interval
        f = game.f(0)
        for x in np.linspace(lo, hi, 102)[1:-1]:
            fv, fd, _ = f(float(x))
            assert fv > 0.0
            assert fd < 0.0
        if region.ybar > 0.0 and game.players[0].k > 0.0:
            assert abs(f.value(region.ybar)) < 1e-9


def test_best_response_closed_forms():
    game = neutral_game()
    assert best_response(game, 0, 0.0) == pytest.approx(0.25, abs=1e-10)
    assert best_response(game, 0, 1.0 / 6.0) == pytest.approx(1.0 / 6.0, abs=1e-10)


def test_best_response_zero_branch():
    game = _game(**FIG1A)
    assert best_response(game, 0, 0.5) == 0.0


def test_g_function_values():
    game = neutral_game()
    assert g_function(game, 0, 0.25) == pytest.approx(0.25, abs=1e-12)
    assert g_function(game, 0, 1.0 / 3.0) == pytest.approx(1.0 / 6.0, abs=1e-12)
    assert g_function(game, 0, 0.4) == pytest.approx(0.1, abs=1e-12)
    assert g_function(game, 0, 0.4) < g_function(game, 0, 1.0 / 3.0)


def test_g_function_domain_errors():
    game = neutral_game()
    with pytest.raises(DomainError):
        g_function(game, 0, 0.7)  # f < 0 there
    increasing = _game(**FIG1B)
    with pytest.raises(DomainError):
        g_function(increasing, 0, 0.1)  # f' > 0 left of zhat


def test_g_strictly_decreasing_on_interval():
    rng = rng_for(22)
    for _ in range(30):
        game = random_homogeneous_game(rng)
        lo, hi = compute_region(game, 0).interval
        xs = np.linspace(lo + 1e-6, hi - 1e-6, 25)
        values = [g_function(game, 0, float(x)) for x in xs]
        assert all(a > b for a, b in zip(values, values[1:]))


def test_brute_force_matches_root_finder_on_reference():
    game = neutral_game()
    assert brute_force_best_response(game, 0, 0.0, 10 ** 6) == pytest.approx(
        0.25, abs=1.5e-6)


def test_brute_force_zero_branch():
    game = _game(**FIG1A)
    assert brute_force_best_response(game, 0, 0.6, 10 ** 4) == 0.0


def test_brute_force_grid_floor():
    with pytest.raises(ValueError):
        brute_force_best_response(neutral_game(), 0, 0.0, 100)


def test_oracle_equivalence_sample():
    rng = rng_for(23)
    for _ in range(10):
        game = random_homogeneous_game(rng)
        for y in rng.uniform(0.0, 1.0, size=3):
            got = best_response(game, 0, float(y))
            want = brute_force_best_response(game, 0, float(y), 10 ** 6)
            assert got == pytest.approx(want, abs=2e-6)


def test_zero_response_iff_threshold():
    rng = rng_for(24)
    for _ in range(10):
        game = random_homogeneous_game(rng)
        ybar = compute_region(game, 0).ybar
        for y in rng.uniform(0.0, 1.2, size=20):
            y = float(y)
            response = best_response(game, 0, y)
            assert (response == 0.0) == (y >= ybar)


def test_best_response_monotone_decreasing():
    rng = rng_for(25)
    for _ in range(20):
        game = random_homogeneous_game(rng)
        ys = np.sort(rng.uniform(0.0, 1.0, size=10))
        responses = [best_response(game, 0, float(y)) for y in ys]
        for r1, r2 in zip(responses, responses[1:]):
            assert r1 >= r2
            if r1 > 0.0 and r2 > 0.0:
                assert r1 > r2 - 1e-12


def test_best_response_continuity():
    rng = rng_for(26)
    game = random_homogeneous_game(rng)
    for y in rng.uniform(0.0, 0.9, size=20):
        y = float(y)
        base = best_response(game, 0, y)
        gaps = [abs(best_response(game, 0, y + d) - base) for d in (1e-4, 1e-8)]
        assert gaps[1] <= gaps[0] + 1e-12
        assert gaps[1] < 1e-6


def test_best_response_range():
    rng = rng_for(27)
    for _ in range(20):
        game = random_homogeneous_game(rng)
        for y in rng.uniform(0.0, 1.1, size=10):
            response = best_response(game, 0, float(y))
            assert 0.0 <= response < 1.0
            if response > 0.0:
                assert response + float(y) < 1.0
