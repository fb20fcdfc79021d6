"""Equilibrium dynamics: convergence, uniqueness, symmetry, welfare."""

import math

import numpy as np
import pytest

from conftest import (random_heterogeneous_k_game, random_homogeneous_game,
                      rng_for)
from fragile_cpr import (Affine, Constant, FragileCprGame, PowerLaw,
                         RiskProfile, TrivialGameError, best_response,
                         compute_region, solve_homogeneous, solve_pne, welfare)


def neutral_game(n=2):
    return FragileCprGame([RiskProfile(1.0, 1.0)] * n, Constant(1.0), PowerLaw(1.0))


def table1a_game(alphas=(0.5, 0.5, 0.5)):
    return FragileCprGame([RiskProfile(a, 1.0) for a in alphas],
                          Affine(5.0, -1.0), PowerLaw(1.0))


def test_two_player_closed_form():
    result = solve_pne(neutral_game())
    assert result.converged
    assert result.total == pytest.approx(1.0 / 3.0, abs=1e-8)
    assert result.fragility == pytest.approx(1.0 / 3.0, abs=1e-8)
    for x in result.investments:
        assert x == pytest.approx(1.0 / 6.0, abs=1e-8)
    assert result.support == frozenset({0, 1})


def test_table1a_fragilities():
    assert solve_pne(table1a_game()).fragility == pytest.approx(0.3846, abs=1e-3)
    hetero = solve_pne(table1a_game((0.3, 0.3, 0.9)))
    assert hetero.fragility == pytest.approx(0.4018, abs=1e-3)


def test_equilibrium_invariants():
    rng = rng_for(31)
    for _ in range(15):
        game = random_heterogeneous_k_game(rng)
        result = solve_pne(game)
        assert result.converged
        assert result.total == pytest.approx(math.fsum(result.investments), abs=1e-12)
        assert result.total < 1.0
        for i in range(game.n):
            region = compute_region(game, i)
            in_support = result.total < region.ybar
            assert (i in result.support) == in_support
            if in_support:
                x_i = result.investments[i]
                fv, fd, _ = game.f(i)(result.total)
                assert abs(x_i * fd + game.players[i].alpha * fv) < 1e-8
            else:
                assert result.investments[i] == 0.0


def test_fixed_point_residual():
    rng = rng_for(32)
    for _ in range(10):
        game = random_homogeneous_game(rng)
        result = solve_pne(game, sweep_tol=1e-10)
        assert result.residual < 10 * 1e-10


def test_uniqueness_from_random_starts():
    rng = rng_for(33)
    for _ in range(5):
        game = random_heterogeneous_k_game(rng)
        baseline = solve_pne(game).total
        for _ in range(5):
            initial = rng.uniform(0.0, 1.0 / game.n, size=game.n)
            total = solve_pne(game, initial=list(initial)).total
            assert total == pytest.approx(baseline, abs=1e-6)


def test_homogeneous_symmetry_and_agreement():
    rng = rng_for(34)
    for _ in range(10):
        game = random_homogeneous_game(rng)
        result = solve_pne(game)
        spread = max(result.investments) - min(result.investments)
        assert spread < 1e-8
        x_t, per = solve_homogeneous(game)
        assert x_t == pytest.approx(result.total, abs=1e-8)
        assert per == pytest.approx(x_t / game.n, abs=1e-15)


def test_homogeneous_closed_form():
    # constant rate of return: total solves x^gamma (gamma/n + alpha) = alpha b^alpha / (b^alpha + k)
    rng = rng_for(35)
    for _ in range(20):
        alpha = float(rng.uniform(0.2, 1.0))
        k = float(rng.uniform(0.1, 3.0))
        b = float(rng.uniform(0.3, 3.0))
        gamma = float(rng.uniform(1.0, 4.0))
        n = int(rng.integers(1, 30))
        game = FragileCprGame([RiskProfile(alpha, k)] * max(n, 2), Constant(b),
                              PowerLaw(gamma))
        x_t, _ = solve_homogeneous(game, n)
        expected = (alpha * b ** alpha / ((b ** alpha + k) * (gamma / n + alpha))) ** (1.0 / gamma)
        assert x_t == pytest.approx(expected, abs=1e-10)


def test_homogeneous_n1_is_single_user_optimum():
    rng = rng_for(36)
    for _ in range(10):
        game = random_homogeneous_game(rng)
        x_t, per = solve_homogeneous(game, 1)
        assert per == x_t
        assert x_t == pytest.approx(best_response(game, 0, 0.0), abs=1e-9)


def test_trivial_game_error():
    # p(0) = 0.5 makes f(0) = 0.1^0.5 * 0.5 - 2 * 0.5 < 0: no profitable level
    from fragile_cpr import Polynomial
    game = FragileCprGame([RiskProfile(0.5, 2.0)] * 2, Constant(0.1),
                          Polynomial([0.5, 0.5]))
    with pytest.raises(TrivialGameError):
        solve_homogeneous(game)
    result = solve_pne(game)
    assert result.total == 0.0
    assert result.support == frozenset()


def test_total_increasing_in_n():
    game = table1a_game()
    totals = [solve_homogeneous(game, n)[0] for n in range(2, 31)]
    ybar = compute_region(game, 0).ybar
    assert all(a < b for a, b in zip(totals, totals[1:]))
    gaps = [ybar - t for t in totals]
    assert all(a > b for a, b in zip(gaps, gaps[1:]))
    assert all(g > 0.0 for g in gaps)


def test_welfare_examples():
    single = FragileCprGame([RiskProfile(1.0, 1.0)], Constant(1.0), PowerLaw(1.0))
    assert welfare(single, [0.0]) == 0.0
    assert welfare(single, [0.25]) == pytest.approx(0.125, abs=1e-15)
    game = neutral_game()
    assert welfare(game, [1.0 / 6.0, 1.0 / 6.0]) == pytest.approx(1.0 / 9.0, abs=1e-12)


def test_welfare_length_check():
    with pytest.raises(ValueError):
        welfare(neutral_game(), [0.1])


def test_investments_ordered_by_loss_aversion():
    rng = rng_for(37)
    for _ in range(15):
        game = random_heterogeneous_k_game(rng)
        result = solve_pne(game)
        ks = [p.k for p in game.players]
        order = np.argsort(ks, kind="stable")
        xs = [result.investments[i] for i in order]
        for a, b in zip(xs, xs[1:]):
            assert a >= b - 1e-10
