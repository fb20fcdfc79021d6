"""Game assembly and the effective rate of return."""

import numpy as np
import pytest

from conftest import random_homogeneous_game, rng_for
from fragile_cpr import (Affine, AffineRbar, Constant, DirectRbar, DomainError,
                         FragileCprGame, Polynomial, PowerLaw, PowerShift,
                         RiskProfile, eval_f, expected_utility)


def neutral_game(n=1, b=1.0, gamma=1.0, alpha=1.0, k=1.0):
    return FragileCprGame([RiskProfile(alpha, k)] * n, Constant(b), PowerLaw(gamma))


def test_risk_profile_bounds():
    with pytest.raises(ValueError):
        RiskProfile(0.0, 1.0)
    with pytest.raises(ValueError):
        RiskProfile(1.2, 1.0)
    with pytest.raises(ValueError):
        RiskProfile(0.5, -0.1)


def test_game_rejects_invalid_resource():
    with pytest.raises(DomainError):
        FragileCprGame([RiskProfile(0.5, 1.0)], Affine(1.0, 0.5), PowerLaw(1.0))
    with pytest.raises(DomainError):
        FragileCprGame([RiskProfile(0.5, 1.0)], Affine(5.0, -1.0), Polynomial([0.3, 0.3]))


def test_direct_rbar_needs_shared_alpha():
    players = [RiskProfile(0.5, 1.0), RiskProfile(0.7, 1.0)]
    with pytest.raises(ValueError):
        FragileCprGame(players, DirectRbar(AffineRbar(-1.0, 2.0)), PowerLaw(1.0))


def test_expected_utility_examples():
    game = neutral_game()
    # f(x) = 1 - 2x for b=1, gamma=1, k=1
    assert expected_utility(game, 0, 0.25, 0.0) == pytest.approx(0.125, abs=1e-15)
    assert expected_utility(game, 0, 0.0, 0.3) == 0.0
    # total at or past 1 is certain failure: pure loss branch
    got = expected_utility(game, 0, 0.5, 0.6)
    assert got == pytest.approx(-1.0 * 0.5 ** 1.0, abs=1e-15)
    assert got < 0.0


def test_expected_utility_index_error():
    with pytest.raises(IndexError):
        expected_utility(neutral_game(), 3, 0.1, 0.0)


def test_eval_f_risk_neutral_line():
    game = neutral_game()
    f, d1, d2 = eval_f(game, 0, 0.5)
    assert f == pytest.approx(0.0, abs=1e-15)
    assert d1 == pytest.approx(-2.0, abs=1e-15)
    assert d2 == pytest.approx(0.0, abs=1e-15)


def test_eval_f_reference_roots():
    # rbar = 2 - x, p = x, k = 2: f crosses zero at 0.4384
    g = FragileCprGame([RiskProfile(1.0, 2.0)], DirectRbar(AffineRbar(-1.0, 2.0)),
                       PowerLaw(1.0))
    assert abs(eval_f(g, 0, 0.4384)[0]) < 1e-3
    # rbar = (x+0.1)^0.5, p = x^2, k = 1: f crosses zero at 0.6855
    g = FragileCprGame([RiskProfile(1.0, 1.0)], DirectRbar(PowerShift(0.1, 0.5)),
                       PowerLaw(2.0))
    assert abs(eval_f(g, 0, 0.6855)[0]) < 1e-3


def test_eval_f_domain():
    with pytest.raises(DomainError):
        eval_f(neutral_game(), 0, 1.2)


def test_f_boundary_values():
    rng = rng_for(11)
    for _ in range(25):
        game = random_homogeneous_game(rng)
        k = game.players[0].k
        f0 = eval_f(game, 0, 0.0)[0]
        rb0 = game.rate.rbar(game.players[0].alpha, 0.0)[0]
        p0 = game.failure.eval(0.0)[0]
        assert f0 == pytest.approx(rb0 * (1.0 - p0) - k * p0, rel=1e-12, abs=1e-12)
        if p0 == 0.0:
            assert f0 == rb0
        assert eval_f(game, 0, 1.0)[0] == pytest.approx(-k, rel=1e-12, abs=1e-12)


def test_f_strictly_decreasing_when_rbar_decreasing():
    rng = rng_for(12)
    for _ in range(20):
        game = random_homogeneous_game(rng, trend="decreasing")
        for x in np.linspace(0.0, 0.999, 40):
            assert eval_f(game, 0, float(x))[1] < 0.0


def test_f_concave_when_rbar_increasing():
    rng = rng_for(13)
    for _ in range(20):
        game = random_homogeneous_game(rng, trend="increasing")
        for x in np.linspace(0.0, 0.999, 40):
            assert eval_f(game, 0, float(x))[2] <= 1e-9


def test_f_and_fprime_decrease_in_k():
    rng = rng_for(14)
    for _ in range(20):
        game = random_homogeneous_game(rng)
        alpha = game.players[0].alpha
        k1 = game.players[0].k
        k2 = k1 + float(rng.uniform(0.1, 2.0))
        game2 = game.with_players([RiskProfile(alpha, k2)] * game.n)
        for x in np.linspace(0.05, 0.95, 19):
            p = game.failure.eval(float(x))[0]
            f1, d1, _ = eval_f(game, 0, float(x))
            f2, d2, _ = eval_f(game2, 0, float(x))
            if p > 0.0:
                assert f2 < f1
                assert d2 < d1


def test_f_derivatives_match_finite_differences():
    rng = rng_for(15)
    for _ in range(15):
        game = random_homogeneous_game(rng)
        f = game.f(0)
        for x in rng.uniform(0.05, 0.95, size=30):
            x = float(x)
            v0, d1, d2 = f(x)
            fd1 = (f(x + 1e-6)[0] - f(x - 1e-6)[0]) / 2e-6
            fd2 = (f(x + 1e-4)[0] - 2.0 * v0 + f(x - 1e-4)[0]) / 1e-8
            assert d1 == pytest.approx(fd1, rel=1e-5, abs=1e-8)
            assert d2 == pytest.approx(fd2, rel=1e-3, abs=1e-5)
