"""Game assembly: players plus a shared resource, and per-player payoffs.

A player who invests x_i while everyone else invests y_i in total earns the
expected utility x_i**alpha_i * f_i(x_i + y_i), where

    f_i(x_T) = rbar_i(x_T) * (1 - p(x_T)) - k_i * p(x_T)

is the player's effective rate of return.  All equilibrium structure flows
through f_i and its first two derivatives.
"""

from __future__ import annotations

from dataclasses import dataclass

from .resources import DirectRbar, DomainError, FailureProb, RateOfReturn


@dataclass(frozen=True)
class RiskProfile:
    """Prospect-theoretic risk parameters of one player.

    alpha is the sensitivity parameter in (0, 1]; k >= 0 is the index of
    loss aversion (k > 1 loss averse, k < 1 gain seeking).
    """

    alpha: float
    k: float

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")
        if not self.k >= 0.0:
            raise ValueError(f"k must be >= 0, got {self.k}")


class EffectiveRateOfReturn:
    """Evaluates f_i(x_T) and its derivatives for one player on [0, 1]."""

    __slots__ = ("player_index", "alpha", "k", "_rate", "_failure")

    def __init__(self, game: "FragileCprGame", player_index: int):
        profile = game.players[player_index]
        self.player_index = player_index
        self.alpha = profile.alpha
        self.k = profile.k
        self._rate = game.rate
        self._failure = game.failure

    def __call__(self, x_T: float) -> tuple[float, float, float]:
        """Return (f, f', f'') at x_T in [0, 1]."""
        rb, rb1, rb2 = self._rate.rbar(self.alpha, x_T)
        pv, p1, p2 = self._failure.eval(x_T)
        surv = 1.0 - pv
        rk = rb + self.k
        return (rb * surv - self.k * pv,
                rb1 * surv - rk * p1,
                rb2 * surv - 2.0 * rb1 * p1 - rk * p2)

    def value(self, x_T: float) -> float:
        return self(x_T)[0]


class FragileCprGame:
    """An ordered set of risk profiles sharing one fragile resource.

    Strategy sets are implicitly [0, 1] per player; the resource must satisfy
    the structural requirements (p convex strictly increasing with p(1)=1,
    rbar positive monotone concave), which are enforced at construction.
    Instances are immutable after construction and safe to share across
    threads.
    """

    def __init__(self, players, rate: RateOfReturn, failure: FailureProb):
        players = tuple(players)
        if not players:
            raise ValueError("a game needs at least one player")
        issues = rate.structural_issues() + failure.structural_issues()
        if issues:
            raise DomainError("invalid resource: " + "; ".join(issues))
        if isinstance(rate, DirectRbar):
            alphas = {p.alpha for p in players}
            if len(alphas) > 1:
                raise ValueError(
                    "directly-specified rbar requires all players to share one alpha")
        self.players = players
        self.rate = rate
        self.failure = failure
        self._f_cache: dict[int, EffectiveRateOfReturn] = {}
        self._region_cache: dict[int, object] = {}

    @property
    def n(self) -> int:
        return len(self.players)

    @property
    def is_homogeneous(self) -> bool:
        return len(set(self.players)) == 1

    @property
    def is_alpha_uniform(self) -> bool:
        return len({p.alpha for p in self.players}) == 1

    def f(self, player_index: int) -> EffectiveRateOfReturn:
        if player_index not in self._f_cache:
            if not 0 <= player_index < self.n:
                raise IndexError(f"player index {player_index} out of range")
            self._f_cache[player_index] = EffectiveRateOfReturn(self, player_index)
        return self._f_cache[player_index]

    def with_players(self, players) -> "FragileCprGame":
        return FragileCprGame(players, self.rate, self.failure)

    def __repr__(self) -> str:
        return (f"FragileCprGame(n={self.n}, rate={self.rate!r}, "
                f"failure={self.failure!r})")


def eval_f(game: FragileCprGame, player_index: int, x_T: float) -> tuple[float, float, float]:
    """Effective rate of return (f, f', f'') of one player at total investment x_T."""
    return game.f(player_index)(x_T)


def expected_utility(game: FragileCprGame, player_index: int, x_i: float,
                     y_i: float) -> float:
    """Expected utility x_i**alpha * f(x_i + y_i).

    Any total investment at or above 1 means certain failure, so the gain
    branch vanishes and the payoff is the pure loss term -k * x_i**alpha.
    """
    if not 0 <= player_index < game.n:
        raise IndexError(f"player index {player_index} out of range")
    if x_i < 0.0 or y_i < 0.0:
        raise DomainError("investments must be nonnegative")
    profile = game.players[player_index]
    if x_i == 0.0:
        return 0.0
    x_T = x_i + y_i
    if x_T >= 1.0:
        return -profile.k * x_i ** profile.alpha
    return x_i ** profile.alpha * game.f(player_index).value(x_T)
