"""PTAS for two-strategy anonymous games.

Mixed strategies are restricted to multiples of 1/k; level ``i`` of the
induced (k+1)-strategy game means "play strategy 1 with probability i/k".
Payoffs of the induced game are exact expectations in the original game, so
an equilibrium search over level partitions (the same assignment check used
for pure equilibria) yields quantized mixed profiles with certified regret.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .game import AnonymousGame, enumerate_partitions, mixed_regret_2s, num_partitions, rank_partition, rank_partitions
from .rounding import RoundingConfig, round_probabilities
from .search import PartitionSearch

DEFAULT_BUDGET = 250_000
DEFAULT_K_CAP = 400
TOL = 1e-12


class BudgetExceeded(Exception):
    """The level-partition enumeration is larger than the configured budget."""


def _require_two_strategies(game: AnonymousGame) -> None:
    if game.s != 2:
        raise ValueError(f"the PTAS handles two-strategy games only, got s={game.s}")


def _level_pmfs(levels: np.ndarray, k: int) -> np.ndarray:
    """Poisson binomial pmfs for many level multisets at once.

    ``levels`` is ``(rows, k+1)``: how many of the other players sit at each
    level. All rows describe the same number of players, so the DP runs
    column by column across rows.
    """
    rows, width = levels.shape
    players = int(levels[0].sum()) if rows else 0
    grid = np.arange(width) / k
    probs = np.stack([np.repeat(grid, row) for row in levels]) if players else np.zeros((rows, 0))
    pmf = np.zeros((rows, players + 1))
    pmf[:, 0] = 1.0
    for t in range(players):
        p = probs[:, t : t + 1]
        head = pmf[:, : t + 2]
        head[:, 1:] = head[:, 1:] * (1.0 - p) + head[:, :-1] * p
        head[:, 0] *= 1.0 - p[:, 0]
    return pmf


class QuantizedGame:
    """The (k+1)-level game induced by a two-strategy game."""

    def __init__(self, base: AnonymousGame, k: int) -> None:
        _require_two_strategies(base)
        if k < 1:
            raise ValueError("k must be positive")
        self.base = base
        self.k = int(k)
        self._pmf_cache: dict[tuple[int, ...], np.ndarray] = {}

    @property
    def n(self) -> int:
        return self.base.n

    def _others_pmf(self, others: tuple[int, ...]) -> np.ndarray:
        # keyed by the leave-one-out multiset; duplicate inserts are harmless
        pmf = self._pmf_cache.get(others)
        if pmf is None:
            pmf = _level_pmfs(np.asarray([others], dtype=np.int64), self.k)[0]
            self._pmf_cache[others] = pmf
        return pmf

    def strategy_payoffs(self, player: int, others: Sequence[int]) -> tuple[float, float]:
        """Expected utility of the two original strategies against the level partition ``others``."""
        others = tuple(int(c) for c in others)
        if len(others) != self.k + 1 or sum(others) != self.n - 1 or min(others) < 0:
            raise ValueError(f"others must split {self.n - 1} players over {self.k + 1} levels")
        pmf = self._others_pmf(others)
        u = self.base.utilities[player]
        return float(pmf @ u[0]), float(pmf @ u[1])

    def payoff(self, player: int, level: int, others: Sequence[int]) -> float:
        if not 0 <= level <= self.k:
            raise ValueError(f"level must lie in [0, {self.k}]")
        e1, e2 = self.strategy_payoffs(player, others)
        return (1.0 - level / self.k) * e1 + (level / self.k) * e2

    def payoff_tables(self) -> tuple[np.ndarray, np.ndarray]:
        """Expected payoffs of both strategies for every (others partition, player), each ``(P_others, n)``."""
        others = enumerate_partitions(self.n - 1, self.k + 1)
        pmf = _level_pmfs(others, self.k)
        u = self.base.utilities
        return pmf @ u[:, 0, :].T, pmf @ u[:, 1, :].T

    def regret_tensor(self) -> tuple[np.ndarray, np.ndarray]:
        """Level partitions of all n players and regret[r, level, player]."""
        k, n = self.k, self.n
        full = enumerate_partitions(n, k + 1)
        e1, e2 = self.payoff_tables()
        best = np.maximum(e1, e2)
        regret = np.full((full.shape[0], k + 1, n), np.inf)
        for level in range(k + 1):
            rows = np.flatnonzero(full[:, level] > 0)
            others = full[rows].copy()
            others[:, level] -= 1
            ro = rank_partitions(others)
            frac = level / k
            pay = (1.0 - frac) * e1[ro] + frac * e2[ro]
            regret[rows, level, :] = np.maximum(best[ro] - pay, 0.0)
        return full, regret


def quantized_payoff(q: QuantizedGame, player: int, level: int, others: Sequence[int]) -> float:
    return q.payoff(player, level, others)


@dataclass
class PtasSolveReport:
    mixed: list[float]
    levels: list[int]
    exact_regret: float
    per_player: list[float]
    k_used: int
    threshold_used: float
    partitions_examined: int
    partitions_total: int
    thresholds_tried: list[float] = field(default_factory=list)
    rounding_gap: float | None = None

    def to_dict(self) -> dict:
        out = {
            "mixed": self.mixed,
            "levels": self.levels,
            "exact_regret": self.exact_regret,
            "per_player": self.per_player,
            "k_used": self.k_used,
            "threshold_used": self.threshold_used,
            "partitions_examined": self.partitions_examined,
            "partitions_total": self.partitions_total,
            "thresholds_tried": self.thresholds_tried,
        }
        if self.rounding_gap is not None:
            out["rounding_gap"] = self.rounding_gap
        return out


def choose_k(eps: float, c_k: float = 1.0, k_cap: int = DEFAULT_K_CAP) -> int:
    return max(1, min(math.ceil(c_k / eps**2), k_cap))


def solve_ptas(
    game: AnonymousGame,
    eps: float,
    k: int | None = None,
    *,
    c_k: float = 1.0,
    k_cap: int = DEFAULT_K_CAP,
    budget: int = DEFAULT_BUDGET,
    find_min: bool = False,
) -> PtasSolveReport:
    """Quantized approximate mixed equilibrium of a two-strategy game.

    The acceptance threshold starts at ``eps`` and doubles until some level
    partition admits an assignment; it always terminates because every
    profile has regret at most 1. With ``find_min`` the threshold is instead
    the smallest regret value at which any level partition is feasible, which
    gives the best profile on the 1/k grid.
    """
    _require_two_strategies(game)
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    k = choose_k(eps, c_k, k_cap) if k is None else int(k)
    total = num_partitions(game.n, k + 1)
    if total > budget:
        raise BudgetExceeded(
            f"{total} level partitions for n={game.n}, k={k} exceed the budget of {budget}; use a smaller k"
        )
    full, regret = QuantizedGame(game, k).regret_tensor()
    search = PartitionSearch(full, regret)
    tried = []
    if find_min:
        threshold = search.min_threshold()
        tried.append(threshold)
        hit = search.first_feasible(threshold)
    else:
        threshold = float(eps)
        while True:
            tried.append(threshold)
            hit = search.first_feasible(threshold + TOL)
            if hit is not None:
                break
            threshold *= 2.0
    assert hit is not None
    levels = [int(c) for c in hit.assignment]
    probs = np.asarray(levels, dtype=float) / k
    exact, per_player = mixed_regret_2s(game, probs)
    if exact > threshold + 1e-9:
        raise AssertionError(f"certified regret {exact} exceeds threshold {threshold}")
    return PtasSolveReport(
        mixed=probs.tolist(),
        levels=levels,
        exact_regret=exact,
        per_player=per_player.tolist(),
        k_used=k,
        threshold_used=threshold,
        partitions_examined=hit.examined,
        partitions_total=total,
        thresholds_tried=tried,
    )


def round_equilibrium(game: AnonymousGame, probs: Sequence[float], k: int) -> PtasSolveReport:
    """Round a mixed profile to the 1/k grid and certify the regret it gains."""
    _require_two_strategies(game)
    probs = np.asarray(probs, dtype=float)
    before, _ = mixed_regret_2s(game, probs)
    result = round_probabilities(probs, RoundingConfig(k))
    after, per_player = mixed_regret_2s(game, result.q)
    return PtasSolveReport(
        mixed=result.q.tolist(),
        levels=result.levels.tolist(),
        exact_regret=after,
        per_player=per_player.tolist(),
        k_used=k,
        threshold_used=after,
        partitions_examined=0,
        partitions_total=0,
        rounding_gap=after - before,
    )


def level_partition_rank(levels: Sequence[int], k: int) -> int:
    """Rank of the level partition realised by per-player levels."""
    counts = [0] * (k + 1)
    for lvl in levels:
        counts[lvl] += 1
    return rank_partition(counts)

