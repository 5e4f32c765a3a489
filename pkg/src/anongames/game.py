"""Anonymous games, partitions of players into strategies, and exact regrets.

Strategies and players are 0-based throughout. A partition is an ``s``-vector
of counts; partitions of a fixed total are indexed by the lexicographic rank of
their suffix ``(x[1], ..., x[s-1])``, so for two strategies the rank is simply
``x[1]``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import distributions

TOL = 1e-12


def num_partitions(total: int, s: int) -> int:
    """Number of ways to split ``total`` players over ``s`` strategies."""
    return math.comb(total + s - 1, s - 1)


def rank_partition(x: Sequence[int]) -> int:
    """Rank of ``x`` among all partitions with the same total and length.

    Uses the hockey-stick identity to count, position by position, the
    suffixes that agree so far and carry a smaller value here.
    """
    s = len(x)
    remaining = int(sum(x))
    rank = 0
    for t in range(1, s):
        d = s - 1 - t  # free positions after this one
        v = int(x[t])
        rank += math.comb(remaining + d + 1, d + 1) - math.comb(remaining - v + d + 1, d + 1)
        remaining -= v
    return rank


def unrank_partition(r: int, total: int, s: int) -> tuple[int, ...]:
    if not 0 <= r < num_partitions(total, s):
        raise ValueError(f"rank {r} out of range for total={total}, s={s}")
    suffix = []
    remaining = total
    for t in range(1, s):
        d = s - 1 - t
        v = 0
        while True:
            block = math.comb(remaining - v + d, d)
            if r < block:
                break
            r -= block
            v += 1
        suffix.append(v)
        remaining -= v
    return (remaining, *suffix)


@lru_cache(maxsize=64)
def _binomial_table(size: int) -> np.ndarray:
    table = np.zeros((size + 1, size + 1), dtype=np.int64)
    for a in range(size + 1):
        for b in range(a + 1):
            table[a, b] = math.comb(a, b)
    return table


def rank_partitions(xs: np.ndarray) -> np.ndarray:
    """Vectorized :func:`rank_partition` over the rows of ``xs``.

    Rows may have different totals; each is ranked among partitions of its own
    total.
    """
    xs = np.asarray(xs, dtype=np.int64)
    s = xs.shape[1]
    remaining = xs.sum(axis=1)
    table = _binomial_table(int(remaining.max(initial=0)) + s + 1)
    rank = np.zeros(xs.shape[0], dtype=np.int64)
    for t in range(1, s):
        d = s - 1 - t
        v = xs[:, t]
        rank += table[remaining + d + 1, d + 1] - table[remaining - v + d + 1, d + 1]
        remaining = remaining - v
    return rank


def enumerate_partitions(total: int, s: int) -> np.ndarray:
    """All partitions of ``total`` into ``s`` parts, one per row, in rank order."""
    rows = []

    def rec(prefix: list[int], remaining: int, slots: int) -> None:
        if slots == 0:
            rows.append([remaining, *prefix])
            return
        for v in range(remaining + 1):
            prefix.append(v)
            rec(prefix, remaining - v, slots - 1)
            prefix.pop()

    rec([], total, s - 1)
    return np.array(rows, dtype=np.int64).reshape(-1, s)


def partition_excluding(profile: Sequence[int], player: int, s: int) -> tuple[int, ...]:
    """Counts of the strategies chosen by everyone except ``player``."""
    counts = [0] * s
    for q, choice in enumerate(profile):
        if q != player:
            counts[choice] += 1
    return tuple(counts)


@dataclass(frozen=True)
class AnonymousGame:
    """Dense anonymous game.

    ``utilities[p, i, r]`` is the payoff of player ``p`` for strategy ``i``
    when the other ``n - 1`` players form the partition of rank ``r``.
    """

    utilities: np.ndarray

    def __post_init__(self) -> None:
        u = np.array(self.utilities, dtype=float)
        if u.ndim != 3:
            raise ValueError("utilities must be a 3-d array (player, strategy, partition)")
        n, s, m = u.shape
        if n < 2 or s < 2:
            raise ValueError(f"need n >= 2 and s >= 2, got n={n}, s={s}")
        if m != num_partitions(n - 1, s):
            raise ValueError(
                f"expected {num_partitions(n - 1, s)} partitions per table for n={n}, s={s}, got {m}"
            )
        if not np.all(np.isfinite(u)) or u.min() < 0.0 or u.max() > 1.0:
            raise ValueError("utilities must lie in [0, 1]")
        u.setflags(write=False)
        object.__setattr__(self, "utilities", u)

    @property
    def n(self) -> int:
        return self.utilities.shape[0]

    @property
    def s(self) -> int:
        return self.utilities.shape[1]

    @property
    def partitions(self) -> np.ndarray:
        """Partitions of the other ``n - 1`` players, in rank order."""
        return _cached_partitions(self.n - 1, self.s)

    def utility(self, player: int, strategy: int, x: Sequence[int]) -> float:
        return float(self.utilities[player, strategy, rank_partition(x)])

    def check_profile(self, profile: Sequence[int]) -> tuple[int, ...]:
        profile = tuple(int(c) for c in profile)
        if len(profile) != self.n or any(not 0 <= c < self.s for c in profile):
            raise ValueError(f"profile must assign each of {self.n} players a strategy in [0, {self.s})")
        return profile

    def to_dict(self) -> dict:
        return {"n": self.n, "s": self.s, "utilities": self.utilities.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "AnonymousGame":
        game = cls(np.asarray(data["utilities"], dtype=float))
        if "n" in data and int(data["n"]) != game.n or "s" in data and int(data["s"]) != game.s:
            raise ValueError("declared n/s do not match the utility table shape")
        return game


@lru_cache(maxsize=32)
def _cached_partitions(total: int, s: int) -> np.ndarray:
    parts = enumerate_partitions(total, s)
    parts.setflags(write=False)
    return parts


def pure_regret(game: AnonymousGame, profile: Sequence[int]) -> tuple[float, np.ndarray]:
    """Largest gain any player gets from a unilateral switch, and per-player gains."""
    profile = game.check_profile(profile)
    per_player = np.empty(game.n)
    for p, choice in enumerate(profile):
        r = rank_partition(partition_excluding(profile, p, game.s))
        column = game.utilities[p, :, r]
        per_player[p] = column.max() - column[choice]
    return float(per_player.max()), per_player


def _adjacent_pairs(total: int, s: int) -> tuple[np.ndarray, np.ndarray]:
    """Rank pairs of partitions that differ by moving one player between two bins."""
    parts = _cached_partitions(total, s)
    src, dst = [], []
    for a, b in itertools.permutations(range(s), 2):
        movable = parts[:, a] > 0
        moved = parts[movable].copy()
        moved[:, a] -= 1
        moved[:, b] += 1
        src.append(np.flatnonzero(movable))
        dst.append(rank_partitions(moved))
    return np.concatenate(src), np.concatenate(dst)


def lipschitz_constant(game: AnonymousGame) -> float:
    """Smallest ``lam`` with ``|u(x) - u(y)| <= lam * ||x - y||_1`` for all tables.

    Adjacent partitions are at L1 distance 2 and every pair is joined by a
    path of adjacent steps, so checking adjacent pairs suffices.
    """
    src, dst = _adjacent_pairs(game.n - 1, game.s)
    if src.size == 0:
        return 0.0
    u = game.utilities
    return float(np.abs(u[:, :, src] - u[:, :, dst]).max() / 2.0)


def _as_strategy2_probs(game: AnonymousGame, probs: Sequence[float]) -> np.ndarray:
    if game.s != 2:
        raise ValueError(f"mixed regret is only implemented for s=2 games, got s={game.s}")
    q = np.asarray(probs, dtype=float)
    if q.shape != (game.n,):
        raise ValueError(f"expected {game.n} strategy-2 probabilities, got shape {q.shape}")
    if np.any(q < 0.0) or np.any(q > 1.0):
        raise ValueError("probabilities must lie in [0, 1]")
    return q


def expected_payoffs_2s(game: AnonymousGame, probs: Sequence[float]) -> np.ndarray:
    """Expected utility of each pure strategy for every player, shape ``(n, 2)``.

    ``probs[p]`` is the probability that player ``p`` plays strategy 1 (the
    second strategy). With two strategies, the rank of the others' partition
    equals the number of them on strategy 1, so the leave-one-out Poisson
    binomial pmf lines up with the utility table directly.
    """
    q = _as_strategy2_probs(game, probs)
    loo = distributions.leave_one_out_poisson_binomial(q)
    return np.einsum("pl,pml->pm", loo, game.utilities)


def mixed_regret_2s(game: AnonymousGame, probs: Sequence[float]) -> tuple[float, np.ndarray]:
    """Exact regret of a two-strategy mixed profile."""
    q = _as_strategy2_probs(game, probs)
    payoff = expected_payoffs_2s(game, q)
    current = (1.0 - q) * payoff[:, 0] + q * payoff[:, 1]
    per_player = np.maximum(payoff.max(axis=1) - current, 0.0)
    return float(per_player.max()), per_player
