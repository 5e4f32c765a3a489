"""Exhaustive search over aggregate partitions with an assignment check.

A pure profile with aggregate ``x`` is an eps-equilibrium iff its players can
be assigned to strategies, exactly ``x[i]`` of them to strategy ``i``, so that
every player's strategy is an eps-best response to ``x`` minus that player.
Both solvers reduce to this: build a regret tensor, then look for the first
partition (in rank order) that admits such an assignment.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def capacitated_assignment(allowed: np.ndarray, capacity: np.ndarray) -> list[int] | None:
    """Assign every row to an allowed column without exceeding column capacities.

    ``allowed`` is a boolean ``(players, columns)`` matrix and ``capacity`` the
    number of players each column must receive; the capacities sum to the
    number of players, so any complete assignment fills every column exactly.
    Augmenting paths (Kuhn's algorithm on the capacitated bipartite graph).
    """
    n, m = allowed.shape
    if int(capacity.sum()) != n:
        return None
    adj = [np.flatnonzero(allowed[p]).tolist() for p in range(n)]
    if any(not cols for cols in adj):
        return None
    holders: list[list[int]] = [[] for _ in range(m)]
    match = [-1] * n

    def augment(p: int, seen: list[bool]) -> bool:
        for col in adj[p]:
            if seen[col]:
                continue
            seen[col] = True
            if len(holders[col]) < capacity[col]:
                holders[col].append(p)
                match[p] = col
                return True
            for other in holders[col]:
                if augment(other, seen):
                    holders[col].remove(other)
                    holders[col].append(p)
                    match[p] = col
                    return True
        return False

    for p in range(n):
        if not augment(p, [False] * m):
            return None
    return match


@dataclass
class SearchHit:
    rank: int
    assignment: list[int]
    examined: int


class PartitionSearch:
    """Feasibility queries over all partitions of the ``n`` players.

    ``partitions`` has one row per aggregate (rank order); ``regret[r, i, p]``
    is player ``p``'s regret for playing ``i`` under aggregate ``r``, and must
    be ``+inf`` where ``partitions[r, i] == 0``.
    """

    def __init__(self, partitions: np.ndarray, regret: np.ndarray) -> None:
        self.partitions = partitions
        self.regret = regret

    def _candidates(self, threshold: float) -> np.ndarray:
        allowed = self.regret <= threshold
        counts = allowed.sum(axis=2)
        # cheap necessary conditions: every player has an option and every
        # strategy with demand has enough willing players
        ok = allowed.any(axis=1).all(axis=1) & (counts >= self.partitions).all(axis=1)
        return np.flatnonzero(ok)

    def feasible_at(self, rank: int, threshold: float) -> list[int] | None:
        allowed = (self.regret[rank] <= threshold).T
        return capacitated_assignment(allowed, self.partitions[rank])

    def first_feasible(self, threshold: float) -> SearchHit | None:
        for r in self._candidates(threshold):
            assignment = self.feasible_at(int(r), threshold)
            if assignment is not None:
                return SearchHit(int(r), assignment, int(r) + 1)
        return None

    def min_threshold(self) -> float:
        """Smallest regret value at which some partition becomes feasible."""
        values = np.unique(self.regret[np.isfinite(self.regret)])
        lo, hi = 0, values.size - 1
        if self.first_feasible(float(values[hi])) is None:
            raise RuntimeError("no partition is feasible even at the largest regret value")
        while lo < hi:
            mid = (lo + hi) // 2
            if self.first_feasible(float(values[mid])) is not None:
                hi = mid
            else:
                lo = mid + 1
        return float(values[lo])
