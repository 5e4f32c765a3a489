"""Approximate pure Nash equilibria by exhaustive search over aggregates."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .game import AnonymousGame, enumerate_partitions, lipschitz_constant, num_partitions, pure_regret, rank_partitions
from .search import PartitionSearch, capacitated_assignment

TOL = 1e-12


class InfeasibleThreshold(Exception):
    """No pure profile achieves the requested regret threshold."""


def theoretical_bound(s: int, lam: float) -> float:
    """Guaranteed regret level ``4 (2 s^2 + 3 s + 1) lam`` for an s-strategy game."""
    return 4 * (2 * s * s + 3 * s + 1) * lam


@dataclass
class PureSolveReport:
    profile: tuple[int, ...]
    max_regret: float
    per_player: list[float]
    threshold: float
    theoretical_bound: float
    lipschitz: float
    partitions_examined: int
    partitions_total: int
    min_threshold: float | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "profile": list(self.profile),
            "max_regret": self.max_regret,
            "per_player": self.per_player,
            "feasibility_threshold": self.threshold,
            "theoretical_bound": self.theoretical_bound,
            "lipschitz": self.lipschitz,
            "partitions_examined": self.partitions_examined,
            "partitions_total": self.partitions_total,
            "min_threshold": self.min_threshold,
            **self.extra,
        }


def regret_tensor(game: AnonymousGame) -> tuple[np.ndarray, np.ndarray]:
    """Partitions of all ``n`` players and the regret of each (aggregate, strategy, player)."""
    n, s = game.n, game.s
    full = enumerate_partitions(n, s)
    u = game.utilities
    best = u.max(axis=1)  # (n, P_others)
    regret = np.full((full.shape[0], s, n), np.inf)
    for i in range(s):
        rows = np.flatnonzero(full[:, i] > 0)
        others = full[rows].copy()
        others[:, i] -= 1
        ro = rank_partitions(others)
        regret[rows, i, :] = (best[:, ro] - u[:, i, ro]).T
    return full, regret


def _profile_from(assignment: list[int]) -> tuple[int, ...]:
    return tuple(int(c) for c in assignment)


def feasible_profile_at(game: AnonymousGame, x, eps: float) -> tuple[int, ...] | None:
    """Profile with aggregate ``x`` (a partition of all n players) that is an eps-equilibrium, if any."""
    x = np.asarray(x, dtype=np.int64)
    if x.shape != (game.s,) or x.min() < 0 or int(x.sum()) != game.n:
        raise ValueError(f"x must be a partition of {game.n} players over {game.s} strategies")
    u = game.utilities
    allowed = np.zeros((game.n, game.s), dtype=bool)
    for i in range(game.s):
        if x[i] == 0:
            continue
        others = x.copy()
        others[i] -= 1
        r = int(rank_partitions(others[None, :])[0])
        allowed[:, i] = u[:, i, r] >= u[:, :, r].max(axis=1) - eps
    assignment = capacitated_assignment(allowed, x)
    return None if assignment is None else _profile_from(assignment)


def solve_pure(
    game: AnonymousGame, eps: float | None = None, find_min: bool = False, declared_lambda: float | None = None
) -> PureSolveReport:
    """Find an eps-approximate pure equilibrium.

    With ``eps=None`` the threshold is the guaranteed bound computed from the
    game's Lipschitz constant, at which a profile always exists. A
    ``declared_lambda`` replaces the computed constant in that bound once it
    has been checked to be a valid upper bound. Partitions are scanned in rank
    order and the first feasible one wins; the returned profile is rechecked
    with :func:`pure_regret`.
    """
    computed = lam = lipschitz_constant(game)
    if declared_lambda is not None:
        if computed > declared_lambda + TOL:
            raise ValueError(f"declared lambda {declared_lambda} is below the game's Lipschitz constant {computed}")
        lam = float(declared_lambda)
    bound = theoretical_bound(game.s, lam)
    threshold = bound if eps is None else float(eps)
    if threshold < 0:
        raise ValueError("eps must be nonnegative")
    full, regret = regret_tensor(game)
    search = PartitionSearch(full, regret)
    hit = search.first_feasible(threshold + TOL)
    if hit is None:
        if eps is None:
            raise RuntimeError(f"no profile within the guaranteed bound {bound}; the game table is inconsistent")
        raise InfeasibleThreshold(f"no pure profile with regret <= {threshold} (guaranteed bound is {bound})")
    profile = _profile_from(hit.assignment)
    max_regret, per_player = pure_regret(game, profile)
    if max_regret > threshold + TOL:
        raise AssertionError(f"search returned regret {max_regret} above threshold {threshold}")
    report = PureSolveReport(
        profile=profile,
        max_regret=max_regret,
        per_player=per_player.tolist(),
        threshold=threshold,
        theoretical_bound=bound,
        lipschitz=lam,
        partitions_examined=hit.examined,
        partitions_total=num_partitions(game.n, game.s),
    )
    if declared_lambda is not None:
        report.extra = {"lambda_source": "declared", "computed_lipschitz": computed}
    if find_min:
        report.min_threshold = search.min_threshold()
    return report


def generate_lipschitz_game(n: int, s: int, lam: float, seed: int = 0) -> AnonymousGame:
    """Random game whose Lipschitz constant is at most ``lam``.

    Each utility table is the average of two lam-Lipschitz functions of the
    partition: a sum of independent per-strategy random walks (each step moves
    by at most lam, so an adjacent move changes the sum by at most 2 lam) and
    a McShane extension ``min_a (v_a + lam * ||x - a||_1)`` from a few random
    anchors. Averaging, shifting and shrinking toward the middle of [0, 1]
    never increases the constant.
    """
    if lam < 0:
        raise ValueError("lam must be nonnegative")
    if n < 2 or s < 2:
        raise ValueError("need n >= 2 and s >= 2")
    rng = np.random.default_rng(seed)
    parts = enumerate_partitions(n - 1, s)
    P = parts.shape[0]
    tables = np.empty((n, s, P))
    anchors_count = min(P, 4)
    for p in range(n):
        for i in range(s):
            walks = np.concatenate(
                [np.zeros((s, 1)), np.cumsum(rng.uniform(-lam, lam, size=(s, n - 1)), axis=1)], axis=1
            )
            separable = walks[np.arange(s), parts].sum(axis=1)
            anchors = parts[rng.choice(P, size=anchors_count, replace=False)]
            values = rng.uniform(0.0, 1.0, size=anchors_count)
            dist = np.abs(parts[:, None, :] - anchors[None, :, :]).sum(axis=2)
            mcshane = (values[None, :] + lam * dist).min(axis=1)
            f = 0.5 * (separable - separable.mean()) + 0.5 * (mcshane - mcshane.mean())
            spread = f.max() - f.min()
            if spread > 1.0:
                f = f / spread
            f = f - f.min()
            tables[p, i] = f + rng.uniform(0.0, max(0.0, 1.0 - f.max()))
    return AnonymousGame(np.clip(tables, 0.0, 1.0))
