"""Brute-force oracles and the verification suites behind ``anongame verify``.

Each suite returns a list of :class:`OracleReport`; a suite passes when every
report does. Randomness flows from one integer seed. Set ``ANONGAME_WORKERS``
to run independent instances in a process pool; results are ordered by
instance, not by completion.
"""

from __future__ import annotations

import itertools
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.stats import binom

from .distributions import (
    TranslatedPoissonParams,
    leave_one_out_poisson_binomial,
    medium_range_ratio_bound,
    moments,
    poisson_approx_bound,
    poisson_binomial,
    poisson_binomial_pmf,
    poisson_pmf,
    poisson_tv_bound,
    tp_tv_bound,
    translated_poisson_approx_bound,
    translated_poisson_pmf,
    tv_distance,
    tv_distance_arrays,
)
from .game import AnonymousGame, lipschitz_constant, mixed_regret_2s, pure_regret, rank_partitions
from .ptas import solve_ptas
from .pure import generate_lipschitz_game, solve_pure
from .rounding import RoundingConfig, naive_round, round_probabilities

WORKERS_ENV = "ANONGAME_WORKERS"
TV_CONSTANT = 3.0
TV_EXPONENT = -0.25


@dataclass
class OracleReport:
    claim: str
    instance: str
    measured: float
    bound: float
    tolerance: float
    passed: bool
    runtime: float

    def to_dict(self) -> dict:
        return asdict(self)


def _report(claim: str, instance: str, measured: float, bound: float, tolerance: float, started: float) -> OracleReport:
    measured, bound = float(measured), float(bound)
    return OracleReport(claim, instance, measured, bound, tolerance, measured <= bound + tolerance, time.perf_counter() - started)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _map(func: Callable, items: Sequence) -> list:
    workers = _workers()
    if workers == 1 or len(items) < 2:
        return [func(item) for item in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items, chunksize=max(1, len(items) // (4 * workers))))


def tv_bound(k: int) -> float:
    return TV_CONSTANT * k**TV_EXPONENT


# ---------------------------------------------------------------------------
# oracles


def brute_force_min_regret(game: AnonymousGame, cap: int = 2_000_000) -> float:
    """Minimum over all s**n pure profiles of the largest regret."""
    n, s = game.n, game.s
    total = s**n
    if total > cap:
        raise ValueError(f"{total} profiles exceed the brute-force cap {cap}")
    u = game.utilities
    best = math.inf
    chunk = max(1, 200_000 // n)
    profiles_iter = itertools.product(range(s), repeat=n)
    while True:
        block = np.array(list(itertools.islice(profiles_iter, chunk)), dtype=np.int64)
        if block.size == 0:
            break
        counts = np.stack([(block == i).sum(axis=1) for i in range(s)], axis=1)
        worst = np.zeros(block.shape[0])
        for p in range(n):
            others = counts.copy()
            others[np.arange(block.shape[0]), block[:, p]] -= 1
            r = rank_partitions(others)
            column = u[p][:, r]  # (s, rows)
            regret = column.max(axis=0) - column[block[:, p], np.arange(block.shape[0])]
            worst = np.maximum(worst, regret)
        best = min(best, float(worst.min()))
    return best


def brute_force_min_grid_regret(game: AnonymousGame, k: int, cap: int = 2_000_000) -> float:
    """Minimum exact mixed regret over all (k+1)**n profiles on the 1/k grid."""
    if game.s != 2:
        raise ValueError("two-strategy games only")
    n = game.n
    if (k + 1) ** n > cap:
        raise ValueError(f"{(k + 1) ** n} grid profiles exceed the cap {cap}")
    u = game.utilities
    grid = np.array(list(itertools.product(range(k + 1), repeat=n)), dtype=float) / k
    worst = np.zeros(grid.shape[0])
    for p in range(n):
        others = np.delete(grid, p, axis=1)
        pmf = np.zeros((grid.shape[0], n))
        pmf[:, 0] = 1.0
        for t in range(n - 1):
            q = others[:, t : t + 1]
            nxt = pmf * (1.0 - q)
            nxt[:, 1:] += pmf[:, :-1] * q
            pmf = nxt
        e1, e2 = pmf @ u[p, 0], pmf @ u[p, 1]
        mine = grid[:, p]
        regret = np.maximum(e1, e2) - ((1.0 - mine) * e1 + mine * e2)
        worst = np.maximum(worst, regret)
    return float(worst.min())


def brute_force_lipschitz(game: AnonymousGame) -> float:
    """``max |u(x) - u(y)| / ||x - y||_1`` over every pair of partitions."""
    parts = game.partitions
    dist = np.abs(parts[:, None, :] - parts[None, :, :]).sum(axis=2)
    off = dist > 0
    u = game.utilities
    diff = np.abs(u[:, :, :, None] - u[:, :, None, :])
    if not off.any():
        return 0.0
    return float((diff[:, :, off] / dist[off]).max())


def enumerate_poisson_binomial(p: Sequence[float]) -> np.ndarray:
    """Pmf of a sum of Bernoullis by summing over all 2**n outcomes."""
    p = np.asarray(p, dtype=float)
    n = p.size
    bits = np.array(list(itertools.product((0, 1), repeat=n)), dtype=np.int64).reshape(2**n, n)
    weights = np.prod(np.where(bits == 1, p, 1.0 - p), axis=1)
    return np.bincount(bits.sum(axis=1), weights=weights, minlength=n + 1)


def exact_tv_after_rounding(p: Sequence[float], config: RoundingConfig) -> tuple[float, float]:
    """TV between the Poisson binomials of p and its rounding, in full and leave-one-out."""
    p = np.asarray(p, dtype=float)
    q = round_probabilities(p, config).q
    full = tv_distance_arrays(poisson_binomial_pmf(p), poisson_binomial_pmf(q))
    if p.size <= 1:
        return full, 0.0
    loo_p = leave_one_out_poisson_binomial(p)
    loo_q = leave_one_out_poisson_binomial(q)
    loo = 0.5 * np.abs(loo_p - loo_q).sum(axis=1).max()
    return full, float(loo)


def random_probabilities(rng: np.random.Generator, n: int) -> np.ndarray:
    """Probability vectors from a few families that stress different regions.

    The families do not depend on k, so one vector can be rounded at every k
    and the TV trend compares like with like.
    """
    family = rng.integers(4)
    if family == 0:
        return rng.random(n)
    if family == 1:  # mostly small values
        return rng.uniform(0.0, 0.1, n)
    if family == 2:  # mostly large values
        return 1.0 - rng.uniform(0.0, 0.1, n)
    centers = rng.random(3)  # a few tight clusters
    return np.clip(rng.choice(centers, n) + rng.normal(0.0, 0.002, n), 0.0, 1.0)


def grid_equilibrium_game(n: int, k: int, seed: int) -> tuple[AnonymousGame, np.ndarray]:
    """Two-strategy game with an exact mixed equilibrium on the 1/k grid.

    Each player gets random tables; strategy-1 utilities are shifted so both
    strategies earn the same expectation against the planted profile, then
    the player's tables are mapped affinely back into [0, 1].
    """
    rng = np.random.default_rng(seed)
    levels = rng.integers(0, k + 1, n)
    q = levels / k
    u = rng.uniform(0.25, 0.75, size=(n, 2, n))
    loo = leave_one_out_poisson_binomial(q)
    for p in range(n):
        e1, e2 = loo[p] @ u[p, 0], loo[p] @ u[p, 1]
        if 0 < levels[p] < k:
            u[p, 1] += e1 - e2
        elif levels[p] == 0 and e2 > e1:
            u[p, 1] -= e2 - e1
        elif levels[p] == k and e1 > e2:
            u[p, 1] += e1 - e2
        u[p] = (u[p] + 0.25) / 1.5
    return AnonymousGame(np.clip(u, 0.0, 1.0)), q


def best_symmetric_grid_point(game: AnonymousGame, grid: int = 1000) -> tuple[float, float]:
    """Best symmetric profile t/grid of a symmetric two-strategy game and its regret."""
    if game.s != 2 or not np.all(game.utilities == game.utilities[0]):
        raise ValueError("needs a symmetric two-strategy game")
    n = game.n
    t = np.arange(grid + 1) / grid
    pmf = binom.pmf(np.arange(n)[None, :], n - 1, t[:, None])
    e1, e2 = pmf @ game.utilities[0, 0], pmf @ game.utilities[0, 1]
    regret = np.maximum(e1, e2) - ((1 - t) * e1 + t * e2)
    best = int(np.argmin(regret))
    return float(t[best]), float(max(regret[best], 0.0))


# ---------------------------------------------------------------------------
# suites


def _rounding_closeness_instance(args: tuple[int, int]) -> tuple[float, float]:
    seed, _ = args
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 501))
    k = int(rng.integers(10, 401))
    p = random_probabilities(rng, n)
    q = round_probabilities(p, RoundingConfig(k)).q
    grid_err = float(np.abs(q * k - np.round(q * k)).max())
    close_err = float((np.abs(q - p) - 1.0 / k).max())
    return grid_err, close_err


def rounding_closeness(seed: int = 0, instances: int = 1000) -> list[OracleReport]:
    started = time.perf_counter()
    results = _map(_rounding_closeness_instance, [(seed * 1_000_003 + i, i) for i in range(instances)])
    grid_err = max(r[0] for r in results)
    close_err = max(r[1] for r in results)
    desc = f"{instances} instances, n in [1,500], k in [10,400]"
    return [
        _report("rounding: q is a multiple of 1/k", desc, grid_err, 0.0, 1e-12, started),
        _report("rounding: |q - p| <= 1/k", desc, close_err, 0.0, 1e-12, started),
    ]


def _rounding_tv_instance(args: tuple[int, int, int]) -> tuple[float, float]:
    n, k, seed = args
    # seeded without k: every k rounds the same vector
    rng = np.random.default_rng([n, seed])
    return exact_tv_after_rounding(random_probabilities(rng, n), RoundingConfig(k))


def rounding_tv(
    seed: int = 0, ns: Iterable[int] = (50, 100, 500), ks: Iterable[int] = (16, 25, 50, 100, 200, 400), seeds: int = 50
) -> list[OracleReport]:
    reports = []
    ns, ks = list(ns), list(ks)
    for n in ns:
        started = time.perf_counter()
        items = [(n, k, seed * 7919 + t) for k in ks for t in range(seeds)]
        results = dict(zip(items, _map(_rounding_tv_instance, items)))
        medians = {}
        for k in ks:
            vals = [results[(n, k, seed * 7919 + t)] for t in range(seeds)]
            full = max(v[0] for v in vals)
            loo = max(v[1] for v in vals)
            medians[k] = float(np.median([v[0] for v in vals]))
            desc = f"n={n}, k={k}, {seeds} seeds"
            reports.append(_report("rounding TV <= 3 k^-1/4", desc, full, tv_bound(k), 0.0, started))
            reports.append(_report("leave-one-out TV <= 3 k^-1/4", desc, loo, tv_bound(k), 0.0, started))
        lo_k, hi_k = min(ks), max(ks)
        if 25 in ks and 400 in ks:
            lo_k, hi_k = 25, 400
        if lo_k != hi_k:
            # strict decrease: measured < bound
            trend = OracleReport(
                f"median TV(k={hi_k}) < median TV(k={lo_k})",
                f"n={n}",
                medians[hi_k],
                medians[lo_k],
                0.0,
                medians[hi_k] < medians[lo_k],
                time.perf_counter() - started,
            )
            reports.append(trend)
    return reports


def tv_n_independence(seed: int = 0, k: int = 100, small_n: int = 50, large_n: int = 1000, seeds: int = 50) -> list[OracleReport]:
    started = time.perf_counter()
    config = RoundingConfig(k)
    med = {}
    for n in (small_n, large_n):
        vals = []
        for t in range(seeds):
            rng = np.random.default_rng([seed, n, t])
            p = rng.random(n)
            q = round_probabilities(p, config).q
            vals.append(tv_distance_arrays(poisson_binomial_pmf(p), poisson_binomial_pmf(q)))
        med[n] = float(np.median(vals))
    return [
        _report(
            f"median TV(n={large_n}) <= 2 x median TV(n={small_n})",
            f"k={k}, {seeds} seeds, p uniform",
            med[large_n],
            2 * med[small_n],
            0.0,
            started,
        )
    ]


def naive_counterexample(n: int = 100, k: int = 10) -> list[OracleReport]:
    started = time.perf_counter()
    p = np.full(n, 1.0 / n)
    base = poisson_binomial_pmf(p)
    naive = tv_distance_arrays(base, poisson_binomial_pmf(naive_round(p, k)))
    closed = 1.0 - (1.0 - 1.0 / n) ** n
    rounded = tv_distance_arrays(base, poisson_binomial_pmf(round_probabilities(p, RoundingConfig(k)).q))
    desc = f"p_i = 1/{n} x {n}, k={k}"
    return [
        _report("naive rounding TV matches 1 - (1 - 1/n)^n", desc, abs(naive - closed), 0.0, 1e-9, started),
        _report("carry rounding TV <= 0.2", desc, rounded, 0.2, 0.0, started),
        OracleReport("naive TV value", desc, naive, closed, 0.0, True, time.perf_counter() - started),
    ]


def poisson_bounds(seed: int = 0, instances: int = 500) -> list[OracleReport]:
    rng = np.random.default_rng(seed)
    reports = []
    slack = 1e-9

    started = time.perf_counter()
    worst = -math.inf
    for _ in range(instances):
        p = rng.uniform(0.0, 0.1, int(rng.integers(1, 201)))
        if p.sum() == 0:
            continue
        target = poisson_pmf(float(p.sum()))
        gap = tv_distance(poisson_binomial(p), target) - poisson_approx_bound(p) - target.tail
        worst = max(worst, gap)
    reports.append(_report("Poisson approximation bound", f"{instances} draws, p in [0, 0.1]", worst, 0.0, slack, started))

    started = time.perf_counter()
    worst = -math.inf
    for _ in range(instances):
        p = rng.uniform(0.2, 0.8, int(rng.integers(20, 201)))
        target = translated_poisson_pmf(moments(p))
        gap = tv_distance(poisson_binomial(p), target) - translated_poisson_approx_bound(p) - target.tail
        worst = max(worst, gap)
    reports.append(
        _report("translated Poisson approximation bound", f"{instances} draws, p in [0.2, 0.8], n >= 20", worst, 0.0, slack, started)
    )

    started = time.perf_counter()
    worst = -math.inf
    for _ in range(instances):
        l1, l2 = rng.uniform(0.0, 20.0, 2)
        l1, l2 = max(l1, 1e-6), max(l2, 1e-6)
        if rng.random() < 0.5:
            l2 = max(l1 + rng.normal(0.0, 0.2), 1e-6)
        a, b = poisson_pmf(l1), poisson_pmf(l2)
        gap = tv_distance(a, b) - poisson_tv_bound(l1, l2) - a.tail - b.tail
        worst = max(worst, gap)
    reports.append(_report("Poisson-Poisson TV bound", f"{instances} rate pairs in (0, 20]", worst, 0.0, slack, started))

    started = time.perf_counter()
    worst = -math.inf
    for _ in range(instances):
        s1, s2 = rng.uniform(1.0, 50.0, 2)
        m1 = rng.uniform(s1, s1 + 50.0)
        m2 = m1 + rng.normal(0.0, 2.0)
        if rng.random() < 0.5:
            s2 = float(np.clip(s1 + rng.normal(0.0, 1.0), 1.0, 50.0))
        a, b = TranslatedPoissonParams(m1, s1), TranslatedPoissonParams(m2, s2)
        da, db = translated_poisson_pmf(a), translated_poisson_pmf(b)
        gap = tv_distance(da, db) - tp_tv_bound(a, b) - da.tail - db.tail
        worst = max(worst, gap)
    reports.append(_report("translated Poisson TV bound", f"{instances} pairs, variance in [1, 50]", worst, 0.0, slack, started))

    started = time.perf_counter()
    worst = -math.inf
    for _ in range(instances):
        u = rng.uniform(0.001, 1.0)
        p = rng.uniform(0.0, u, int(rng.integers(1, 101)))
        if p.sum() == 0:
            continue
        worst = max(worst, poisson_approx_bound(p) - float(p.max()))
    reports.append(_report("sum p^2 / sum p <= max p", f"{instances} draws", worst, 0.0, 1e-12, started))

    started = time.perf_counter()
    worst = -math.inf
    for _ in range(instances):
        u = rng.uniform(0.001, 0.499)
        p = rng.uniform(u, 0.5, int(rng.integers(1, 101)))
        if rng.random() < 0.3:  # extreme points carry the maximum
            p = rng.choice([u, 0.5], p.size)
        lhs = math.sqrt(math.fsum(p**3 * (1 - p))) / math.fsum(p * (1 - p))
        worst = max(worst, lhs - medium_range_ratio_bound(u, p.size))
    reports.append(_report("medium-range ratio bound", f"{instances} draws, p in [u, 1/2]", worst, 0.0, 1e-12, started))
    return reports


def _pure_instance(seed: int) -> dict:
    rng = np.random.default_rng(seed)
    s = int(rng.choice([2, 3]))
    n = int(rng.integers(4, 21))
    lam = float(np.exp(rng.uniform(np.log(1e-4), np.log(1e-2))))
    game = generate_lipschitz_game(n, s, lam, seed=seed)
    report = solve_pure(game)
    out = {
        "n": n,
        "s": s,
        "lipschitz": report.lipschitz,
        "bound": report.theoretical_bound,
        "regret": report.max_regret,
        "brute": None,
    }
    if n <= 10:
        out["brute"] = brute_force_min_regret(game)
    return out


def pure_bound(seed: int = 0, games: int = 200) -> list[OracleReport]:
    started = time.perf_counter()
    results = _map(_pure_instance, [seed * 104_729 + g for g in range(games)])
    ratio = max(r["regret"] - r["bound"] for r in results)
    brute = [r for r in results if r["brute"] is not None]
    reports = [
        _report("solve_pure(auto) regret <= 4(2s^2+3s+1) lambda", f"{games} games, s in {{2,3}}, n in [4,20]", ratio, 0.0, 1e-12, started),
    ]
    if brute:
        reports.append(
            _report(
                "brute-force minimum regret <= bound",
                f"{len(brute)} games with n <= 10",
                max(r["brute"] - r["bound"] for r in brute),
                0.0,
                1e-12,
                started,
            )
        )
        reports.append(
            _report(
                "solve_pure(auto) never below the brute-force optimum",
                f"{len(brute)} games with n <= 10",
                max(r["brute"] - r["regret"] for r in brute),
                0.0,
                1e-12,
                started,
            )
        )
    started = time.perf_counter()
    game = generate_lipschitz_game(20, 3, 0.005, seed=seed)
    report = solve_pure(game)
    elapsed = time.perf_counter() - started
    reports.append(_report("s=3, n=20 solve time (s)", "lambda=0.005", elapsed, 60.0, 0.0, started))
    reports.append(_report("s=3, n=20 regret <= bound", "lambda=0.005", report.max_regret, report.theoretical_bound, 1e-12, started))
    return reports


def _ptas_random_instance(args: tuple[int, tuple[int, ...]]) -> dict:
    seed, ks = args
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 9))
    game = AnonymousGame(rng.random((n, 2, n)))
    sound, measured, best = [], {}, {}
    for k in ks:
        # the operating point k = 1/eps^2 of the solver
        rep = solve_ptas(game, k**-0.5, k=k)
        sound.append(rep.exact_regret - rep.threshold_used)
        measured[k] = rep.exact_regret
        best[k] = solve_ptas(game, k**-0.5, k=k, find_min=True).exact_regret
    return {"n": n, "soundness": max(sound), "measured": measured, "best": best}


def _largest_increase(values: Sequence[float]) -> float:
    return max((b - a for a, b in zip(values, values[1:])), default=0.0)


def ptas_regret(seed: int = 0, games: int = 50, ks: Iterable[int] = range(4, 11), planted: int = 20) -> list[OracleReport]:
    ks = tuple(ks)
    started = time.perf_counter()
    results = _map(_ptas_random_instance, [(seed * 15_485_863 + g, ks) for g in range(games)])
    desc = f"{games} random games, n <= 8, k in {list(ks)}, eps = k^-1/2"
    reports = [
        _report("PTAS exact regret <= threshold used", desc, max(r["soundness"] for r in results), 0.0, 1e-9, started)
    ]
    medians = [float(np.median([r["measured"][k] for r in results])) for k in ks]
    reports.append(
        _report(
            "median PTAS regret non-increasing in k",
            f"medians {[round(m, 6) for m in medians]}",
            _largest_increase(medians),
            0.0,
            0.0,
            started,
        )
    )
    # grids for different k are not nested, so the best-grid curve is reported without a gate
    best = [float(np.median([r["best"][k] for r in results])) for k in ks]
    reports.append(
        OracleReport(
            "median best-grid regret per k (informational)",
            f"medians {[round(m, 6) for m in best]}",
            _largest_increase(best),
            math.inf,
            0.0,
            True,
            time.perf_counter() - started,
        )
    )

    started = time.perf_counter()
    worst = 0.0
    rng = np.random.default_rng(seed + 1)
    for t in range(planted):
        n = int(rng.integers(2, 9))
        k = int(rng.choice(ks))
        game, _ = grid_equilibrium_game(n, k, seed * 31 + t)
        worst = max(worst, solve_ptas(game, k**-0.5, k=k, find_min=True).exact_regret)
    reports.append(_report("planted grid equilibrium recovered", f"{planted} games", worst, 0.0, 1e-9, started))
    return reports


def oracle_equivalence(seed: int = 0) -> list[OracleReport]:
    rng = np.random.default_rng(seed)
    reports = []

    started = time.perf_counter()
    worst = 0.0
    for n in range(0, 13):
        for _ in range(3):
            p = rng.random(n)
            if n and rng.random() < 0.3:
                p[rng.random(n) < 0.3] = rng.choice([0.0, 1.0])
            worst = max(worst, float(np.abs(poisson_binomial_pmf(p) - enumerate_poisson_binomial(p)).max()))
    reports.append(_report("Poisson binomial DP == 2^n enumeration", "n <= 12", worst, 0.0, 1e-12, started))

    started = time.perf_counter()
    worst = 0.0
    for t in range(30):
        s = int(rng.integers(2, 4))
        n = int(rng.integers(2, 9))
        if rng.random() < 0.5:
            game = AnonymousGame(rng.random((n, s, math.comb(n - 1 + s - 1, s - 1))))
        else:
            game = generate_lipschitz_game(n, s, float(rng.uniform(0, 0.05)), seed=t)
        worst = max(worst, abs(lipschitz_constant(game) - brute_force_lipschitz(game)))
    reports.append(_report("Lipschitz constant: adjacent pairs == all pairs", "30 games, s <= 3, n <= 8", worst, 0.0, 1e-12, started))

    started = time.perf_counter()
    worst = 0.0
    for _ in range(30):
        n = int(rng.integers(2, 12))
        game = AnonymousGame(rng.random((n, 2, n)))
        profile = rng.integers(0, 2, n)
        a, pa = mixed_regret_2s(game, profile.astype(float))
        b, pb = pure_regret(game, profile)
        worst = max(worst, abs(a - b), float(np.abs(pa - pb).max()))
    reports.append(_report("degenerate mixed regret == pure regret (exact)", "30 games", worst, 0.0, 0.0, started))
    return reports


SUITES: dict[str, Callable[..., list[OracleReport]]] = {
    "rounding-tv": lambda seed=0, quick=False: (
        rounding_closeness(seed, 100 if quick else 1000)
        + rounding_tv(seed, seeds=5 if quick else 50)
        + tv_n_independence(seed, seeds=10 if quick else 50)
    ),
    "poisson-bounds": lambda seed=0, quick=False: poisson_bounds(seed, 50 if quick else 500),
    "pure-bound": lambda seed=0, quick=False: pure_bound(seed, 20 if quick else 200),
    "ptas-regret": lambda seed=0, quick=False: (
        ptas_regret(seed, games=5, ks=range(4, 8), planted=4) if quick else ptas_regret(seed)
    ),
    "naive-counterexample": lambda seed=0, quick=False: naive_counterexample(),
    "oracle-equivalence": lambda seed=0, quick=False: oracle_equivalence(seed),
}


def run_suite(name: str, seed: int = 0, quick: bool = False) -> list[OracleReport]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](seed=seed, quick=quick)


def recheck_report(report: dict, game: AnonymousGame | None = None) -> list[OracleReport]:
    """Re-verify a JSON report produced by ``round``, ``solve-pure`` or ``solve-ptas``."""
    started = time.perf_counter()
    if "levels" in report and "workspaces" in report:
        config = RoundingConfig(int(report["k"]), float(report["alpha"]), float(report["beta"]))
        p, q = np.asarray(report["p"], dtype=float), np.asarray(report["q"], dtype=float)
        redo = round_probabilities(p, config)
        k = config.k
        return [
            _report("q is a multiple of 1/k", "rounding report", float(np.abs(q * k - np.round(q * k)).max(initial=0.0)), 0.0, 1e-12, started),
            _report("|q - p| <= 1/k", "rounding report", float((np.abs(q - p) - 1.0 / k).max(initial=-1.0)), 0.0, 1e-12, started),
            _report("rounding reproduces", "rounding report", float(np.abs(redo.q - q).max(initial=0.0)), 0.0, 0.0, started),
        ]
    if game is None:
        raise ValueError("solver reports need the game they were computed for")
    if "profile" in report:
        regret, _ = pure_regret(game, report["profile"])
        return [
            _report("reported regret reproduces", "pure report", abs(regret - report["max_regret"]), 0.0, 1e-12, started),
            _report("regret within threshold", "pure report", regret, report["feasibility_threshold"], 1e-12, started),
        ]
    if "mixed" in report:
        k = int(report["k_used"])
        mixed = np.asarray(report["mixed"], dtype=float)
        regret, _ = mixed_regret_2s(game, mixed)
        return [
            _report("profile on the 1/k grid", "ptas report", float(np.abs(mixed * k - np.round(mixed * k)).max()), 0.0, 1e-12, started),
            _report("reported regret reproduces", "ptas report", abs(regret - report["exact_regret"]), 0.0, 1e-12, started),
            _report("regret within threshold", "ptas report", regret, report["threshold_used"], 1e-9, started),
        ]
    raise ValueError("unrecognised report")
