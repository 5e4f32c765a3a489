import itertools

import numpy as np
import pytest
from conftest import constant_game, dominant_game, matching_pennies, random_game

from anongames import AnonymousGame, lipschitz_constant, mixed_regret_2s, num_partitions, pure_regret
from anongames.game import enumerate_partitions, expected_payoffs_2s, partition_excluding, rank_partition, rank_partitions, unrank_partition
from anongames.harness import brute_force_lipschitz, enumerate_poisson_binomial


@pytest.mark.parametrize(
    "x, rank",
    [((3, 0), 0), ((2, 1), 1), ((1, 2), 2), ((0, 3), 3), ((2, 0, 0), 0), ((0, 0, 2), 2), ((0, 2, 0), 5)],
)
def test_rank_examples(x, rank):
    assert rank_partition(x) == rank


def test_rank_order_is_lexicographic_on_suffix():
    parts = enumerate_partitions(2, 3)
    suffixes = [tuple(row[1:]) for row in parts]
    assert suffixes == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]


@pytest.mark.parametrize("s", [2, 3, 4, 5])
def test_rank_unrank_roundtrip_exhaustive(s):
    max_total = 20 if s <= 3 else 12
    for total in range(max_total + 1):
        parts = enumerate_partitions(total, s)
        assert parts.shape[0] == num_partitions(total, s)
        ranks = rank_partitions(parts)
        assert np.array_equal(ranks, np.arange(parts.shape[0]))
        for r in range(0, parts.shape[0], max(1, parts.shape[0] // 50)):
            assert unrank_partition(r, total, s) == tuple(parts[r])
            assert rank_partition(parts[r]) == r


@pytest.mark.parametrize(
    "profile, player, s, expected",
    # 0-based strategies and players
    [((0, 1, 1), 0, 2, (0, 2)), ((0, 1, 1), 2, 2, (1, 1)), ((1, 1), 0, 3, (0, 1, 0))],
)
def test_partition_excluding(profile, player, s, expected):
    assert partition_excluding(profile, player, s) == expected


def test_game_validation():
    with pytest.raises(ValueError):
        AnonymousGame(np.zeros((3, 2, 2)))  # needs 3 partitions
    with pytest.raises(ValueError):
        AnonymousGame(np.full((2, 2, 2), 1.5))
    with pytest.raises(ValueError):
        AnonymousGame(np.zeros((1, 2, 1)))
    game = constant_game(3, 2)
    with pytest.raises(ValueError):
        game.utilities[0, 0, 0] = 1.0


def test_game_dict_roundtrip(rng):
    game = random_game(rng, 4, 3)
    again = AnonymousGame.from_dict(game.to_dict())
    assert np.array_equal(game.utilities, again.utilities)
    bad = game.to_dict()
    bad["n"] = 5
    with pytest.raises(ValueError):
        AnonymousGame.from_dict(bad)


def test_pure_regret_constant_game():
    regret, per_player = pure_regret(constant_game(4, 3), (0, 1, 2, 0))
    assert regret == 0.0 and np.all(per_player == 0.0)


def test_pure_regret_dominance():
    game = dominant_game(5, 2, best=0, margin=0.3)
    assert pure_regret(game, (0,) * 5)[0] == 0.0
    assert pure_regret(game, (1,) * 5)[0] == pytest.approx(0.3, abs=1e-12)


def test_pure_regret_matching_pennies():
    game = matching_pennies()
    for profile in itertools.product(range(2), repeat=2):
        assert pure_regret(game, profile)[0] == 1.0


def test_pure_regret_anonymity(rng):
    game = random_game(rng, 6, 3)
    profile = rng.integers(0, 3, 6)
    perm = rng.permutation(6)
    relabeled = AnonymousGame(game.utilities[perm])
    a, pa = pure_regret(game, profile)
    b, pb = pure_regret(relabeled, profile[perm])
    assert a == b
    assert np.array_equal(pa[perm], pb)


def test_lipschitz_constant_examples():
    assert lipschitz_constant(constant_game(5, 3)) == 0.0
    parts = enumerate_partitions(4, 2)
    u = np.broadcast_to(parts[:, 1] / 4.0, (5, 2, parts.shape[0]))
    assert lipschitz_constant(AnonymousGame(u)) == pytest.approx(1 / 8, abs=1e-12)
    assert lipschitz_constant(matching_pennies()) == 0.5


@pytest.mark.parametrize("seed", range(10))
def test_lipschitz_matches_all_pairs(seed):
    rng = np.random.default_rng(seed)
    s, n = int(rng.integers(2, 4)), int(rng.integers(2, 9))
    game = random_game(rng, n, s)
    assert lipschitz_constant(game) == pytest.approx(brute_force_lipschitz(game), abs=1e-12)


@pytest.mark.parametrize("seed", range(10))
def test_mixed_regret_degenerate_equals_pure(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 10))
    game = random_game(rng, n, 2)
    profile = rng.integers(0, 2, n)
    a, pa = mixed_regret_2s(game, profile.astype(float))
    b, pb = pure_regret(game, profile)
    assert a == b
    assert np.array_equal(pa, pb)


def test_mixed_regret_examples(rng):
    assert mixed_regret_2s(constant_game(5, 2), rng.random(5))[0] == pytest.approx(0.0, abs=1e-12)
    regret, per_player = mixed_regret_2s(matching_pennies(), [0.5, 0.5])
    assert regret == 0.0
    assert np.allclose(expected_payoffs_2s(matching_pennies(), [0.5, 0.5]), 0.5)


def test_mixed_regret_rejects_more_strategies():
    with pytest.raises(ValueError):
        mixed_regret_2s(constant_game(3, 3), [0.5, 0.5, 0.5])


def test_expected_payoffs_match_enumeration(rng):
    n = 6
    game = random_game(rng, n, 2)
    probs = rng.random(n)
    table = expected_payoffs_2s(game, probs)
    for p in range(n):
        pmf = enumerate_poisson_binomial(np.delete(probs, p))
        for m in range(2):
            assert table[p, m] == pytest.approx(float(pmf @ game.utilities[p, m]), abs=1e-12)
