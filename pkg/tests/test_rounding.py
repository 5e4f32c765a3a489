import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from anongames.distributions import poisson_binomial_pmf, tv_distance_arrays
from anongames.harness import exact_tv_after_rounding, tv_bound
from anongames.rounding import RoundingConfig, classify, naive_round, round_medium, round_probabilities, round_small

ks = st.integers(2, 400)
prob_lists = st.lists(st.floats(0.0, 1.0, allow_nan=False), min_size=0, max_size=80)


def test_config_validation():
    with pytest.raises(ValueError):
        RoundingConfig(1)
    with pytest.raises(ValueError):
        RoundingConfig(10, alpha=0.2, beta=0.3)
    assert RoundingConfig(100).cut == 31
    assert RoundingConfig(16).cut == 8 and RoundingConfig(16).degenerate
    assert RoundingConfig(81).cut == 27  # exact power, guarded against float noise


@pytest.mark.parametrize("p, region", [(0.10, "L"), (0.31, "M1"), (0.30, "L"), (0.50, "M2"), (0.69, "H"), (0.68, "M2"), (0.99, "H")])
def test_classify_k100(p, region):
    assert classify(p, RoundingConfig(100)) == region


def test_classify_edges():
    for k in (2, 10, 100, 400):
        assert classify(0.0, RoundingConfig(k)) == "L"
        assert classify(1.0, RoundingConfig(k)) == "H"
    assert classify(0.49, RoundingConfig(10)) == "L"
    assert classify(0.5, RoundingConfig(10)) == "H"
    with pytest.raises(ValueError):
        classify(1.5, RoundingConfig(10))


def test_small_examples():
    result = round_probabilities([0.05] * 4, RoundingConfig(10))
    assert np.allclose(result.q, [0.1, 0.1, 0.0, 0.0])
    assert result.q.sum() == pytest.approx(0.2)
    result = round_probabilities([0.05, 0.15], RoundingConfig(10))
    assert np.allclose(result.q, [0.0, 0.2])
    audit = result.workspaces["L"].intervals
    assert audit[1].carry_in == pytest.approx(0.05)
    assert audit[1].promoted == 1


def test_medium_examples():
    config = RoundingConfig(100)
    result = round_probabilities([0.355, 0.355], config)
    assert np.allclose(result.q, [0.36, 0.35])
    (interval,) = result.workspaces["M1"].intervals
    assert interval.j == 35 and interval.zeta == pytest.approx(0.0, abs=1e-12)
    result = round_probabilities([0.355], config)
    assert np.allclose(result.q, [0.35])
    assert result.workspaces["M1"].intervals[0].zeta == pytest.approx(0.005, abs=1e-12)


def test_complement_example():
    result = round_probabilities([0.95] * 4, RoundingConfig(10))
    assert np.allclose(result.q, [0.9, 0.9, 1.0, 1.0])


def test_procedures_reject_wrong_region():
    config = RoundingConfig(100)
    with pytest.raises(ValueError):
        round_small([(0, 0.4)], config)
    with pytest.raises(ValueError):
        round_medium([(0, 0.1)], config)


@given(ks, st.lists(st.integers(0, 10**6), max_size=60))
@settings(max_examples=100, deadline=None)
def test_gridded_input_unchanged(k, raw):
    levels = [r % (k + 1) for r in raw]
    p = np.array(levels, dtype=float) / k
    result = round_probabilities(p, RoundingConfig(k))
    assert np.array_equal(result.levels, levels)
    for ws in result.workspaces.values():
        for interval in ws.intervals:
            assert interval.promoted == 0
            assert not interval.members or interval.zeta in (None, 0.0)
        assert ws.final_carry in (None, 0.0)


@given(prob_lists, ks)
@settings(max_examples=300, deadline=None)
def test_grid_and_closeness(p, k):
    result = round_probabilities(p, RoundingConfig(k))
    q = result.q
    assert np.all(np.abs(q * k - np.round(q * k)) <= 1e-12)
    assert np.all(np.abs(q - np.asarray(p)) <= 1 / k + 1e-12)
    assert np.all((q >= 0) & (q <= 1))


@given(prob_lists, ks)
@settings(max_examples=200, deadline=None)
def test_support_preserved(p, k):
    q = round_probabilities(p, RoundingConfig(k)).q
    p = np.asarray(p)
    assert np.all(q[p == 0.0] == 0.0)
    assert np.all(q[p == 1.0] == 1.0)


@given(prob_lists, ks)
@settings(max_examples=200, deadline=None)
def test_idempotent(p, k):
    config = RoundingConfig(k)
    q = round_probabilities(p, config).q
    assert np.array_equal(round_probabilities(q, config).q, q)


@given(prob_lists, ks)
@settings(max_examples=300, deadline=None)
def test_region_sums(p, k):
    config = RoundingConfig(k)
    result = round_probabilities(p, config)
    p = np.asarray(p)
    for region in ("L", "H"):
        mask = np.array([r == region for r in result.region_of], dtype=bool)
        if mask.any():
            assert abs(result.q[mask].sum() - p[mask].sum()) <= 1 / k + 1e-12


@given(prob_lists, ks)
@settings(max_examples=300, deadline=None)
def test_interval_audit_invariants(p, k):
    config = RoundingConfig(k)
    result = round_probabilities(p, config)
    for name in ("L", "H"):
        for interval in result.workspaces[name].intervals:
            assert all(0 <= d < 1 / k + 1e-12 for d in interval.deltas)
            assert 0 <= interval.carry_in < 1 / k + 1e-12
            assert interval.promoted <= len(interval.members)
    for name in ("M1", "M2"):
        for interval in result.workspaces[name].intervals:
            assert all(0 <= d < 1 / k + 1e-12 for d in interval.deltas)
            assert -1e-12 <= interval.zeta <= 1 / k + 1e-12
            j, m = interval.j, interval.promoted
            identity = (1 - 2 * j / k) * interval.zeta + (m / k**2 - math.fsum(d * d for d in interval.deltas))
            assert interval.var_p - interval.var_q == pytest.approx(identity, abs=1e-12)


def test_promotion_prefers_largest_offset_then_lowest_index():
    config = RoundingConfig(100)
    result = round_probabilities([0.352, 0.357, 0.355, 0.356], config)
    # S = 0.02 promotes two: 0.357 and 0.356
    assert np.allclose(result.q, [0.35, 0.36, 0.35, 0.36])
    result = round_probabilities([0.355, 0.355, 0.355, 0.355], config)
    assert np.allclose(result.q, [0.36, 0.36, 0.35, 0.35])


@pytest.mark.parametrize("p, k, q", [([0.04], 10, [0.0]), ([0.05], 10, [0.1]), ([0.26, 0.74], 4, [0.25, 0.75])])
def test_naive_round(p, k, q):
    assert np.allclose(naive_round(p, k), q)


def test_naive_counterexample_and_fix():
    p = np.full(100, 0.01)
    base = poisson_binomial_pmf(p)
    naive = tv_distance_arrays(base, poisson_binomial_pmf(naive_round(p, 10)))
    assert naive == pytest.approx(1 - 0.99**100, abs=1e-9)
    assert naive == pytest.approx(0.633968, abs=1e-6)
    full, loo = exact_tv_after_rounding(p, RoundingConfig(10))
    assert full <= 0.2 and loo <= 0.2


def test_exact_tv_edge_cases():
    assert exact_tv_after_rounding([0.2, 0.5, 1.0], RoundingConfig(10)) == (0.0, 0.0)
    full, loo = exact_tv_after_rounding([0.37], RoundingConfig(10))
    assert loo == 0.0 and full > 0


@given(st.lists(st.floats(0.0, 1.0), min_size=1, max_size=120), st.sampled_from([16, 25, 50, 100, 200, 400]))
@settings(max_examples=80, deadline=None)
def test_tv_bound_property(p, k):
    assume(len(p) >= 1)
    full, loo = exact_tv_after_rounding(p, RoundingConfig(k))
    assert full <= tv_bound(k)
    assert loo <= tv_bound(k)


def test_json_shape():
    doc = round_probabilities([0.05, 0.4, 0.6, 0.97], RoundingConfig(100)).to_dict()
    assert set(doc) >= {"k", "alpha", "beta", "p", "q", "levels", "region_of", "workspaces"}
    assert set(doc["workspaces"]) == {"L", "M1", "M2", "H"}
