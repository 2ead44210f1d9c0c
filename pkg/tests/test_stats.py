import itertools
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from batswarm.stats import (
    InsufficientSampleError,
    rank_sum_null_counts,
    rank_sum_test,
    significance_table,
    summarize,
)


def enumerated_p(a, b):
    """Two-sided exact p by listing every split of the pooled ranks (tie-free data)."""
    pooled = sorted(list(a) + list(b))
    rank = {v: i + 1 for i, v in enumerate(pooled)}
    w = sum(rank[v] for v in a)
    sums = [sum(c) for c in itertools.combinations(range(1, len(pooled) + 1), len(a))]
    lo = sum(s <= w for s in sums) / len(sums)
    hi = sum(s >= w for s in sums) / len(sums)
    return min(1.0, 2 * min(lo, hi))


distinct_pair = st.integers(3, 8).flatmap(
    lambda n: st.integers(3, 8).flatmap(
        lambda m: st.lists(st.integers(1, 10_000), min_size=n + m, max_size=n + m, unique=True).map(
            lambda v: (v[:n], v[n:])
        )
    )
)


# --- summarize --------------------------------------------------------------


def test_summarize_examples():
    s = summarize([1, 2, 3])
    assert (s.n, s.mean, s.std_dev, s.min, s.max) == (3, 2.0, 1.0, 1.0, 3.0)
    s = summarize([5, 5, 5, 5])
    assert (s.mean, s.std_dev) == (5.0, 0.0)
    s = summarize([2, 4, 4, 4, 5, 5, 7, 9])
    assert s.mean == 5.0
    assert s.std_dev == pytest.approx(math.sqrt(32 / 7), rel=1e-12)
    assert s.std_dev == pytest.approx(2.138, abs=5e-4)


@pytest.mark.parametrize("sample", [[], [1.0]])
def test_summarize_needs_two_observations(sample):
    with pytest.raises(InsufficientSampleError):
        summarize(sample)


@given(st.lists(st.floats(-1e6, 1e6), min_size=2, max_size=40), st.floats(-1e3, 1e3))
def test_summarize_translation(xs, c):
    s, t = summarize(xs), summarize([x + c for x in xs])
    assert s.std_dev >= 0 and s.min <= s.mean <= s.max
    assert t.mean == pytest.approx(s.mean + c, abs=1e-6)
    assert t.std_dev == pytest.approx(s.std_dev, rel=1e-6, abs=1e-6)


# --- rank-sum test --------------------------------------------------------------


def test_identical_samples():
    r = rank_sum_test([1, 2, 3], [1, 2, 3])
    assert r.z_score == 0.0
    assert r.p_value == pytest.approx(1.0)
    assert not r.significant


def test_fully_separated_triples_exact_p():
    r = rank_sum_test([1, 2, 3], [10, 11, 12])
    assert r.method == "exact"
    assert r.p_value == pytest.approx(2 / math.comb(6, 3), abs=1e-15)
    assert r.u_statistic == 0.0 and r.rank_sum == 6.0


def test_fully_separated_tens():
    r = rank_sum_test(range(1, 11), range(11, 21))
    assert r.p_value < 1e-3
    assert r.significant
    assert 2 / math.comb(20, 10) < 1e-3  # exact oracle value


def test_degenerate_pool():
    r = rank_sum_test([4.0, 4.0], [4.0, 4.0, 4.0])
    assert r.degenerate and r.p_value == 1.0


def test_errors():
    with pytest.raises(InsufficientSampleError):
        rank_sum_test([], [1.0])
    with pytest.raises(ValueError):
        rank_sum_test([1.0, np.nan], [2.0])
    with pytest.raises(ValueError, match="unknown method"):
        rank_sum_test([1.0], [2.0], method="t")


def test_ties_use_normal_approximation():
    r = rank_sum_test([1, 2, 2, 3], [2, 4, 5])
    assert r.method == "normal_approx"
    assert r.rank_sum == 1 + 3 + 3 + 5  # ties share the average rank 3


def test_large_samples_use_normal_approximation():
    rng = np.random.default_rng(0)
    assert rank_sum_test(rng.random(9), rng.random(30)).method == "normal_approx"
    assert rank_sum_test(rng.random(8), rng.random(30)).method == "exact"


@pytest.mark.parametrize("n,m", [(1, 1), (2, 5), (4, 4), (8, 12)])
def test_null_counts_sum_to_binomial(n, m):
    counts = rank_sum_null_counts(n, m)
    assert counts.sum() == math.comb(n + m, n)
    assert counts.size == n * m + 1
    assert np.array_equal(counts, counts[::-1])  # the null distribution is symmetric


@settings(max_examples=150, deadline=None)
@given(distinct_pair)
def test_exact_matches_enumeration_oracle(pair):
    a, b = pair
    assert rank_sum_test(a, b, method="exact").p_value == pytest.approx(enumerated_p(a, b), abs=1e-9)


def test_exact_matches_scipy():
    from scipy.stats import mannwhitneyu

    rng = np.random.default_rng(2)
    for _ in range(100):
        n, m = rng.integers(1, 9, 2)
        a, b = rng.normal(size=n), rng.normal(0.7, size=m)
        ours = rank_sum_test(a, b, method="exact").p_value
        ref = mannwhitneyu(a, b, alternative="two-sided", method="exact").pvalue
        assert ours == pytest.approx(ref, abs=1e-9)


def test_normal_approx_matches_scipy_with_ties():
    from scipy.stats import mannwhitneyu

    rng = np.random.default_rng(3)
    for _ in range(100):
        n, m = rng.integers(5, 40, 2)
        a, b = rng.integers(0, 6, n), rng.integers(1, 7, m)
        if np.all(np.concatenate([a, b]) == a[0]):
            continue
        ours = rank_sum_test(a, b, method="normal_approx").p_value
        ref = mannwhitneyu(a, b, alternative="two-sided", method="asymptotic", use_continuity=True).pvalue
        assert ours == pytest.approx(ref, abs=1e-9)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(-1e3, 1e3), min_size=1, max_size=25), st.lists(st.floats(-1e3, 1e3), min_size=1, max_size=25))
def test_symmetry_and_range(a, b):
    r1, r2 = rank_sum_test(a, b), rank_sum_test(b, a)
    assert 0.0 <= r1.p_value <= 1.0
    assert r1.p_value == pytest.approx(r2.p_value, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.floats(0.01, 100), min_size=1, max_size=20),
    st.lists(st.floats(0.01, 100), min_size=1, max_size=20),
)
def test_invariant_under_monotone_maps(a, b):
    base = rank_sum_test(a, b).p_value
    affine = rank_sum_test([2 * x + 1 for x in a], [2 * x + 1 for x in b]).p_value
    cubic = rank_sum_test([x**3 for x in a], [x**3 for x in b]).p_value
    # Both maps are strictly increasing; guard against floating ties they might merge.
    pooled = a + b
    assume(len(set(pooled)) == len(set(x**3 for x in pooled)) == len(set(2 * x + 1 for x in pooled)))
    assert affine == pytest.approx(base, abs=1e-12)
    assert cubic == pytest.approx(base, abs=1e-12)


def test_exact_and_normal_agree_on_random_instances():
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(100):
        n, m = rng.integers(3, 9, 2)
        a, b = rng.normal(size=n), rng.normal(rng.uniform(0, 2), size=m)
        worst = max(
            worst,
            abs(rank_sum_test(a, b, method="exact").p_value - rank_sum_test(a, b, method="normal_approx").p_value),
        )
    assert worst <= 0.05


def test_normal_approximation_is_coarse_below_three():
    # One observation against a handful: the discrete null is too lumpy for a normal fit.
    exact = rank_sum_test([0.0], [1, 2, 3, 4, 5, 6, 7], method="exact").p_value
    approx = rank_sum_test([0.0], [1, 2, 3, 4, 5, 6, 7], method="normal_approx").p_value
    assert exact == pytest.approx(0.25)
    assert abs(exact - approx) > 0.05


def test_exact_and_normal_within_002_from_eight():
    rng = np.random.default_rng(5)
    for n in (8, 9, 10):
        for _ in range(50):
            a, b = rng.normal(size=n), rng.normal(rng.uniform(0, 2), size=n)
            d = rank_sum_test(a, b, method="exact").p_value - rank_sum_test(a, b, method="normal_approx").p_value
            assert abs(d) <= 0.02


# --- significance table ---------------------------------------------------------


def test_significance_table():
    assert significance_table([]) == []
    rows = significance_table([("F1", [1, 2, 3], [1, 2, 3])])
    assert len(rows) == 1 and rows[0].function == "F1"
    assert rows[0].p_value == pytest.approx(1.0) and not rows[0].significant
    rows = significance_table(
        [("F2", list(range(1, 11)), list(range(11, 21))), ("F3", [1, 2], [1.5, 2.5])]
    )
    assert [r.function for r in rows] == ["F2", "F3"]
    assert [r.significant for r in rows] == [True, False]
