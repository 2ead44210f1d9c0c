"""Sample summaries and the two-sided Wilcoxon rank-sum test."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "InsufficientSampleError",
    "SampleSummary",
    "RankSumReport",
    "SignificanceRow",
    "summarize",
    "rank_sum_test",
    "rank_sum_null_counts",
    "significance_table",
    "ALPHA",
    "EXACT_MAX_N",
]

ALPHA = 0.05
EXACT_MAX_N = 8


class InsufficientSampleError(ValueError):
    pass


@dataclass(frozen=True)
class SampleSummary:
    n: int
    mean: float
    std_dev: float
    min: float
    max: float


def summarize(sample: Iterable[float]) -> SampleSummary:
    """Mean, sample standard deviation (n - 1 denominator), min and max."""
    x = np.asarray(list(sample), dtype=float)
    if x.size < 2:
        raise InsufficientSampleError(f"need at least 2 observations, got {x.size}")
    mean = float(np.mean(x))
    return SampleSummary(
        n=int(x.size),
        mean=min(max(mean, float(x.min())), float(x.max())),
        std_dev=float(np.std(x, ddof=1)),
        min=float(x.min()),
        max=float(x.max()),
    )


@dataclass(frozen=True)
class RankSumReport:
    """Result of :func:`rank_sum_test`.

    ``u_statistic`` is the Mann-Whitney U of the first sample, i.e. its rank
    sum minus ``n(n+1)/2``. ``z_score`` is the continuity-corrected normal
    score (reported for the exact method too).
    """

    u_statistic: float
    rank_sum: float
    z_score: float
    p_value: float
    method: str
    n: int
    m: int
    degenerate: bool = False

    @property
    def significant(self) -> bool:
        return self.p_value < ALPHA


def _average_ranks(pooled: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """1-based ranks with ties sharing their average rank, plus tie-group sizes."""
    order = np.argsort(pooled, kind="mergesort")
    ranks = np.empty(pooled.size)
    sorted_vals = pooled[order]
    ties = []
    i = 0
    while i < pooled.size:
        j = i
        while j + 1 < pooled.size and sorted_vals[j + 1] == sorted_vals[i]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        ties.append(j - i + 1)
        i = j + 1
    return ranks, np.asarray(ties)


def rank_sum_null_counts(n: int, m: int) -> np.ndarray:
    """Null frequencies of the rank sum of ``n`` draws from ranks ``1..n+m``.

    Entry ``k`` counts the subsets whose rank sum equals ``k + n(n+1)/2``; the
    entries add up to ``C(n+m, n)``. Stored as float64, exact while the counts
    stay below 2**53.
    """
    total = n + m
    max_sum = n * (2 * total - n + 1) // 2
    # counts[j, s]: size-j subsets of the ranks seen so far with sum s.
    counts = np.zeros((n + 1, max_sum + 1))
    counts[0, 0] = 1.0
    for r in range(1, total + 1):
        for j in range(min(r, n), 0, -1):
            counts[j, r:] += counts[j - 1, : max_sum + 1 - r]
    return counts[n, n * (n + 1) // 2 :]


def _exact_p(w: float, n: int, m: int) -> float:
    if n > m:
        # Work with the smaller sample; the two-sided p-value is unchanged.
        w = (n + m) * (n + m + 1) / 2.0 - w
        n, m = m, n
    counts = rank_sum_null_counts(n, m)
    k = int(round(w)) - n * (n + 1) // 2
    total = counts.sum()
    lower = counts[: k + 1].sum() / total
    upper = counts[k:].sum() / total
    return float(min(1.0, 2.0 * min(lower, upper)))


def rank_sum_test(a: Sequence[float], b: Sequence[float], method: str = "auto") -> RankSumReport:
    """Two-sided Wilcoxon rank-sum (Mann-Whitney) test of ``a`` against ``b``.

    With ``method="auto"``, tie-free pairs with ``min(n, m) <= 8`` use the
    exact null distribution and everything else the normal approximation
    (tie-corrected variance, 0.5 continuity correction). ``"exact"`` and
    ``"normal_approx"`` force a route; the exact route refuses tied data and
    falls back to the approximation. When every pooled value is identical the
    test is degenerate and reports ``p = 1``.
    """
    if method not in ("auto", "exact", "normal_approx"):
        raise ValueError(f"unknown method {method!r}")
    x = np.asarray(a, dtype=float).ravel()
    y = np.asarray(b, dtype=float).ravel()
    n, m = x.size, y.size
    if n == 0 or m == 0:
        raise InsufficientSampleError("both samples must be non-empty")
    pooled = np.concatenate([x, y])
    if not np.all(np.isfinite(pooled)):
        raise ValueError("samples must be finite")
    ranks, ties = _average_ranks(pooled)
    w = float(ranks[:n].sum())
    u = w - n * (n + 1) / 2.0
    N = n + m

    if np.all(pooled == pooled[0]):
        return RankSumReport(u, w, 0.0, 1.0, "normal_approx", n, m, degenerate=True)

    mu = n * m / 2.0
    tie_term = float(np.sum(ties**3 - ties)) / (N * (N - 1))
    var = n * m / 12.0 * ((N + 1) - tie_term)
    dev = u - mu
    z = math.copysign(max(abs(dev) - 0.5, 0.0), dev) / math.sqrt(var)

    has_ties = bool(np.any(ties > 1))
    use_exact = method == "exact" or (method == "auto" and min(n, m) <= EXACT_MAX_N)
    if use_exact and not has_ties:
        return RankSumReport(u, w, z, _exact_p(w, n, m), "exact", n, m)
    p = min(1.0, math.erfc(abs(z) / math.sqrt(2.0)))
    return RankSumReport(u, w, z, p, "normal_approx", n, m)


@dataclass(frozen=True)
class SignificanceRow:
    function: str
    report: RankSumReport

    @property
    def p_value(self) -> float:
        return self.report.p_value

    @property
    def significant(self) -> bool:
        return self.report.significant


def significance_table(pairs) -> list[SignificanceRow]:
    """One row per ``(function_id, ba_sample, mba_sample)`` triple, in input order."""
    return [SignificanceRow(fid, rank_sum_test(ba, mba)) for fid, ba, mba in pairs]
