"""Bat Algorithm and Modified Bat Algorithm toolkit.

Engines live in :mod:`batswarm.engine`, the F1-F23 suite in
:mod:`batswarm.benchmarks`, the rank-sum test in :mod:`batswarm.stats` and
the worker-job scheduling solver in :mod:`batswarm.assignment`.
"""

from .assignment import (
    RESTAURANT,
    Assignment,
    CostMatrix,
    assignment_cost,
    brute_force_optimum,
    decode_random_keys,
    solve_assignment_mba,
)
from .benchmarks import BenchmarkSpec, evaluate, penalty_u, spec_of, y_transform
from .engine import (
    BatState,
    BestRecord,
    NonFiniteObjectiveError,
    RunResult,
    SearchSpace,
    SwarmConfig,
    run_ba,
    run_mba,
)
from .stats import RankSumReport, SampleSummary, rank_sum_test, significance_table, summarize

__version__ = "0.1.0"
