"""Seeded multi-run experiments and the BA-vs-MBA comparison."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from . import benchmarks
from .engine import RunResult, SearchSpace, SwarmConfig, run
from .stats import RankSumReport, SampleSummary, rank_sum_test, summarize

__all__ = [
    "Target",
    "ExperimentPlan",
    "RunRecord",
    "ComparisonRow",
    "PRESETS",
    "resolve_targets",
    "run_target",
    "run_plan",
    "compare",
    "winner",
    "mean_trace",
]

ALGORITHMS = ("ba", "mba")


@dataclass(frozen=True)
class Target:
    function: str
    dim: int

    @property
    def spec(self) -> benchmarks.BenchmarkSpec:
        return benchmarks.spec_of(self.function)

    def space(self) -> SearchSpace:
        lo, hi = self.spec.bounds(self.dim)
        return SearchSpace(lo, hi)


# Higher-dimensional re-runs at population 40.
PRESETS = {
    "yang": {
        "population_size": 40,
        "targets": (Target("F5", 16), Target("F1", 256), Target("F3", 128), Target("F10", 128)),
    },
}


def resolve_targets(functions: Iterable[str] | str, dim_override: Optional[int] = None) -> list[Target]:
    """Turn ``"all"`` or a list of ids into targets, validating ``dim_override``.

    Raises ``KeyError`` for unknown ids and ``ValueError`` when a dimension is
    forced onto a fixed-dimension function.
    """
    if isinstance(functions, str):
        functions = [functions]
    ids: list[str] = []
    for item in functions:
        for token in str(item).split(","):
            token = token.strip()
            if not token:
                continue
            if token.lower() == "all":
                ids.extend(benchmarks.FUNCTION_IDS)
            else:
                ids.append(benchmarks.normalize_id(token))
    if not ids:
        raise ValueError("no functions selected")
    targets = []
    for fid in dict.fromkeys(ids):
        spec = benchmarks.spec_of(fid)
        targets.append(Target(fid, spec.resolve_dim(dim_override)))
    return targets


@dataclass
class ExperimentPlan:
    algorithm: str = "both"
    targets: Sequence[Target] = field(default_factory=lambda: resolve_targets("all"))
    runs: int = 30
    cfg: SwarmConfig = field(default_factory=SwarmConfig)

    def __post_init__(self):
        if self.algorithm not in ("ba", "mba", "both"):
            raise ValueError(f"algorithm must be ba, mba or both, got {self.algorithm!r}")
        if self.runs < 1:
            raise ValueError(f"runs must be positive, got {self.runs}")

    @property
    def algorithms(self) -> tuple[str, ...]:
        return ALGORITHMS if self.algorithm == "both" else (self.algorithm,)


@dataclass
class RunRecord:
    function: str
    algorithm: str
    dim: int
    run: int
    seed: int
    result: RunResult

    @property
    def best_fitness(self) -> float:
        return self.result.best_fitness


def run_target(target: Target, algorithm: str, runs: int, cfg: SwarmConfig) -> list[RunRecord]:
    """``runs`` independent runs; run ``k`` uses seed ``cfg.rng_seed + k``."""
    space = target.space()
    spec = target.spec
    records = []
    for k in range(runs):
        seed = cfg.rng_seed + k
        res = run(spec, space, cfg.with_seed(seed), modified=(algorithm == "mba"))
        records.append(RunRecord(target.function, algorithm, target.dim, k, seed, res))
    return records


def run_plan(plan: ExperimentPlan, progress=None) -> list[RunRecord]:
    records: list[RunRecord] = []
    for target in plan.targets:
        for algo in plan.algorithms:
            if progress is not None:
                progress(target, algo)
            records.extend(run_target(target, algo, plan.runs, plan.cfg))
    return records


def winner(mba_value: float, ba_value: float) -> str:
    """``+`` when the MBA value is strictly smaller, ``-`` when the BA's is, else ``=``."""
    if mba_value < ba_value:
        return "+"
    if ba_value < mba_value:
        return "-"
    return "="


@dataclass
class ComparisonRow:
    function: str
    dim: int
    ba: SampleSummary
    mba: SampleSummary
    rank_sum: RankSumReport
    ba_finals: list[float]
    mba_finals: list[float]

    @property
    def min_avg(self) -> str:
        return winner(self.mba.mean, self.ba.mean)

    @property
    def min_std(self) -> str:
        return winner(self.mba.std_dev, self.ba.std_dev)


def compare(records: Sequence[RunRecord]) -> list[ComparisonRow]:
    """Group seed-paired BA/MBA records by function and build one row per function."""
    by_fn: dict[str, dict[str, list[RunRecord]]] = {}
    for rec in records:
        by_fn.setdefault(rec.function, {}).setdefault(rec.algorithm, []).append(rec)
    rows = []
    for fid, groups in by_fn.items():
        if set(groups) != set(ALGORITHMS):
            raise ValueError(f"{fid}: comparison needs both ba and mba runs")
        ba = [r.best_fitness for r in sorted(groups["ba"], key=lambda r: r.run)]
        mba = [r.best_fitness for r in sorted(groups["mba"], key=lambda r: r.run)]
        rows.append(
            ComparisonRow(
                function=fid,
                dim=groups["ba"][0].dim,
                ba=summarize(ba),
                mba=summarize(mba),
                rank_sum=rank_sum_test(ba, mba),
                ba_finals=ba,
                mba_finals=mba,
            )
        )
    return rows


def mean_trace(records: Sequence[RunRecord]) -> np.ndarray:
    return np.mean([r.result.trace for r in records], axis=0)
