"""CSV and JSON report serialization.

CSV numbers use scientific notation with three decimals (``3.406E+00``);
JSON keeps full float precision. Column order is fixed:

``bench``   row_type, function, algorithm, dim, run, seed, best_fitness,
            initial_best, evaluations, n, mean, std_dev, min, max
``compare`` function, dim, runs, ba_mean, mba_mean, min_avg, ba_std, mba_std,
            min_std, u_statistic, z_score, p_value, method, significant
``assign``  job, worker, seconds (one row per job, then a ``total`` row)
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from dataclasses import asdict
from pathlib import Path
from typing import Optional, Sequence

from .assignment import Assignment
from .engine import SwarmConfig
from .experiments import ComparisonRow, RunRecord
from .stats import summarize

BENCH_COLUMNS = (
    "row_type", "function", "algorithm", "dim", "run", "seed", "best_fitness",
    "initial_best", "evaluations", "n", "mean", "std_dev", "min", "max",
)
COMPARE_COLUMNS = (
    "function", "dim", "runs", "ba_mean", "mba_mean", "min_avg", "ba_std", "mba_std",
    "min_std", "u_statistic", "z_score", "p_value", "method", "significant",
)
ASSIGN_COLUMNS = ("job", "worker", "seconds")


def fmt_float(value: float) -> str:
    return f"{value:.3E}"


def _csv(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    w.writerows(rows)
    return buf.getvalue()


def _dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def write_text(path, text: str) -> None:
    """Write ``text`` to ``path`` atomically (temp file in the same directory, then rename)."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


# --- bench -------------------------------------------------------------------


def _groups(records: Sequence[RunRecord]):
    groups: dict[tuple[str, str], list[RunRecord]] = {}
    for r in records:
        groups.setdefault((r.function, r.algorithm), []).append(r)
    return groups


def bench_csv(records: Sequence[RunRecord]) -> str:
    rows = []
    for (fid, algo), recs in _groups(records).items():
        for r in recs:
            rows.append(
                ["run", fid, algo, r.dim, r.run, r.seed, fmt_float(r.best_fitness),
                 fmt_float(r.result.initial_best), r.result.evaluations, "", "", "", "", ""]
            )
        finals = [r.best_fitness for r in recs]
        if len(finals) >= 2:
            s = summarize(finals)
            rows.append(
                ["summary", fid, algo, recs[0].dim, "", "", "", "", "", s.n,
                 fmt_float(s.mean), fmt_float(s.std_dev), fmt_float(s.min), fmt_float(s.max)]
            )
    return _csv(BENCH_COLUMNS, rows)


def bench_json(records: Sequence[RunRecord], cfg: SwarmConfig) -> str:
    out = []
    for (fid, algo), recs in _groups(records).items():
        finals = [r.best_fitness for r in recs]
        out.append(
            {
                "function": fid,
                "algorithm": algo,
                "dim": recs[0].dim,
                "runs": [
                    {
                        "run": r.run,
                        "seed": r.seed,
                        "best_fitness": r.best_fitness,
                        "initial_best": r.result.initial_best,
                        "evaluations": r.result.evaluations,
                    }
                    for r in recs
                ],
                "summary": asdict(summarize(finals)) if len(finals) >= 2 else None,
            }
        )
    return _dumps({"schema": "batswarm.bench/1", "config": asdict(cfg), "results": out})


# --- compare -----------------------------------------------------------------


def compare_csv(rows: Sequence[ComparisonRow]) -> str:
    body = [
        [
            r.function, r.dim, r.ba.n, fmt_float(r.ba.mean), fmt_float(r.mba.mean), r.min_avg,
            fmt_float(r.ba.std_dev), fmt_float(r.mba.std_dev), r.min_std,
            fmt_float(r.rank_sum.u_statistic), fmt_float(r.rank_sum.z_score),
            fmt_float(r.rank_sum.p_value), r.rank_sum.method,
            "degenerate" if r.rank_sum.degenerate else ("yes" if r.rank_sum.significant else "no"),
        ]
        for r in rows
    ]
    return _csv(COMPARE_COLUMNS, body)


def compare_json(rows: Sequence[ComparisonRow], cfg: SwarmConfig) -> str:
    out = []
    for r in rows:
        rs = asdict(r.rank_sum)
        rs["significant"] = r.rank_sum.significant
        out.append(
            {
                "function": r.function,
                "dim": r.dim,
                "ba": asdict(r.ba),
                "mba": asdict(r.mba),
                "min_avg": r.min_avg,
                "min_std": r.min_std,
                "rank_sum": rs,
                "ba_finals": list(r.ba_finals),
                "mba_finals": list(r.mba_finals),
            }
        )
    wins_avg = sum(r.min_avg == "+" for r in rows)
    wins_std = sum(r.min_std == "+" for r in rows)
    return _dumps(
        {
            "schema": "batswarm.compare/1",
            "config": asdict(cfg),
            "mba_wins_mean": wins_avg,
            "mba_wins_std": wins_std,
            "rows": out,
        }
    )


# --- assign ------------------------------------------------------------------


def assign_csv(a: Assignment, cost_matrix) -> str:
    rows = [[j + 1, w + 1, fmt_float(cost_matrix.cost[j, w])] for j, w in a.pairs()]
    rows.append(["total", "", fmt_float(a.total_cost)])
    return _csv(ASSIGN_COLUMNS, rows)


def assign_json(a: Assignment, cost_matrix, oracle: Optional[Assignment] = None, evaluations: Optional[int] = None) -> str:
    doc = {
        "schema": "batswarm.assign/1",
        "n": cost_matrix.n,
        "assignment": [{"job": j + 1, "worker": w + 1, "seconds": float(cost_matrix.cost[j, w])} for j, w in a.pairs()],
        "total_seconds": a.total_cost,
        "total_minutes": a.minutes,
        "evaluations": evaluations,
    }
    if oracle is not None:
        doc["oracle"] = {"perm": [w + 1 for w in oracle.perm], "total_seconds": oracle.total_cost}
        doc["match"] = a.total_cost == oracle.total_cost
    return _dumps(doc)


def study_csv(rows: Sequence[dict]) -> str:
    cols = ("dimension", "runs", "average_value", "standard_deviation", "work_time_minutes")
    return _csv(cols, [[r["dimension"], r["runs"]] + [fmt_float(r[c]) for c in cols[2:]] for r in rows])
