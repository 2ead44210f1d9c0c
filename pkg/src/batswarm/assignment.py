"""Worker-job assignment: cost matrices, random-key decoding, MBA solver, brute-force oracle."""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .engine import RunResult, SearchSpace, SwarmConfig, run_mba

__all__ = [
    "CostMatrix",
    "Assignment",
    "CostMatrixError",
    "RESTAURANT",
    "BRUTE_FORCE_MAX_N",
    "decode_random_keys",
    "assignment_cost",
    "brute_force_optimum",
    "solve_assignment_mba",
    "random_cost_matrix",
    "load_cost_matrix",
    "parse_cost_matrix",
    "scaling_study",
]

BRUTE_FORCE_MAX_N = 10


class CostMatrixError(ValueError):
    """Malformed cost-matrix input.

    ``row``/``col`` are 0-based indices of the offending cell when known; the
    message counts from 1 like a spreadsheet does.
    """

    def __init__(self, message: str, row: Optional[int] = None, col: Optional[int] = None):
        self.row, self.col = row, col
        where = ""
        if row is not None:
            where = f" (row {row + 1}" + (f", column {col + 1})" if col is not None else ")")
        super().__init__(message + where)


@dataclass(frozen=True)
class CostMatrix:
    """``cost[j][w]`` is the time in seconds worker ``w`` needs for job ``j``."""

    cost: np.ndarray

    def __post_init__(self):
        c = np.array(self.cost, dtype=float)
        if c.ndim != 2 or c.shape[0] != c.shape[1] or c.shape[0] == 0:
            raise CostMatrixError(f"cost matrix must be square and non-empty, got shape {c.shape}")
        bad = np.argwhere(~np.isfinite(c) | (c < 0))
        if bad.size:
            r, k = (int(v) for v in bad[0])
            raise CostMatrixError(f"entry {c[r, k]!r} is not a finite non-negative number", r, k)
        c.setflags(write=False)
        object.__setattr__(self, "cost", c)

    @property
    def n(self) -> int:
        return self.cost.shape[0]


@dataclass(frozen=True)
class Assignment:
    """``perm[j]`` is the worker assigned to job ``j``."""

    perm: tuple[int, ...]
    total_cost: float

    @property
    def minutes(self) -> float:
        return self.total_cost / 60.0

    def pairs(self) -> list[tuple[int, int]]:
        return list(enumerate(self.perm))


# Four jobs (rows) by four workers (columns), seconds.
RESTAURANT = CostMatrix(
    np.array(
        [
            [216, 247, 541, 222],
            [437, 937, 849, 543],
            [82, 329, 325, 289],
            [578, 264, 776, 158],
        ],
        dtype=float,
    )
)


def decode_random_keys(position) -> tuple[int, ...]:
    """Rank decoding: ``perm[j]`` is the rank of ``position[j]``, ties to the lower index."""
    keys = np.asarray(position, dtype=float).ravel()
    if keys.size == 0:
        raise ValueError("position must have at least one coordinate")
    order = np.argsort(keys, kind="stable")
    perm = np.empty(keys.size, dtype=int)
    perm[order] = np.arange(keys.size)
    return tuple(int(p) for p in perm)


def _check_perm(perm: Sequence[int], n: int) -> None:
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise ValueError(f"{tuple(perm)} is not a permutation of 0..{n - 1}")


def assignment_cost(m: CostMatrix, perm: Sequence[int]) -> float:
    _check_perm(list(perm), m.n)
    return float(sum(m.cost[j, w] for j, w in enumerate(perm)))


def brute_force_optimum(m: CostMatrix) -> Assignment:
    """Enumerate all ``n!`` permutations; the lexicographically first minimum wins."""
    if m.n > BRUTE_FORCE_MAX_N:
        raise ValueError(
            f"brute force is limited to n <= {BRUTE_FORCE_MAX_N} ({m.n}! permutations requested)"
        )
    c = m.cost.tolist()
    rows = range(m.n)
    best_perm, best_cost = None, math.inf
    # itertools.permutations yields in lexicographic order; strict < keeps the first.
    for perm in itertools.permutations(rows):
        total = sum(c[j][perm[j]] for j in rows)
        if total < best_cost:
            best_perm, best_cost = perm, total
    return Assignment(tuple(best_perm), float(best_cost))


class _DecodedCost:
    """Objective ``x -> assignment_cost(decode_random_keys(x))`` without validation overhead."""

    def __init__(self, m: CostMatrix):
        self._cost = m.cost
        self._rows = np.arange(m.n)

    def __call__(self, x: np.ndarray) -> float:
        perm = np.empty(x.size, dtype=int)
        perm[np.argsort(x, kind="stable")] = self._rows
        return float(self._cost[self._rows, perm].sum())


def solve_assignment_mba(m: CostMatrix, cfg: SwarmConfig) -> tuple[Assignment, RunResult]:
    """Minimize total time with the MBA over random keys in ``[0, 1]^n``.

    The reported cost is recomputed from the decoded permutation.
    """
    space = SearchSpace.box(m.n, 0.0, 1.0)
    result = run_mba(_DecodedCost(m), space, cfg)
    perm = decode_random_keys(result.best.best_position)
    return Assignment(perm, assignment_cost(m, perm)), result


def random_cost_matrix(n: int, rng: np.random.Generator, low: float = 60.0, high: float = 600.0) -> CostMatrix:
    return CostMatrix(rng.uniform(low, high, size=(n, n)))


def scaling_study(dims: Sequence[int], runs: int, cfg: SwarmConfig) -> list[dict]:
    """MBA on random ``n x n`` matrices (entries uniform in [60, 600] s) for each ``n``.

    Run ``k`` of dimension ``n`` draws its matrix from seed ``cfg.rng_seed + k``
    and solves it with the same seed. Returns one row per dimension with the
    mean/std of the solved cost in seconds and the mean in minutes.
    """
    rows = []
    for n in dims:
        costs = []
        for k in range(runs):
            seed = cfg.rng_seed + k
            m = random_cost_matrix(n, np.random.default_rng(seed))
            a, _ = solve_assignment_mba(m, cfg.with_seed(seed))
            costs.append(a.total_cost)
        c = np.asarray(costs)
        rows.append(
            {
                "dimension": n,
                "runs": runs,
                "average_value": float(c.mean()),
                "standard_deviation": float(c.std(ddof=1)) if runs > 1 else 0.0,
                "work_time_minutes": float(c.mean() / 60.0),
            }
        )
    return rows


# --- input formats -----------------------------------------------------------


def _parse_number(text: str, row: int, col: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise CostMatrixError(f"cannot parse {text.strip()!r} as a number", row, col) from None
    if not math.isfinite(value):
        raise CostMatrixError(f"entry {text.strip()!r} is not finite", row, col)
    if value < 0:
        raise CostMatrixError(f"negative entry {value:g}", row, col)
    return value


def _from_rows(rows: list[list]) -> CostMatrix:
    n = len(rows)
    if n == 0:
        raise CostMatrixError("cost matrix is empty")
    parsed = []
    for r, row in enumerate(rows):
        if len(row) != n:
            raise CostMatrixError(f"matrix is not square: expected {n} columns, got {len(row)}", r)
        parsed.append([_parse_number(str(v), r, k) for k, v in enumerate(row)])
    return CostMatrix(np.array(parsed))


def parse_cost_matrix(text: str, fmt: str = "csv") -> CostMatrix:
    """Parse CSV (one job per line, one worker per column) or JSON ``{"costs": [[...]]}``.

    A CSV header line is skipped when its first cell is not numeric, and a
    leading label column is dropped when every row starts with a non-numeric
    cell.
    """
    if fmt == "json":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CostMatrixError(f"invalid JSON: {exc.msg}") from None
        rows = doc.get("costs") if isinstance(doc, dict) else doc
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise CostMatrixError('JSON input must be {"costs": [[...], ...]}')
        return _from_rows(rows)
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    rows = [[c.strip() for c in row] for row in csv.reader(io.StringIO(text)) if any(c.strip() for c in row)]
    if rows and not _numeric(rows[0][-1]):
        rows = rows[1:]
    if rows and all(not _numeric(r[0]) for r in rows):
        rows = [r[1:] for r in rows]
    return _from_rows(rows)


def _numeric(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def load_cost_matrix(path) -> CostMatrix:
    path = Path(path)
    fmt = "json" if path.suffix.lower() == ".json" else "csv"
    return parse_cost_matrix(path.read_text(), fmt)
