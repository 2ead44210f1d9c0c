"""Acceptance criteria, each at its stated tolerance.

Every test prints one ``PASS``/``FAIL`` line and the full list is repeated in
the pytest terminal summary. Criteria 1-3 share one run of the full protocol
(23 functions, population 30, 500 iterations, dimension 30, 30 seed-paired
runs per algorithm), which takes several minutes on one core.
"""

import itertools
import subprocess
import sys
import time

import numpy as np
import pytest

from batswarm.assignment import RESTAURANT, assignment_cost, brute_force_optimum, solve_assignment_mba
from batswarm.benchmarks import FUNCTION_IDS, evaluate, spec_of
from batswarm.engine import BestRecord, SearchSpace, SwarmConfig, local_walk_ba, local_walk_mba, run_ba, run_mba
from batswarm.experiments import ExperimentPlan, compare, resolve_targets, run_plan
from batswarm.stats import rank_sum_test

UNIMODAL = [f"F{i}" for i in range(1, 8)]


@pytest.fixture(scope="module")
def protocol():
    """Full seed-paired comparison; unimodal functions first so their time is measured alone."""
    cfg = SwarmConfig()  # pop 30, 500 iterations, seed 0
    t0 = time.perf_counter()
    uni = run_plan(ExperimentPlan("both", resolve_targets(UNIMODAL), runs=30, cfg=cfg))
    unimodal_seconds = time.perf_counter() - t0
    rest = run_plan(ExperimentPlan("both", resolve_targets(list(FUNCTION_IDS[7:])), runs=30, cfg=cfg))
    rows = {r.function: r for r in compare(uni + rest)}
    return rows, unimodal_seconds


def test_criterion_1_unimodal_direction(protocol, verdict):
    rows, seconds = protocol
    wins = [f for f in UNIMODAL if rows[f].mba.mean < rows[f].ba.mean]
    table = ", ".join(f"{f} {rows[f].ba.mean:.3E}/{rows[f].mba.mean:.3E}" for f in UNIMODAL)
    verdict(
        1,
        len(wins) >= 6 and seconds < 300,
        f"MBA mean below BA on {len(wins)}/7 unimodal functions (need >= 6), {seconds:.0f} s "
        f"(need < 300); BA/MBA means: {table}",
    )


def test_criterion_2_headline_wins(protocol, verdict):
    rows, _ = protocol
    wins_mean = sum(r.min_avg == "+" for r in rows.values())
    wins_std = sum(r.min_std == "+" for r in rows.values())
    verdict(
        2,
        len(rows) == 23 and wins_mean >= 18 and wins_std >= 14,
        f"MBA wins mean on {wins_mean}/23 (need >= 18), std on {wins_std}/23 (need >= 14)",
    )


def test_criterion_3_sphere_magnitudes(protocol, verdict):
    rows, _ = protocol
    ba, mba = rows["F1"].ba.mean, rows["F1"].mba.mean
    verdict(
        3,
        1 <= ba <= 150 and 0.1 <= mba <= 50,
        f"F1 30-run means BA {ba:.3E} (band [1, 150]), MBA {mba:.3E} (band [0.1, 50])",
    )


def test_criterion_4_assignment_oracle(verdict):
    best = brute_force_optimum(RESTAURANT)
    worst = assignment_cost(RESTAURANT, (2, 1, 3, 0))
    ok = best.total_cost == 1157 and best.perm == (1, 0, 2, 3) and worst == 2345
    verdict(
        4,
        ok,
        f"oracle optimum {best.total_cost:g} s with perm {best.perm} (need 1157 with (1, 0, 2, 3)); "
        f"worst-case permutation costs {worst:g} (need 2345)",
    )


def test_criterion_5_assignment_success_rate(verdict):
    t0 = time.perf_counter()
    costs = [solve_assignment_mba(RESTAURANT, SwarmConfig(rng_seed=s))[0].total_cost for s in range(100)]
    seconds = time.perf_counter() - t0
    hits = sum(c == 1157 for c in costs)
    optimum_hits = sum(c == brute_force_optimum(RESTAURANT).total_cost for c in costs)
    verdict(
        5,
        hits >= 95 and seconds < 30,
        f"cost 1157 returned in {hits}/100 seeds (need >= 95), {seconds:.1f} s (need < 30); "
        f"oracle optimum reached in {optimum_hits}/100",
    )


def _enumerated_p(a, b):
    pooled = sorted(list(a) + list(b))
    rank = {v: i + 1 for i, v in enumerate(pooled)}
    w = sum(rank[v] for v in a)
    sums = np.array([sum(c) for c in itertools.combinations(range(1, len(pooled) + 1), len(a))])
    return min(1.0, 2 * min(np.mean(sums <= w), np.mean(sums >= w)))


def test_criterion_6_wilcoxon_oracle(verdict):
    rng = np.random.default_rng(6)
    worst_approx = worst_oracle = 0.0
    for _ in range(200):
        n, m = (int(v) for v in rng.integers(3, 9, 2))
        values = rng.permutation(10_000)[: n + m] + rng.random()
        a, b = values[:n] * 1.0, values[n:] + rng.uniform(0, 3000)
        if len(set(np.concatenate([a, b]))) < n + m:
            continue
        exact = rank_sum_test(a, b, method="exact").p_value
        approx = rank_sum_test(a, b, method="normal_approx").p_value
        worst_approx = max(worst_approx, abs(exact - approx))
        worst_oracle = max(worst_oracle, abs(exact - _enumerated_p(a, b)))
    verdict(
        6,
        worst_approx <= 0.05 and worst_oracle <= 1e-9,
        f"max |exact - normal| = {worst_approx:.4f} (need <= 0.05), "
        f"max |exact - enumeration| = {worst_oracle:.1e} (need <= 1e-9) over 200 pairs",
    )


def _grid_min(f, box, step=1e-3):
    (a, b), (c, d) = box
    ys = np.arange(c, d + step / 2, step)
    best = np.inf
    for chunk in np.array_split(np.arange(a, b + step / 2, step), 40):
        X, Y = np.meshgrid(chunk, ys, indexing="ij")
        best = min(best, float(np.min(f(X, Y))))
    return best


def test_criterion_7_benchmark_golden_values(verdict):
    failures = []
    for fid in ["F1", "F2", "F3", "F4", "F6", "F9", "F10", "F11"]:
        v = evaluate(fid, np.zeros(30))
        if abs(v) > 1e-10:
            failures.append(f"{fid}(0)={v:.2e}")
    if evaluate("F5", np.ones(30)) != 0.0:
        failures.append("F5(1) != 0")

    camel = lambda a, b: 4 * a**2 - 2.1 * a**4 + a**6 / 3 + a * b - 4 * b**2 + 4 * b**4
    branin = lambda a, b: (b - 5.1 / (4 * np.pi**2) * a**2 + 5 / np.pi * a - 6) ** 2 + 10 * (1 - 1 / (8 * np.pi)) * np.cos(a) + 10
    gp = lambda a, b: (1 + (a + b + 1) ** 2 * (19 - 14 * a + 3 * a**2 - 14 * b + 6 * a * b + 3 * b**2)) * (
        30 + (2 * a - 3 * b) ** 2 * (18 - 32 * a + 12 * a**2 + 48 * b - 36 * a * b + 27 * b**2)
    )
    checks = [
        ("F16", camel, ((-2, 2), (-1, 1)), -1.03163, (0.0898420, -0.7126564)),
        ("F17", branin, ((-5, 10), (0, 15)), 0.39789, (np.pi, 2.275)),
        ("F18", gp, ((-2, 2), (-2, 2)), 3.0, (0.0, -1.0)),
    ]
    for fid, oracle, box, target, arg in checks:
        grid = _grid_min(oracle, box)
        at_arg = evaluate(fid, np.array(arg))
        if abs(grid - target) > 1e-3 or abs(at_arg - grid) > 1e-3:
            failures.append(f"{fid}: grid {grid:.5f}, library {at_arg:.5f}, target {target}")
    verdict(7, not failures, "all golden values within tolerance" if not failures else "; ".join(failures))


def test_criterion_8_engine_invariants(verdict, tmp_path):
    problems = []
    cfg = SwarmConfig(population_size=15, max_iterations=150, rng_seed=21)
    for runner in (run_ba, run_mba):
        for fid, dim in [("F1", 10), ("F9", 10), ("F19", None)]:
            spec = spec_of(fid)
            space = SearchSpace(*spec.bounds(dim))
            seen = []
            res = runner(lambda x: seen.append(x.copy()) or spec(x), space, cfg)
            pts = np.array(seen)
            if np.any(np.diff(res.trace) > 0):
                problems.append(f"{runner.__name__}/{fid}: trace increased")
            if np.any(pts < space.lower) or np.any(pts > space.upper):
                problems.append(f"{runner.__name__}/{fid}: left the box")
            for bat in res.bats:
                expect = cfg.initial_loudness * cfg.alpha**bat.acceptances
                if abs(bat.loudness - expect) > 1e-12 * expect:
                    problems.append(f"{runner.__name__}/{fid}: loudness {bat.loudness} != {expect}")

    from batswarm.engine import update_pulse_rate

    for gamma in (0.05, 0.9, 5.0):
        t0 = int(np.ceil(20 / gamma))
        if any(abs(update_pulse_rate(0.5, gamma, t) - 0.5) >= 1e-6 for t in range(t0, t0 + 200)):
            problems.append(f"pulse rate not within 1e-6 of r0 for gamma={gamma}")

    rng = np.random.default_rng(0)
    for seed in range(200):
        x_star = rng.uniform(-50, 50, 7)
        avg = float(rng.random())
        a = local_walk_ba(x_star, avg, np.random.default_rng(seed))
        b = local_walk_mba(BestRecord(x_star, 0.0, 0.0), avg, np.random.default_rng(seed))
        if a.tobytes() != b.tobytes():
            problems.append("MBA walk with zero best loudness differs from BA walk")
            break

    outputs = []
    for name in ("one.csv", "two.csv"):
        path = tmp_path / name
        subprocess.run(
            [sys.executable, "-m", "batswarm", "bench", "--fn", "F1,F7,F12", "--dim", "8", "--runs", "3",
             "--pop", "10", "--iters", "40", "--seed", "5", "-q", "--out", str(path)],
            check=True,
            capture_output=True,
        )
        outputs.append(path.read_bytes())
    if outputs[0] != outputs[1]:
        problems.append("CSV output differs between identical invocations")

    verdict(8, not problems, "all engine invariants hold" if not problems else "; ".join(problems[:5]))
