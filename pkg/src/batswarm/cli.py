"""Command-line interface: ``batswarm {bench,compare,assign,list-functions}``.

Exit codes: 0 success, 1 usage or validation error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import benchmarks, reporting
from .assignment import (
    BRUTE_FORCE_MAX_N,
    CostMatrixError,
    brute_force_optimum,
    load_cost_matrix,
    scaling_study,
    solve_assignment_mba,
)
from .engine import NonFiniteObjectiveError, SwarmConfig
from .experiments import PRESETS, ExperimentPlan, compare, resolve_targets, run_plan

log = logging.getLogger("batswarm")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _swarm_flags(p: argparse.ArgumentParser, pop_default: Optional[int] = None) -> None:
    d = SwarmConfig()
    g = p.add_argument_group("swarm parameters")
    g.add_argument("--pop", type=int, default=pop_default, help=f"population size (default {d.population_size})")
    g.add_argument("--iters", type=int, default=d.max_iterations, help="iterations per run (default %(default)s)")
    g.add_argument("--seed", type=int, default=d.rng_seed, help="base seed; run k uses seed+k (default %(default)s)")
    g.add_argument("--alpha", type=float, default=d.alpha, help="loudness decay (default %(default)s)")
    g.add_argument("--gamma", type=float, default=d.gamma, help="pulse-rate growth (default %(default)s)")
    g.add_argument("--fmin", type=float, default=d.f_min, help="minimum frequency (default %(default)s)")
    g.add_argument("--fmax", type=float, default=d.f_max, help="maximum frequency (default %(default)s)")
    g.add_argument("--a0", type=float, default=d.initial_loudness, help="initial loudness (default %(default)s)")
    g.add_argument("--r0", type=float, default=d.initial_pulse_rate, help="initial pulse rate (default %(default)s)")


def _output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", type=Path, help="report file (default: standard output)")
    p.add_argument("--format", choices=("csv", "json"), help="report format (default: from --out suffix, else csv)")


def _experiment_flags(p: argparse.ArgumentParser, with_algo: bool) -> None:
    if with_algo:
        p.add_argument("--algo", choices=("ba", "mba", "both"), default="both", help="algorithm (default %(default)s)")
    p.add_argument("--fn", default="all", help="comma-separated function ids (F1..F23) or 'all'")
    p.add_argument("--dim", type=int, help="dimension for F1-F13 (default 30)")
    p.add_argument("--runs", type=int, default=30, help="independent runs per algorithm (default %(default)s)")
    p.add_argument("--preset", choices=sorted(PRESETS), help="'yang': F5/16, F1/256, F3/128, F10/128 at population 40")
    p.add_argument("--figures", type=Path, metavar="DIR", help="also render PNG figures into DIR")
    p.add_argument("-q", "--quiet", action="store_true", help="no progress messages")
    _swarm_flags(p)
    _output_flags(p)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="batswarm", description="Bat Algorithm / Modified Bat Algorithm experiments.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bench", help="run one or both algorithms on benchmark functions")
    _experiment_flags(p, with_algo=True)

    p = sub.add_parser("compare", help="seed-paired BA vs MBA comparison with rank-sum tests")
    _experiment_flags(p, with_algo=False)

    p = sub.add_parser("assign", help="solve a worker-job assignment instance with the MBA")
    p.add_argument("matrix", nargs="?", type=Path, help="cost matrix (.csv rows=jobs, cols=workers, or .json)")
    p.add_argument("--oracle", action="store_true", help=f"also brute-force the optimum (n <= {BRUTE_FORCE_MAX_N})")
    p.add_argument("--study", metavar="DIMS", help="instead of a file: random-matrix study over dimensions, e.g. 4,5,6,7,8")
    p.add_argument("--runs", type=int, default=30, help="runs per dimension for --study (default %(default)s)")
    _swarm_flags(p)
    _output_flags(p)

    sub.add_parser("list-functions", help="list the benchmark registry")
    return parser


def _config(args, pop_default: int = 30) -> SwarmConfig:
    try:
        return SwarmConfig(
            population_size=args.pop if args.pop is not None else pop_default,
            max_iterations=args.iters,
            f_min=args.fmin,
            f_max=args.fmax,
            alpha=args.alpha,
            gamma=args.gamma,
            initial_loudness=args.a0,
            initial_pulse_rate=args.r0,
            rng_seed=args.seed,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _format(args) -> str:
    if args.format:
        return args.format
    if args.out is not None and args.out.suffix.lower() == ".json":
        return "json"
    return "csv"


def _check_writable(path: Optional[Path]) -> None:
    if path is None:
        return
    parent = path.parent if str(path.parent) else Path(".")
    if not parent.is_dir():
        raise UsageError(f"cannot write {path}: directory {parent} does not exist")
    if not os.access(parent, os.W_OK) or (path.exists() and not os.access(path, os.W_OK)):
        raise UsageError(f"cannot write {path}: permission denied")


def _emit(args, text: str) -> None:
    if args.out is None:
        sys.stdout.write(text)
    else:
        reporting.write_text(args.out, text)
        print(f"wrote {args.out}")


def _plan(args, algorithm: str) -> ExperimentPlan:
    if args.preset:
        if args.dim is not None or args.fn != "all":
            raise UsageError("--preset cannot be combined with --fn or --dim")
        preset = PRESETS[args.preset]
        targets = list(preset["targets"])
        cfg = _config(args, pop_default=preset["population_size"])
    else:
        try:
            targets = resolve_targets(args.fn, args.dim)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        cfg = _config(args)
    if args.runs < 1:
        raise UsageError("--runs must be positive")
    return ExperimentPlan(algorithm=algorithm, targets=targets, runs=args.runs, cfg=cfg)


def _progress(args):
    if args.quiet:
        return None
    return lambda target, algo: print(f"  {target.function} (dim {target.dim}) {algo} x{args.runs}", file=sys.stderr)


def cmd_bench(args) -> int:
    plan = _plan(args, args.algo)
    _check_writable(args.out)
    records = run_plan(plan, _progress(args))
    if _format(args) == "json":
        text = reporting.bench_json(records, plan.cfg)
    else:
        text = reporting.bench_csv(records)
    _emit(args, text)
    if args.figures:
        from .plotting import write_figures

        for path in write_figures(args.figures, records):
            print(f"wrote {path}")
    return 0


def cmd_compare(args) -> int:
    plan = _plan(args, "both")
    if plan.runs < 2:
        raise UsageError("compare needs --runs >= 2")
    _check_writable(args.out)
    records = run_plan(plan, _progress(args))
    rows = compare(records)
    if _format(args) == "json":
        text = reporting.compare_json(rows, plan.cfg)
    else:
        text = reporting.compare_csv(rows)
    _emit(args, text)
    if args.out is not None:
        wins = sum(r.min_avg == "+" for r in rows)
        wins_std = sum(r.min_std == "+" for r in rows)
        print(f"MBA better mean on {wins}/{len(rows)}, better std on {wins_std}/{len(rows)}")
    if args.figures:
        from .plotting import write_figures

        for path in write_figures(args.figures, records, rows):
            print(f"wrote {path}")
    return 0


def _parse_dims(text: str) -> list[int]:
    try:
        dims = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"--study expects comma-separated integers, got {text!r}") from None
    if not dims or min(dims) < 1:
        raise UsageError("--study dimensions must be positive")
    return dims


def cmd_assign(args) -> int:
    cfg = _config(args)
    if args.study:
        if args.matrix is not None:
            raise UsageError("give either a matrix file or --study, not both")
        dims = _parse_dims(args.study)
        _check_writable(args.out)
        rows = scaling_study(dims, args.runs, cfg)
        _emit(args, reporting.study_csv(rows))
        return 0
    if args.matrix is None:
        raise UsageError("assign needs a matrix file (or --study)")
    try:
        m = load_cost_matrix(args.matrix)
    except FileNotFoundError:
        raise UsageError(f"no such file: {args.matrix}") from None
    except CostMatrixError as exc:
        raise UsageError(f"{args.matrix}: {exc}") from None
    if args.oracle and m.n > BRUTE_FORCE_MAX_N:
        raise UsageError(f"--oracle is limited to n <= {BRUTE_FORCE_MAX_N}, matrix has n = {m.n}")
    _check_writable(args.out)

    solution, result = solve_assignment_mba(m, cfg)
    oracle = brute_force_optimum(m) if args.oracle else None

    lines = [f"job {j + 1} -> worker {w + 1}  ({m.cost[j, w]:g} s)" for j, w in solution.pairs()]
    lines.append(f"total: {solution.total_cost:g} s = {solution.minutes:.4f} min ({result.evaluations} evaluations)")
    if oracle is not None:
        match = solution.total_cost == oracle.total_cost
        lines.append(
            "oracle: "
            + ", ".join(f"job {j + 1} -> worker {w + 1}" for j, w in oracle.pairs())
            + f"; total {oracle.total_cost:g} s; match={'true' if match else 'false'}"
        )
    report = "\n".join(lines) + "\n"

    if args.out is None and args.format is None:
        sys.stdout.write(report)
        return 0
    if _format(args) == "json":
        text = reporting.assign_json(solution, m, oracle, result.evaluations)
    else:
        text = reporting.assign_csv(solution, m)
    sys.stdout.write(report)
    if args.out is None:
        sys.stdout.write(text)
    else:
        reporting.write_text(args.out, text)
        print(f"wrote {args.out}")
    return 0


def cmd_list_functions(args) -> int:
    specs = benchmarks.all_specs()
    w_name = max(len(s.name) for s in specs)
    w_dim = max(len(s.dim_label()) for s in specs)
    print(f"{'id':<4} {'name':<{w_name}} {'dim':<{w_dim}} bounds")
    for s in specs:
        print(f"{s.id:<4} {s.name:<{w_name}} {s.dim_label():<{w_dim}} {s.bounds_label()}")
    return 0


COMMANDS = {
    "bench": cmd_bench,
    "compare": cmd_compare,
    "assign": cmd_assign,
    "list-functions": cmd_list_functions,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"batswarm {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except NonFiniteObjectiveError as exc:
        print(f"batswarm {args.command}: run aborted: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"batswarm {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
