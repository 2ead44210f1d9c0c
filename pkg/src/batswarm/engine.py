"""Bat Algorithm (BA) and Modified Bat Algorithm (MBA) engines.

Both engines share one loop. Per iteration and per bat they build a flight
candidate from the frequency/velocity/position updates, replace it with a
local random walk around the global best when ``rand > r_i``, clamp it into
the search box, evaluate it and accept it only when ``rand < A_i`` and the
candidate strictly improves the global best. Acceptance shrinks the bat's
loudness and raises its pulse rate.

The MBA differs only in the local walk, which is shifted by the stored
loudness of the bat that produced the incumbent best::

    BA:   x_new = x* + eps * mean(A)
    MBA:  x_new = x* + eps * mean(A) + A*

RNG consumption order (one ``numpy.random.Generator`` per run, seeded from
``SwarmConfig.rng_seed``):

1. initial positions, ``random((n, dim))``;
2. the initial population is evaluated in bat order;
3. per iteration: ``beta = random(n)``, ``walk = random(n)``,
   ``eps = uniform(-1, 1, (n, dim))``, ``u = random(n)``, then each bat's
   candidate is evaluated in bat order.

Stochastic objectives (F7) draw from the same generator during evaluation.
BA and MBA consume identical streams, so runs with equal seeds start from the
same population and see the same random numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

__all__ = [
    "SwarmConfig",
    "SearchSpace",
    "BatState",
    "BestRecord",
    "RunResult",
    "NonFiniteObjectiveError",
    "sample_frequency",
    "update_velocity",
    "update_position",
    "local_walk_ba",
    "local_walk_mba",
    "update_loudness",
    "update_pulse_rate",
    "accept_candidate",
    "run_ba",
    "run_mba",
    "run",
]


class NonFiniteObjectiveError(ArithmeticError):
    """The objective returned NaN or an infinity."""

    def __init__(self, position: np.ndarray, value: float):
        self.position = np.array(position, copy=True)
        self.value = value
        coords = np.array2string(self.position, precision=6, separator=", ", threshold=12)
        super().__init__(f"objective returned {value!r} at position {coords}")


@dataclass(frozen=True)
class SwarmConfig:
    """Hyperparameters and seed for one BA/MBA run.

    Defaults: 30 bats, 500 iterations, frequencies in [0, 2],
    ``alpha = gamma = 0.9``, initial loudness 1 and initial pulse rate 0.5.
    """

    population_size: int = 30
    max_iterations: int = 500
    f_min: float = 0.0
    f_max: float = 2.0
    alpha: float = 0.9
    gamma: float = 0.9
    initial_loudness: float = 1.0
    initial_pulse_rate: float = 0.5
    rng_seed: int = 0

    def __post_init__(self):
        if int(self.population_size) != self.population_size or self.population_size < 1:
            raise ValueError(f"population_size must be a positive integer, got {self.population_size}")
        if int(self.max_iterations) != self.max_iterations or self.max_iterations < 1:
            raise ValueError(f"max_iterations must be a positive integer, got {self.max_iterations}")
        if not self.f_min <= self.f_max:
            raise ValueError(f"f_min ({self.f_min}) must not exceed f_max ({self.f_max})")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not self.gamma > 0.0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if not self.initial_loudness > 0.0:
            raise ValueError(f"initial_loudness must be positive, got {self.initial_loudness}")
        if not 0.0 <= self.initial_pulse_rate <= 1.0:
            raise ValueError(f"initial_pulse_rate must lie in [0, 1], got {self.initial_pulse_rate}")
        if not 0 <= int(self.rng_seed) < 2**64:
            raise ValueError(f"rng_seed must be a 64-bit unsigned integer, got {self.rng_seed}")

    def with_seed(self, seed: int) -> "SwarmConfig":
        from dataclasses import replace

        return replace(self, rng_seed=seed)


@dataclass(frozen=True)
class SearchSpace:
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = np.array(self.lower, dtype=float).reshape(-1)
        hi = np.array(self.upper, dtype=float).reshape(-1)
        if lo.shape != hi.shape or lo.size == 0:
            raise ValueError("lower and upper bounds must be non-empty vectors of equal length")
        if not np.all(lo < hi):
            raise ValueError("every lower bound must be strictly below its upper bound")
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def dim(self) -> int:
        return self.lower.size

    @classmethod
    def box(cls, dim: int, lower: float, upper: float) -> "SearchSpace":
        return cls(np.full(dim, float(lower)), np.full(dim, float(upper)))

    def contains(self, x) -> bool:
        x = np.asarray(x)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))


@dataclass
class BatState:
    position: np.ndarray
    velocity: np.ndarray
    frequency: float
    loudness: float
    pulse_rate: float
    fitness: float
    acceptances: int = 0


@dataclass
class BestRecord:
    best_position: np.ndarray
    best_fitness: float
    best_loudness: float = 0.0


@dataclass
class RunResult:
    """Outcome of one run.

    ``trace[t]`` is the incumbent best fitness after iteration ``t + 1``;
    ``initial_best`` is the best fitness of the initial population.
    """

    best: BestRecord
    trace: np.ndarray
    evaluations: int
    initial_best: float
    algorithm: str = "ba"
    bats: list[BatState] = field(default_factory=list)

    @property
    def best_fitness(self) -> float:
        return self.best.best_fitness


# ---------------------------------------------------------------------------
# single-step operators
# ---------------------------------------------------------------------------


def sample_frequency(beta: float, cfg: SwarmConfig) -> float:
    return cfg.f_min + (cfg.f_max - cfg.f_min) * beta


def update_velocity(v_prev, x, x_best, f: float) -> np.ndarray:
    """``v + (x - x*) * f``; the difference is bat minus best."""
    v_prev, x, x_best = (np.asarray(a, dtype=float) for a in (v_prev, x, x_best))
    if not v_prev.shape == x.shape == x_best.shape:
        raise ValueError(
            f"dimension mismatch: v {v_prev.shape}, x {x.shape}, x_best {x_best.shape}"
        )
    return v_prev + (x - x_best) * f


def update_position(x_prev, v, space: SearchSpace) -> np.ndarray:
    x_prev, v = np.asarray(x_prev, dtype=float), np.asarray(v, dtype=float)
    if x_prev.shape != v.shape or x_prev.shape != space.lower.shape:
        raise ValueError(f"dimension mismatch: x {x_prev.shape}, v {v.shape}, space dim {space.dim}")
    return np.clip(x_prev + v, space.lower, space.upper)


def _walk(base: np.ndarray, eps: np.ndarray, avg_loudness: float, shift: float = 0.0) -> np.ndarray:
    out = base + eps * avg_loudness
    if shift:
        out = out + shift
    return out


def local_walk_ba(x_base, avg_loudness: float, rng: np.random.Generator) -> np.ndarray:
    """Random walk ``x_base + eps * avg_loudness`` with ``eps ~ U(-1, 1)`` per coordinate.

    The result is not clamped; the engine clamps every candidate.
    """
    x_base = np.asarray(x_base, dtype=float)
    eps = rng.uniform(-1.0, 1.0, size=x_base.shape)
    return _walk(x_base, eps, avg_loudness)


def local_walk_mba(best: BestRecord, avg_loudness: float, rng: np.random.Generator) -> np.ndarray:
    """Modified walk ``x* + eps * avg_loudness + A*``.

    ``A*`` (``best.best_loudness``) is a scalar added to every coordinate. With
    ``A* = 0`` this consumes the generator exactly like :func:`local_walk_ba`
    and returns the same vector.
    """
    base = np.asarray(best.best_position, dtype=float)
    eps = rng.uniform(-1.0, 1.0, size=base.shape)
    return _walk(base, eps, avg_loudness, best.best_loudness)


def update_loudness(A: float, alpha: float) -> float:
    return alpha * A


def update_pulse_rate(r0: float, gamma: float, t: int) -> float:
    return r0 * (1.0 - math.exp(-gamma * t))


def accept_candidate(u: float, loudness: float, f_candidate: float, f_best: float) -> bool:
    return u < loudness and f_candidate < f_best


# ---------------------------------------------------------------------------
# engine
# ---------------------------------------------------------------------------


def _bind(objective: Callable, rng: np.random.Generator) -> Callable[[np.ndarray], float]:
    if getattr(objective, "uses_rng", False):
        return lambda x: objective(x, rng)
    return objective


def run(
    objective: Callable,
    space: SearchSpace,
    cfg: SwarmConfig,
    modified: bool = False,
    on_iteration: Optional[Callable[[int, Sequence[BatState], BestRecord], None]] = None,
) -> RunResult:
    """Run the BA (``modified=False``) or the MBA (``modified=True``).

    ``objective`` maps a position vector to a float. If it has a truthy
    ``uses_rng`` attribute it is called as ``objective(x, rng)`` with the
    run's generator. ``on_iteration(t, bats, best)`` is invoked after every
    iteration with fresh snapshots; it slows the run down and is meant for
    diagnostics.
    """
    rng = np.random.default_rng(int(cfg.rng_seed))
    f = _bind(objective, rng)
    n, dim = cfg.population_size, space.dim
    lo, hi = space.lower, space.upper
    f_min, f_span = cfg.f_min, cfg.f_max - cfg.f_min
    alpha, gamma = cfg.alpha, cfg.gamma
    a0, r0 = float(cfg.initial_loudness), cfg.initial_pulse_rate

    def evaluate(x: np.ndarray) -> float:
        value = float(f(x))
        if not math.isfinite(value):
            raise NonFiniteObjectiveError(x, value)
        return value

    x = lo + (hi - lo) * rng.random((n, dim))
    v = np.zeros((n, dim))
    freq = [f_min] * n
    fit = [evaluate(x[i]) for i in range(n)]
    loud = [a0] * n
    pulse = [update_pulse_rate(r0, gamma, 0)] * n
    wins = [0] * n
    evaluations = n

    b = int(np.argmin(fit))
    best_x = x[b].copy()
    best_f = fit[b]
    best_a = a0
    initial_best = best_f
    avg_loud = a0
    trace = np.empty(cfg.max_iterations)

    for t in range(cfg.max_iterations):
        beta = rng.random(n)
        walk = rng.random(n)
        eps = rng.uniform(-1.0, 1.0, (n, dim))
        u = rng.random(n)
        for i in range(n):
            fi = f_min + f_span * beta[i]
            freq[i] = fi
            vi = v[i] + (x[i] - best_x) * fi
            v[i] = vi
            if walk[i] > pulse[i]:
                cand = _walk(best_x, eps[i], avg_loud, best_a if modified else 0.0)
            else:
                cand = x[i] + vi
            cand = np.minimum(np.maximum(cand, lo), hi)
            fc = evaluate(cand)
            evaluations += 1
            if u[i] < loud[i] and fc < best_f:
                x[i] = cand
                fit[i] = fc
                loud[i] = update_loudness(loud[i], alpha)
                wins[i] += 1
                pulse[i] = update_pulse_rate(r0, gamma, wins[i])
                avg_loud = sum(loud) / n
                best_x = cand
                best_f = fc
                if modified:
                    best_a = loud[i]
        trace[t] = best_f
        if on_iteration is not None:
            on_iteration(t, _snapshot(x, v, freq, loud, pulse, fit, wins), _best(best_x, best_f, best_a, modified))

    return RunResult(
        best=_best(best_x, best_f, best_a, modified),
        trace=trace,
        evaluations=evaluations,
        initial_best=initial_best,
        algorithm="mba" if modified else "ba",
        bats=_snapshot(x, v, freq, loud, pulse, fit, wins),
    )


def _best(best_x, best_f, best_a, modified) -> BestRecord:
    return BestRecord(best_x.copy(), best_f, best_a if modified else 0.0)


def _snapshot(x, v, freq, loud, pulse, fit, wins) -> list[BatState]:
    return [
        BatState(x[i].copy(), v[i].copy(), freq[i], loud[i], pulse[i], fit[i], wins[i])
        for i in range(len(fit))
    ]


def run_ba(objective: Callable, space: SearchSpace, cfg: SwarmConfig, **kw) -> RunResult:
    return run(objective, space, cfg, modified=False, **kw)


def run_mba(objective: Callable, space: SearchSpace, cfg: SwarmConfig, **kw) -> RunResult:
    return run(objective, space, cfg, modified=True, **kw)
