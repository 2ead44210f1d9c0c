"""The 23 classical benchmark functions F1-F23.

F1-F7 are unimodal, F8-F13 multimodal with a configurable dimension, and
F14-F23 are low-dimensional multimodal functions with fixed dimension and
embedded constant tables. All functions are minimized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

__all__ = [
    "BenchmarkSpec",
    "FUNCTION_IDS",
    "DEFAULT_DIM",
    "evaluate",
    "penalty_u",
    "y_transform",
    "spec_of",
    "all_specs",
    "normalize_id",
]

DEFAULT_DIM = 30

# ---------------------------------------------------------------------------
# Constant tables. None of these are printed alongside the formulas; the
# values are the standard ones from Yao, Liu & Lin, "Evolutionary programming
# made faster", IEEE TEC 3(2), 1999 (Appendix, F14-F23), which every later
# 23-function suite copies.
# ---------------------------------------------------------------------------

# De Jong's foxholes (F14): 2 x 25 grid of holes at {-32,-16,0,16,32}^2.
_FOX = np.array([-32, -16, 0, 16, 32])
FOXHOLES_A = np.vstack([np.tile(_FOX, 5), np.repeat(_FOX, 5)]).astype(float)

# Kowalik (F15): enzyme reaction data, b given as reciprocals.
KOWALIK_A = np.array(
    [0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627, 0.0456, 0.0342, 0.0323, 0.0235, 0.0246]
)
KOWALIK_B = 1.0 / np.array([0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0])

# Hartman 3 / 6 (F19, F20).
HARTMAN_C = np.array([1.0, 1.2, 3.0, 3.2])
HARTMAN3_A = np.array(
    [
        [3.0, 10.0, 30.0],
        [0.1, 10.0, 35.0],
        [3.0, 10.0, 30.0],
        [0.1, 10.0, 35.0],
    ]
)
HARTMAN3_P = np.array(
    [
        [0.3689, 0.1170, 0.2673],
        [0.4699, 0.4387, 0.7470],
        [0.1091, 0.8732, 0.5547],
        [0.03815, 0.5743, 0.8828],
    ]
)
HARTMAN6_A = np.array(
    [
        [10.0, 3.0, 17.0, 3.5, 1.7, 8.0],
        [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
        [3.0, 3.5, 1.7, 10.0, 17.0, 8.0],
        [17.0, 8.0, 0.05, 10.0, 0.1, 14.0],
    ]
)
HARTMAN6_P = np.array(
    [
        [0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886],
        [0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991],
        [0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650],
        [0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381],
    ]
)

# Shekel (F21-F23 use the first 5, 7, 10 rows).
SHEKEL_A = np.array(
    [
        [4.0, 4.0, 4.0, 4.0],
        [1.0, 1.0, 1.0, 1.0],
        [8.0, 8.0, 8.0, 8.0],
        [6.0, 6.0, 6.0, 6.0],
        [3.0, 7.0, 3.0, 7.0],
        [2.0, 9.0, 2.0, 9.0],
        [5.0, 5.0, 3.0, 3.0],
        [8.0, 1.0, 8.0, 1.0],
        [6.0, 2.0, 6.0, 2.0],
        [7.0, 3.6, 7.0, 3.6],
    ]
)
SHEKEL_C = np.array([0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5])


def penalty_u(xi, a: float, k: float, m: float):
    """Boundary penalty ``u(x, a, k, m)``; zero on the closed interval [-a, a].

    Works element-wise on arrays as well as on scalars.
    """
    xi = np.asarray(xi, dtype=float)
    out = np.where(xi > a, k * (xi - a) ** m, 0.0)
    out = np.where(xi < -a, k * (-xi - a) ** m, out)
    return out if out.ndim else float(out)


def y_transform(x) -> np.ndarray:
    return 1.0 + (np.asarray(x, dtype=float) + 1.0) / 4.0


# --- unimodal ---------------------------------------------------------------


def sphere(x):
    return float(np.dot(x, x))


def schwefel_2_22(x):
    ax = np.abs(x)
    return float(ax.sum() + np.prod(ax))


def schwefel_1_2(x):
    c = np.cumsum(x)
    return float(np.dot(c, c))


def schwefel_2_21(x):
    return float(np.max(np.abs(x)))


def rosenbrock(x):
    head, tail = x[:-1], x[1:]
    return float(np.sum(100.0 * (tail - head**2) ** 2 + (head - 1.0) ** 2))


def step(x):
    s = np.floor(x + 0.5)
    return float(np.dot(s, s))


def quartic_noise(x, rng=None):
    if rng is None:
        rng = np.random.default_rng()
    i = np.arange(1, x.size + 1)
    return float(np.sum(i * x**4) + rng.random())


# --- multimodal ---------------------------------------------------------------


def schwefel_2_26(x):
    return float(-np.sum(x * np.sin(np.sqrt(np.abs(x)))))


def rastrigin(x):
    return float(np.sum(x**2 - 10.0 * np.cos(2.0 * np.pi * x) + 10.0))


def ackley(x):
    n = x.size
    return float(
        -20.0 * math.exp(-0.2 * math.sqrt(np.dot(x, x) / n))
        - math.exp(np.sum(np.cos(2.0 * np.pi * x)) / n)
        + 20.0
        + math.e
    )


def griewank(x):
    i = np.arange(1, x.size + 1)
    return float(np.dot(x, x) / 4000.0 - np.prod(np.cos(x / np.sqrt(i))) + 1.0)


def penalized_1(x):
    n = x.size
    y = y_transform(x)
    s = np.sin(np.pi * y)
    core = (
        10.0 * s[0] ** 2
        + np.sum((y[:-1] - 1.0) ** 2 * (1.0 + 10.0 * s[1:] ** 2))
        + (y[-1] - 1.0) ** 2
    )
    return float(np.pi / n * core + np.sum(penalty_u(x, 10.0, 100.0, 4.0)))


def penalized_2(x):
    core = (
        math.sin(3.0 * np.pi * x[0]) ** 2
        + np.sum((x[:-1] - 1.0) ** 2 * (1.0 + np.sin(3.0 * np.pi * x[1:]) ** 2))
        + (x[-1] - 1.0) ** 2 * (1.0 + math.sin(2.0 * np.pi * x[-1]) ** 2)
    )
    return float(0.1 * core + np.sum(penalty_u(x, 5.0, 100.0, 4.0)))


# --- fixed dimension ----------------------------------------------------------


def foxholes(x):
    d = np.sum((x[:, None] - FOXHOLES_A) ** 6, axis=0)
    j = np.arange(1, 26)
    return float(1.0 / (1.0 / 500.0 + np.sum(1.0 / (j + d))))


def kowalik(x):
    b = KOWALIK_B
    model = x[0] * (b**2 + b * x[1]) / (b**2 + b * x[2] + x[3])
    return float(np.sum((KOWALIK_A - model) ** 2))


def six_hump_camel(x):
    x1, x2 = x
    return float(
        4.0 * x1**2 - 2.1 * x1**4 + x1**6 / 3.0 + x1 * x2 - 4.0 * x2**2 + 4.0 * x2**4
    )


def branin(x):
    x1, x2 = x
    return float(
        (x2 - 5.1 / (4.0 * np.pi**2) * x1**2 + 5.0 / np.pi * x1 - 6.0) ** 2
        + 10.0 * (1.0 - 1.0 / (8.0 * np.pi)) * math.cos(x1)
        + 10.0
    )


def goldstein_price(x):
    x1, x2 = x
    a = 1.0 + (x1 + x2 + 1.0) ** 2 * (
        19.0 - 14.0 * x1 + 3.0 * x1**2 - 14.0 * x2 + 6.0 * x1 * x2 + 3.0 * x2**2
    )
    b = 30.0 + (2.0 * x1 - 3.0 * x2) ** 2 * (
        18.0 - 32.0 * x1 + 12.0 * x1**2 + 48.0 * x2 - 36.0 * x1 * x2 + 27.0 * x2**2
    )
    return float(a * b)


def _hartman(x, a, p):
    return float(-np.sum(HARTMAN_C * np.exp(-np.sum(a * (x - p) ** 2, axis=1))))


def hartman3(x):
    return _hartman(x, HARTMAN3_A, HARTMAN3_P)


def hartman6(x):
    return _hartman(x, HARTMAN6_A, HARTMAN6_P)


def _shekel(x, m):
    diff = x - SHEKEL_A[:m]
    return float(-np.sum(1.0 / (np.sum(diff * diff, axis=1) + SHEKEL_C[:m])))


def shekel5(x):
    return _shekel(x, 5)


def shekel7(x):
    return _shekel(x, 7)


def shekel10(x):
    return _shekel(x, 10)


# --- registry -----------------------------------------------------------------


@dataclass(frozen=True)
class BenchmarkSpec:
    """One registered benchmark.

    ``fixed_dim`` is ``None`` for the functions whose dimension is chosen by
    the caller (F1-F13). ``lower`` and ``upper`` hold one entry per coordinate
    for fixed-dimension functions and a single scalar bound otherwise.
    """

    id: str
    name: str
    func: Callable
    lower: tuple
    upper: tuple
    fixed_dim: Optional[int] = None
    category: str = "unimodal"
    uses_rng: bool = False
    known_min: Optional[float] = None

    @property
    def configurable(self) -> bool:
        return self.fixed_dim is None

    def resolve_dim(self, dim: Optional[int] = None) -> int:
        if self.fixed_dim is not None:
            if dim is not None and dim != self.fixed_dim:
                raise ValueError(f"{self.id} has fixed dimension {self.fixed_dim}")
            return self.fixed_dim
        if dim is None:
            return DEFAULT_DIM
        if dim < 1:
            raise ValueError(f"dimension must be positive, got {dim}")
        return dim

    def bounds(self, dim: Optional[int] = None) -> tuple[np.ndarray, np.ndarray]:
        d = self.resolve_dim(dim)
        lo = np.broadcast_to(np.asarray(self.lower, dtype=float), (d,)).copy()
        hi = np.broadcast_to(np.asarray(self.upper, dtype=float), (d,)).copy()
        return lo, hi

    def bounds_label(self) -> str:
        lo, hi = self.lower, self.upper
        if len(set(lo)) == 1 and len(set(hi)) == 1:
            return f"[{_num(lo[0])}, {_num(hi[0])}]"
        return " x ".join(f"[{_num(a)}, {_num(b)}]" for a, b in zip(lo, hi))

    def dim_label(self) -> str:
        return "configurable" if self.fixed_dim is None else f"fixed {self.fixed_dim}"

    def __call__(self, x, rng=None) -> float:
        # Hot path for the engines: no shape validation, see evaluate().
        if self.uses_rng:
            return self.func(x, rng)
        return self.func(x)


def _num(v: float) -> str:
    return f"{v:g}"


def _fixed(n, lo, hi):
    return tuple([lo] * n), tuple([hi] * n)


_REGISTRY: dict[str, BenchmarkSpec] = {}


def _register(fid, name, func, lower, upper, fixed_dim=None, category="unimodal", **kw):
    if not isinstance(lower, tuple):
        lower, upper = (lower,), (upper,)
    _REGISTRY[fid] = BenchmarkSpec(fid, name, func, lower, upper, fixed_dim, category, **kw)


_register("F1", "Sphere", sphere, -100.0, 100.0, known_min=0.0)
_register("F2", "Schwefel 2.22", schwefel_2_22, -10.0, 10.0, known_min=0.0)
_register("F3", "Schwefel 1.2", schwefel_1_2, -100.0, 100.0, known_min=0.0)
_register("F4", "Schwefel 2.21", schwefel_2_21, -100.0, 100.0, known_min=0.0)
_register("F5", "Generalized Rosenbrock", rosenbrock, -30.0, 30.0, known_min=0.0)
_register("F6", "Step", step, -100.0, 100.0, known_min=0.0)
_register("F7", "Quartic with noise", quartic_noise, -1.28, 1.28, uses_rng=True, known_min=0.0)

_MM = "multimodal"
_register("F8", "Generalized Schwefel 2.26", schwefel_2_26, -500.0, 500.0, category=_MM)
_register("F9", "Generalized Rastrigin", rastrigin, -5.12, 5.12, category=_MM, known_min=0.0)
_register("F10", "Ackley", ackley, -32.0, 32.0, category=_MM, known_min=0.0)
_register("F11", "Generalized Griewank", griewank, -600.0, 600.0, category=_MM, known_min=0.0)
_register("F12", "Generalized penalized 1", penalized_1, -50.0, 50.0, category=_MM, known_min=0.0)
_register("F13", "Generalized penalized 2", penalized_2, -50.0, 50.0, category=_MM, known_min=0.0)

_FD = "fixed-dimension"
_register("F14", "Shekel's foxholes", foxholes, *_fixed(2, -65.536, 65.536), 2, _FD, known_min=0.998003838)
_register("F15", "Kowalik", kowalik, *_fixed(4, -5.0, 5.0), 4, _FD, known_min=0.0003074861)
_register("F16", "Six-hump camel back", six_hump_camel, *_fixed(2, -5.0, 5.0), 2, _FD, known_min=-1.0316284535)
_register("F17", "Branin", branin, (-5.0, 0.0), (10.0, 15.0), 2, _FD, known_min=0.397887358)
_register("F18", "Goldstein-Price", goldstein_price, *_fixed(2, -2.0, 2.0), 2, _FD, known_min=3.0)
_register("F19", "Hartman 3", hartman3, *_fixed(3, 0.0, 1.0), 3, _FD, known_min=-3.86278215)
_register("F20", "Hartman 6", hartman6, *_fixed(6, 0.0, 1.0), 6, _FD, known_min=-3.32236801)
_register("F21", "Shekel 5", shekel5, *_fixed(4, 0.0, 10.0), 4, _FD, known_min=-10.1531997)
_register("F22", "Shekel 7", shekel7, *_fixed(4, 0.0, 10.0), 4, _FD, known_min=-10.4029406)
_register("F23", "Shekel 10", shekel10, *_fixed(4, 0.0, 10.0), 4, _FD, known_min=-10.5364098)

FUNCTION_IDS: tuple[str, ...] = tuple(_REGISTRY)


def normalize_id(fid) -> str:
    """Accept ``"F5"``, ``"f5"``, ``"5"`` or ``5``; raise ``KeyError`` otherwise."""
    key = str(fid).strip().upper()
    if not key.startswith("F"):
        key = "F" + key
    if key not in _REGISTRY:
        raise KeyError(f"unknown function {fid!r}")
    return key


def spec_of(fid) -> BenchmarkSpec:
    return _REGISTRY[normalize_id(fid)]


def all_specs() -> list[BenchmarkSpec]:
    return list(_REGISTRY.values())


def evaluate(fid, x, rng=None) -> float:
    """Evaluate benchmark ``fid`` at ``x``.

    ``rng`` is only consumed by F7 (one uniform draw per call). Points outside
    the bounds are allowed; the functions are defined on all of R^dim.
    """
    spec = spec_of(fid)
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError(f"{spec.id} expects a 1-d position vector, got shape {x.shape}")
    if spec.fixed_dim is not None and x.size != spec.fixed_dim:
        raise ValueError(
            f"{spec.id} has fixed dimension {spec.fixed_dim}, got a vector of length {x.size}"
        )
    if x.size < 1:
        raise ValueError(f"{spec.id} expects at least one coordinate")
    if spec.uses_rng:
        return spec.func(x, rng)
    return spec.func(x)
