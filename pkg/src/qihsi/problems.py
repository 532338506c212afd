"""Analytic benchmark problems (ZDT1-4, UF1-4) with true-Pareto-front samplers.

Problem definitions follow the standard published configurations:
ZDT1-3 use 30 variables in [0, 1], ZDT4 uses 10 variables with x1 in [0, 1]
and the rest in [-5, 5], and the UF instances use 30 variables with the
CEC 2009 bounds. All are bi-objective minimization problems.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Bounds, ProblemSpec, as_vector, dominates

BENCHMARK_IDS = ("zdt1", "zdt2", "zdt3", "zdt4", "uf1", "uf2", "uf3", "uf4")

# Dense-sample count used before dominance filtering disconnected fronts.
_ZDT3_CURVE_SAMPLES = 10_000


@dataclass(frozen=True)
class ReferenceFront:
    """A sample of the true Pareto front, used as the metric reference."""

    points: np.ndarray  # (n, M), mutually non-dominated
    source: str  # "analytic" or "file"

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=np.float64))
        if pts.shape[0] < 1:
            raise ValueError("reference front must be non-empty")
        object.__setattr__(self, "points", pts)

    @property
    def nadir(self) -> np.ndarray:
        return self.points.max(axis=0)


class Problem:
    """A benchmark instance: spec, evaluator, and optional true front."""

    def __init__(self, spec: ProblemSpec, evaluate_fn, front_fn=None):
        self.spec = spec
        self._evaluate = evaluate_fn
        self._front = front_fn

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        x = as_vector(x, "x")
        if len(x) != self.spec.dimension:
            raise ValueError(
                f"{self.spec.id}: expected {self.spec.dimension} variables, got {len(x)}"
            )
        if not self.spec.bounds.contains(x):
            raise ValueError(f"{self.spec.id}: point lies outside the feasible box")
        return self._evaluate(x)

    def true_front(self, n: int = 1000) -> ReferenceFront:
        if self._front is None:
            raise ValueError(f"{self.spec.id} has no analytic reference front")
        if n < 2:
            raise ValueError("reference front needs at least 2 points")
        return ReferenceFront(points=self._front(n), source="analytic")


# ---------------------------------------------------------------------------
# ZDT suite
# ---------------------------------------------------------------------------

def _zdt1(x: np.ndarray) -> np.ndarray:
    f1 = x[0]
    g = 1.0 + 9.0 * np.sum(x[1:]) / (len(x) - 1)
    f2 = g * (1.0 - np.sqrt(f1 / g))
    return np.array([f1, f2])


def _zdt2(x: np.ndarray) -> np.ndarray:
    f1 = x[0]
    g = 1.0 + 9.0 * np.sum(x[1:]) / (len(x) - 1)
    f2 = g * (1.0 - (f1 / g) ** 2)
    return np.array([f1, f2])


def _zdt3(x: np.ndarray) -> np.ndarray:
    f1 = x[0]
    g = 1.0 + 9.0 * np.sum(x[1:]) / (len(x) - 1)
    f2 = g * (1.0 - np.sqrt(f1 / g) - (f1 / g) * np.sin(10.0 * np.pi * f1))
    return np.array([f1, f2])


def _zdt4(x: np.ndarray) -> np.ndarray:
    f1 = x[0]
    tail = x[1:]
    g = 1.0 + 10.0 * len(tail) + np.sum(tail**2 - 10.0 * np.cos(4.0 * np.pi * tail))
    f2 = g * (1.0 - np.sqrt(f1 / g))
    return np.array([f1, f2])


# ---------------------------------------------------------------------------
# UF suite (CEC 2009 definitions; odd/even index sets are 1-based)
# ---------------------------------------------------------------------------

def _uf_index_sets(n: int):
    j = np.arange(2, n + 1)
    return j[j % 2 == 1], j[j % 2 == 0]  # J1 (odd), J2 (even)


def _uf1(x: np.ndarray) -> np.ndarray:
    n = len(x)
    j1, j2 = _uf_index_sets(n)
    y = lambda j: x[j - 1] - np.sin(6.0 * np.pi * x[0] + j * np.pi / n)
    f1 = x[0] + 2.0 / len(j1) * np.sum(y(j1) ** 2)
    f2 = 1.0 - np.sqrt(x[0]) + 2.0 / len(j2) * np.sum(y(j2) ** 2)
    return np.array([f1, f2])


def _uf2(x: np.ndarray) -> np.ndarray:
    n = len(x)
    j1, j2 = _uf_index_sets(n)
    amp = lambda j: 0.3 * x[0] ** 2 * np.cos(24.0 * np.pi * x[0] + 4.0 * j * np.pi / n) + 0.6 * x[0]
    y1 = x[j1 - 1] - amp(j1) * np.cos(6.0 * np.pi * x[0] + j1 * np.pi / n)
    y2 = x[j2 - 1] - amp(j2) * np.sin(6.0 * np.pi * x[0] + j2 * np.pi / n)
    f1 = x[0] + 2.0 / len(j1) * np.sum(y1**2)
    f2 = 1.0 - np.sqrt(x[0]) + 2.0 / len(j2) * np.sum(y2**2)
    return np.array([f1, f2])


def _uf3(x: np.ndarray) -> np.ndarray:
    n = len(x)
    j1, j2 = _uf_index_sets(n)
    y = lambda j: x[j - 1] - x[0] ** (0.5 * (1.0 + 3.0 * (j - 2.0) / (n - 2.0)))
    term = lambda j: 4.0 * np.sum(y(j) ** 2) - 2.0 * np.prod(
        np.cos(20.0 * y(j) * np.pi / np.sqrt(j))
    ) + 2.0
    f1 = x[0] + 2.0 / len(j1) * term(j1)
    f2 = 1.0 - np.sqrt(x[0]) + 2.0 / len(j2) * term(j2)
    return np.array([f1, f2])


def _uf4(x: np.ndarray) -> np.ndarray:
    n = len(x)
    j1, j2 = _uf_index_sets(n)
    y = lambda j: x[j - 1] - np.sin(6.0 * np.pi * x[0] + j * np.pi / n)
    h = lambda t: np.abs(t) / (1.0 + np.exp(2.0 * np.abs(t)))
    f1 = x[0] + 2.0 / len(j1) * np.sum(h(y(j1)))
    f2 = 1.0 - x[0] ** 2 + 2.0 / len(j2) * np.sum(h(y(j2)))
    return np.array([f1, f2])


# ---------------------------------------------------------------------------
# True-front samplers
# ---------------------------------------------------------------------------

def _front_sqrt(n: int) -> np.ndarray:
    f1 = np.linspace(0.0, 1.0, n)
    return np.column_stack([f1, 1.0 - np.sqrt(f1)])


def _front_square(n: int) -> np.ndarray:
    f1 = np.linspace(0.0, 1.0, n)
    return np.column_stack([f1, 1.0 - f1**2])


def nondominated_filter(points: np.ndarray) -> np.ndarray:
    """Keep the mutually non-dominated subset of a bi-objective point set.

    Sweep in f1 order; a point survives iff its f2 strictly improves on
    everything seen so far (ties on both coordinates collapse to one copy).
    """
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    keep = []
    best_f2 = np.inf
    for i in order:
        if pts[i, 1] < best_f2:
            keep.append(i)
            best_f2 = pts[i, 1]
    keep.sort()
    return pts[keep]


def _front_zdt3(n: int) -> np.ndarray:
    f1 = np.linspace(0.0, 1.0, _ZDT3_CURVE_SAMPLES)
    f2 = 1.0 - np.sqrt(f1) - f1 * np.sin(10.0 * np.pi * f1)
    front = nondominated_filter(np.column_stack([f1, f2]))
    if n >= len(front):
        return front
    idx = np.unique(np.round(np.linspace(0, len(front) - 1, n)).astype(int))
    return front[idx]


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

def _make_spec(pid: str) -> ProblemSpec:
    if pid in ("zdt1", "zdt2", "zdt3"):
        bounds = Bounds.cube(30)
        dim = 30
    elif pid == "zdt4":
        lower = np.full(10, -5.0)
        upper = np.full(10, 5.0)
        lower[0], upper[0] = 0.0, 1.0
        bounds = Bounds(lower, upper)
        dim = 10
    elif pid in ("uf1", "uf2"):
        lower = np.full(30, -1.0)
        upper = np.full(30, 1.0)
        lower[0] = 0.0
        bounds = Bounds(lower, upper)
        dim = 30
    elif pid == "uf3":
        bounds = Bounds.cube(30)
        dim = 30
    elif pid == "uf4":
        lower = np.full(30, -2.0)
        upper = np.full(30, 2.0)
        lower[0], upper[0] = 0.0, 1.0
        bounds = Bounds(lower, upper)
        dim = 30
    else:
        raise ValueError(f"unknown benchmark id: {pid!r}")
    return ProblemSpec(id=pid, dimension=dim, objectives=2, bounds=bounds,
                       has_reference_front=True)


_EVALUATORS = {
    "zdt1": _zdt1,
    "zdt2": _zdt2,
    "zdt3": _zdt3,
    "zdt4": _zdt4,
    "uf1": _uf1,
    "uf2": _uf2,
    "uf3": _uf3,
    "uf4": _uf4,
}

_FRONT_SAMPLERS = {
    "zdt1": _front_sqrt,
    "zdt2": _front_square,
    "zdt3": _front_zdt3,
    "zdt4": _front_sqrt,
    "uf1": _front_sqrt,
    "uf2": _front_sqrt,
    "uf3": _front_sqrt,
    "uf4": _front_square,
}


def problem_spec(pid: str) -> ProblemSpec:
    pid = pid.lower()
    if pid == "adas8":
        from .adas import adas_problem_spec
        return adas_problem_spec()
    return _make_spec(pid)


def get_problem(pid: str) -> Problem:
    """Look up a problem by id ("zdt1".."zdt4", "uf1".."uf4", "adas8")."""
    pid = pid.lower()
    if pid == "adas8":
        from .adas import adas_problem
        return adas_problem()
    if pid not in _EVALUATORS:
        raise ValueError(f"unknown problem id: {pid!r}")
    return Problem(_make_spec(pid), _EVALUATORS[pid], _FRONT_SAMPLERS[pid])


def evaluate(pid: str, x: np.ndarray) -> np.ndarray:
    return get_problem(pid).evaluate(x)


def true_front_sample(pid: str, n: int) -> ReferenceFront:
    return get_problem(pid).true_front(n)


# ---------------------------------------------------------------------------
# Plain-text front files (one whitespace-separated objective vector per line)
# ---------------------------------------------------------------------------

def write_front_text(path, points: np.ndarray) -> None:
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    with open(path, "w") as fh:
        for row in pts:
            fh.write(" ".join(repr(float(v)) for v in row) + "\n")


def read_front_text(path) -> np.ndarray:
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                rows.append([float(tok) for tok in line.split()])
    if not rows:
        return np.empty((0, 0))
    return np.asarray(rows, dtype=np.float64)


def load_reference_front(path) -> ReferenceFront:
    pts = read_front_text(path)
    if pts.size == 0:
        raise ValueError(f"reference front file {path} is empty")
    return ReferenceFront(points=pts, source="file")
