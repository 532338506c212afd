"""Shared domain types: decision/objective vectors, Pareto dominance, bounds,
front normalization, and seeded random streams.

All vectors are 1-D float64 numpy arrays. Minimization is assumed everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Named random streams: every stochastic consumer in the optimizer owns a
# dedicated stream id so adding a consumer never perturbs the others.
STREAM_INIT = 0
STREAM_LEADER = 1
STREAM_ROULETTE = 2
STREAM_SIGN = 3


def as_vector(values, name: str = "vector") -> np.ndarray:
    """Coerce to a finite 1-D float64 array; raises ValueError otherwise."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be 1-D, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def _readonly(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=np.float64, copy=True)
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class Bounds:
    """Per-dimension box bounds (lower[j] < upper[j] for all j)."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "lower", _readonly(as_vector(self.lower, "lower")))
        object.__setattr__(self, "upper", _readonly(as_vector(self.upper, "upper")))
        if self.lower.shape != self.upper.shape:
            raise ValueError("lower and upper must have equal length")
        if not np.all(self.lower < self.upper):
            raise ValueError("every lower bound must be strictly below its upper bound")

    @classmethod
    def cube(cls, dim: int, lo: float = 0.0, hi: float = 1.0) -> "Bounds":
        return cls(np.full(dim, lo), np.full(dim, hi))

    @property
    def dimension(self) -> int:
        return len(self.lower)

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    def contains(self, x: np.ndarray) -> bool:
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))


@dataclass(frozen=True, eq=False)
class ProblemSpec:
    """Static description of an optimization problem instance."""

    id: str
    dimension: int
    objectives: int
    bounds: Bounds
    has_reference_front: bool

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if self.objectives < 2:
            raise ValueError("objective count must be >= 2")
        if self.bounds.dimension != self.dimension:
            raise ValueError("bounds dimension does not match problem dimension")


@dataclass(frozen=True, eq=False)
class Solution:
    """An evaluated point: decision vector x paired with its objectives f.

    Compared by identity (ndarray fields make field-wise equality
    ill-defined). Immutable once constructed; f must be the problem's
    evaluation of x.
    """

    x: np.ndarray
    f: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", _readonly(as_vector(self.x, "x")))
        object.__setattr__(self, "f", _readonly(as_vector(self.f, "f")))


@dataclass(frozen=True)
class RngStream:
    """A (seed, stream_id) pair naming one reproducible random sequence.

    Identical pairs yield identical draw sequences across runs and platforms;
    distinct stream ids yield statistically independent streams.
    """

    seed: int
    stream_id: int

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id,))
        return np.random.Generator(np.random.PCG64(seq))


def dominates(a: np.ndarray, b: np.ndarray) -> bool:
    """Pareto dominance under minimization.

    True iff a is no worse than b in every objective and strictly better in
    at least one. Equal vectors never dominate each other.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"objective length mismatch: {a.shape} vs {b.shape}")
    return bool(np.all(a <= b) and np.any(a < b))


def clamp_to_bounds(x: np.ndarray, bounds: Bounds) -> np.ndarray:
    """Clamp each coordinate into [lower[j], upper[j]]; idempotent."""
    x = as_vector(x, "x")
    if len(x) != bounds.dimension:
        raise ValueError(f"dimension mismatch: x has {len(x)}, bounds has {bounds.dimension}")
    return np.minimum(bounds.upper, np.maximum(bounds.lower, x))


def normalize_front(front: np.ndarray) -> np.ndarray:
    """Min-max rescale each objective of a front to [0, 1].

    Accepts an (n, M) array (or a sequence of objective vectors) and returns
    an (n, M) array in the same order. An objective that is constant across
    the front maps to 0 for every member.
    """
    front = np.atleast_2d(np.asarray(front, dtype=np.float64))
    if front.size == 0:
        raise ValueError("cannot normalize an empty front")
    lo = front.min(axis=0)
    hi = front.max(axis=0)
    span = hi - lo
    out = np.zeros_like(front)
    varying = span > 0
    out[:, varying] = (front[:, varying] - lo[varying]) / span[varying]
    return out


@dataclass
class RngBundle:
    """The named generators one optimizer run draws from."""

    seed: int
    init: np.random.Generator = field(init=False)
    leader: np.random.Generator = field(init=False)
    roulette: np.random.Generator = field(init=False)
    sign: np.random.Generator = field(init=False)

    def __post_init__(self):
        self.init = RngStream(self.seed, STREAM_INIT).generator()
        self.leader = RngStream(self.seed, STREAM_LEADER).generator()
        self.roulette = RngStream(self.seed, STREAM_ROULETTE).generator()
        self.sign = RngStream(self.seed, STREAM_SIGN).generator()
