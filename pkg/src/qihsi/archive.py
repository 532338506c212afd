"""Bounded Pareto repository with crowding-distance pruning and roulette
selection of food sources.

The archive stores mutually non-dominated solutions. Inserts reject dominated
or duplicate candidates, evict members the candidate dominates, and prune one
least-crowded member at a time (recomputing distances after each removal)
whenever capacity is exceeded.
"""

from __future__ import annotations

import numpy as np

from .core import Solution, dominates


def crowding_distances(front: np.ndarray) -> np.ndarray:
    """NSGA-II crowding distances for a mutually non-dominated front.

    Interior members accumulate, per objective, the normalized gap between
    their sorted neighbors. Boundary members receive a finite sentinel equal
    to twice the largest interior total, or 1.0 when no positive interior
    distance exists; this keeps roulette weights finite while still strongly
    favoring the extremes.
    """
    front = np.atleast_2d(np.asarray(front, dtype=np.float64))
    n, m = front.shape
    if n == 0:
        raise ValueError("crowding distances of an empty front")
    dist = np.zeros(n)
    boundary = np.zeros(n, dtype=bool)
    for obj in range(m):
        values = front[:, obj]
        span = values.max() - values.min()
        if span <= 0.0:
            continue  # constant objective contributes nothing
        order = np.argsort(values, kind="stable")
        boundary[order[0]] = True
        boundary[order[-1]] = True
        gaps = (values[order[2:]] - values[order[:-2]]) / span
        dist[order[1:-1]] += gaps
    finite = dist[~boundary]
    if finite.size and finite.max() > 0.0:
        sentinel = 2.0 * float(finite.max())
    else:
        sentinel = 1.0
    dist[boundary] = sentinel
    if not boundary.any():
        dist[:] = 1.0  # fully degenerate front: every objective constant
    return dist


class ParetoArchive:
    """Repository of non-dominated solutions, capped at `capacity` members."""

    def __init__(self, capacity: int = 100):
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        self.capacity = capacity
        self.members: list[Solution] = []
        self._objs: np.ndarray | None = None
        self._crowding: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.members)

    @property
    def objectives(self) -> np.ndarray:
        """(n, M) matrix of member objective vectors, in member order."""
        if self._objs is None:
            return np.empty((0, 0))
        return self._objs.copy()

    @property
    def decisions(self) -> np.ndarray:
        if not self.members:
            return np.empty((0, 0))
        return np.array([s.x for s in self.members])

    @property
    def crowding(self) -> np.ndarray:
        """Crowding distances aligned with `members` (cached until mutation)."""
        if self._crowding is None:
            if self._objs is None:
                raise ValueError("empty archive has no crowding distances")
            self._crowding = crowding_distances(self._objs)
        return self._crowding.copy()

    def insert(self, s: Solution) -> bool:
        """Insert a candidate; returns True when the archive changed.

        Rejected when any member dominates the candidate or shares its exact
        objective vector. Otherwise members dominated by the candidate are
        evicted, the candidate is appended, and capacity pruning runs.
        """
        f = s.f
        if self._objs is not None:
            current = self._objs
            if f.shape[0] != current.shape[1]:
                raise ValueError(
                    f"objective length mismatch: {len(f)} vs {current.shape[1]}"
                )
            le = current <= f
            lt = current < f
            if bool(np.any(le.all(axis=1) & lt.any(axis=1))):
                return False  # dominated by an existing member
            if bool(np.any(le.all(axis=1) & ~lt.any(axis=1))):
                return False  # duplicate objective vector
            evict = (current >= f).all(axis=1) & (current > f).any(axis=1)
            if evict.any():
                keep = ~evict
                self.members = [m for m, k in zip(self.members, keep) if k]
                current = current[keep]
            self._objs = np.concatenate([current, f[None, :]])
        else:
            self._objs = f[None, :].copy()
        self.members.append(s)
        self._crowding = None
        if len(self.members) > self.capacity:
            self.prune()
        return True

    def prune(self) -> None:
        """Remove least-crowded members one at a time until within capacity.

        Distances are recomputed after every removal so a single region is
        never hollowed out in one sweep; ties break toward the lowest index.
        """
        while len(self.members) > self.capacity:
            dist = crowding_distances(self._objs)
            drop = int(np.argmin(dist))
            del self.members[drop]
            self._objs = np.delete(self._objs, drop, axis=0)
        self._crowding = None

    def roulette_select(self, scores: np.ndarray, rng: np.random.Generator) -> Solution:
        """Draw one member with probability proportional to its score.

        Scores must be non-negative and aligned with `members`; an all-zero
        score vector falls back to uniform selection. Exactly one uniform
        variate is consumed per call on either path.
        """
        if not self.members:
            raise ValueError("cannot select from an empty archive")
        scores = np.asarray(scores, dtype=np.float64)
        if scores.shape != (len(self.members),):
            raise ValueError("scores must align with archive members")
        if np.any(scores < 0.0) or not np.all(np.isfinite(scores)):
            raise ValueError("scores must be finite and non-negative")
        u = rng.random()
        total = scores.sum()
        if total <= 0.0:
            return self.members[min(int(u * len(self.members)), len(self.members) - 1)]
        cumulative = np.cumsum(scores)
        idx = int(np.searchsorted(cumulative, u * total, side="right"))
        return self.members[min(idx, len(self.members) - 1)]

    def check_invariants(self) -> None:
        """Brute-force O(n^2) verification used by tests."""
        objs = self.objectives
        for i in range(len(objs)):
            for j in range(len(objs)):
                if i != j and dominates(objs[i], objs[j]):
                    raise AssertionError(f"member {i} dominates member {j}")
            for j in range(i + 1, len(objs)):
                if np.array_equal(objs[i], objs[j]):
                    raise AssertionError(f"members {i} and {j} duplicate objectives")
        if len(self.members) > self.capacity:
            raise AssertionError("capacity exceeded")
