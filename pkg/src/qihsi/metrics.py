"""Quality indicators for multi-objective runs plus the rank-sum test used
for pairwise algorithm comparisons.

All indicators treat objectives as minimized. Hypervolume is computed
exactly (sweep in 2-D, slicing in 3-D), never sampled; IGD uses Euclidean
distance on raw objective values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass
class MetricReport:
    """Bundle of indicator values for one obtained front."""

    igd: float
    hv: float
    psp: float
    spacing: float
    ref_point: np.ndarray
    n_points: int

    def to_dict(self) -> dict:
        return {
            "igd": self.igd,
            "hv": self.hv,
            "psp": self.psp,
            "spacing": self.spacing,
            "ref_point": [float(v) for v in self.ref_point],
            "n_points": self.n_points,
        }


def _as_front(points: np.ndarray, name: str) -> np.ndarray:
    arr = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if arr.size == 0:
        raise ValueError(f"{name} must be non-empty")
    if arr.ndim != 2:
        raise ValueError(f"{name} must be a 2-D point set")
    return arr


def igd(obtained: np.ndarray, reference: np.ndarray) -> float:
    """Mean, over reference points, of the distance to the nearest obtained
    point (lower is better; zero iff every reference point is matched)."""
    obt = _as_front(obtained, "obtained front")
    ref = _as_front(reference, "reference front")
    if obt.shape[1] != ref.shape[1]:
        raise ValueError("objective count mismatch between fronts")
    # Accumulate squared differences one objective at a time: same arithmetic
    # as a stacked 3-D broadcast but without the (R, O, M) intermediate,
    # which matters because this runs once per iteration for the trace.
    diff = np.subtract.outer(ref[:, 0], obt[:, 0])
    d2 = diff * diff
    for j in range(1, ref.shape[1]):
        diff = np.subtract.outer(ref[:, j], obt[:, j])
        d2 += diff * diff
    return float(np.sqrt(d2.min(axis=1)).mean())


def hypervolume(front: np.ndarray, ref_point: np.ndarray) -> float:
    """Exact Lebesgue measure of the region dominated by `front` and bounded
    by `ref_point`.

    Points that do not weakly dominate the reference point are excluded
    before computation; an empty effective front has measure zero. Supports
    2 and 3 objectives only.
    """
    pts = np.atleast_2d(np.asarray(front, dtype=np.float64))
    ref = np.asarray(ref_point, dtype=np.float64).ravel()
    m = ref.shape[0]
    if m not in (2, 3):
        raise ValueError(f"hypervolume supports 2 or 3 objectives, got {m}")
    if pts.size == 0:
        return 0.0
    if pts.shape[1] != m:
        raise ValueError("front and reference point dimensions differ")
    pts = pts[(pts <= ref).all(axis=1)]
    if pts.shape[0] == 0:
        return 0.0
    if m == 2:
        return _hv2d(pts, ref)
    return _hv3d(pts, ref)


def _hv2d(pts: np.ndarray, ref: np.ndarray) -> float:
    """Sweep over f1-sorted points, accumulating the strip each new best-f2
    point adds. Dominated points never improve best_f2 and contribute 0."""
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    area = 0.0
    best_f2 = ref[1]
    for i in order:
        f1, f2 = pts[i]
        if f2 < best_f2:
            area += (ref[0] - f1) * (best_f2 - f2)
            best_f2 = f2
    return float(area)


def _hv3d(pts: np.ndarray, ref: np.ndarray) -> float:
    """Slice along f3: each slab [z_k, z_next) contributes the 2-D
    hypervolume of all points at or below z_k times the slab height."""
    order = np.argsort(pts[:, 2], kind="stable")
    pts = pts[order]
    n = pts.shape[0]
    volume = 0.0
    i = 0
    while i < n:
        z = pts[i, 2]
        j = i
        while j + 1 < n and pts[j + 1, 2] == z:
            j += 1
        upper = pts[j + 1, 2] if j + 1 < n else ref[2]
        if upper > z:
            volume += _hv2d(pts[: j + 1, :2], ref[:2]) * (upper - z)
        i = j + 1
    return float(volume)


def spacing(front: np.ndarray) -> float:
    """Schott spacing: standard deviation of nearest-neighbor L1 distances
    (zero for perfectly even spreads)."""
    pts = _as_front(front, "front")
    if pts.shape[0] < 2:
        raise ValueError("spacing requires at least 2 points")
    d = np.abs(pts[:, None, :] - pts[None, :, :]).sum(axis=2)
    np.fill_diagonal(d, np.inf)
    nearest = d.min(axis=1)
    return float(np.std(nearest, ddof=1))


def psp(obtained: np.ndarray, reference: np.ndarray) -> float:
    """Extent ratio over spacing: rewards fronts that are both broad
    (relative to the reference extent) and evenly spread."""
    obt = _as_front(obtained, "obtained front")
    ref = _as_front(reference, "reference front")
    if obt.shape[0] < 2:
        raise ValueError("psp requires at least 2 obtained points")
    ref_extent = float((ref.max(axis=0) - ref.min(axis=0)).sum())
    if ref_extent <= 0.0:
        raise ValueError("reference front has zero extent")
    extent_ratio = float((obt.max(axis=0) - obt.min(axis=0)).sum()) / ref_extent
    return extent_ratio / (spacing(obt) + 1e-9)


def hv_reference_point(reference: np.ndarray) -> np.ndarray:
    """Hypervolume reference point: the reference front's nadir scaled by
    1.1 per objective."""
    ref = _as_front(reference, "reference front")
    return ref.max(axis=0) * 1.1


def metric_report(obtained: np.ndarray, reference: np.ndarray) -> MetricReport:
    """Compute every indicator for one obtained front against a reference.

    A degenerate single-point front reports zero spacing and zero PSP
    rather than erroring, so early-iteration snapshots stay reportable.
    """
    obt = _as_front(obtained, "obtained front")
    ref_point = hv_reference_point(reference)
    if obt.shape[0] >= 2:
        spc = spacing(obt)
        spread = psp(obt, reference)
    else:
        spc = 0.0
        spread = 0.0
    return MetricReport(
        igd=igd(obt, reference),
        hv=hypervolume(obt, ref_point),
        psp=spread,
        spacing=spc,
        ref_point=ref_point,
        n_points=int(obt.shape[0]),
    )


def _average_ranks(values: np.ndarray) -> np.ndarray:
    """Ranks 1..n with ties assigned the average of their positions."""
    order = np.argsort(values, kind="stable")
    ranks = np.empty(values.shape[0])
    sorted_vals = values[order]
    i = 0
    n = values.shape[0]
    while i < n:
        j = i
        while j + 1 < n and sorted_vals[j + 1] == sorted_vals[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def _exact_two_sided_p(doubled: list[int], n_a: int, w2: int) -> float:
    """Exact two-sided p by counting size-n_a subsets of the doubled ranks.

    Doubling turns average ranks (multiples of 0.5) into integers, letting a
    subset-sum count run over exact integer sums. Returns
    min(1, 2 * min(P(W <= w), P(W >= w))) under the permutation null.
    """
    total_sum = sum(doubled)
    # counts[k, s] = number of k-subsets with doubled-rank sum s; int64 is
    # plenty since counts never exceed C(20, 10)
    counts = np.zeros((n_a + 1, total_sum + 1), dtype=np.int64)
    counts[0, 0] = 1
    for d in doubled:
        # reverse k so each item is used at most once per subset
        for k in range(n_a, 0, -1):
            counts[k, d:] += counts[k - 1, : total_sum + 1 - d]
    row = counts[n_a]
    total = int(row.sum())
    le = int(row[: w2 + 1].sum())
    ge = int(row[w2:].sum())
    return min(1.0, 2.0 * min(le, ge) / total)


def wilcoxon_rank_sum(a: np.ndarray, b: np.ndarray) -> tuple[float, float]:
    """Two-sided Wilcoxon rank-sum (Mann-Whitney) test.

    Returns (rank sum of sample a, two-sided p). Ties take average ranks.
    The null distribution is enumerated exactly for combined sizes up to 20;
    larger samples use the normal approximation with tie correction.
    """
    a = np.asarray(a, dtype=np.float64).ravel()
    b = np.asarray(b, dtype=np.float64).ravel()
    if a.shape[0] < 3 or b.shape[0] < 3:
        raise ValueError("each sample needs at least 3 values")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise ValueError("samples must be finite")
    n_a = a.shape[0]
    n_b = b.shape[0]
    n = n_a + n_b
    combined = np.concatenate([a, b])
    ranks = _average_ranks(combined)
    w = float(ranks[:n_a].sum())
    if n <= 20:
        doubled = [int(round(2.0 * r)) for r in ranks]
        p = _exact_two_sided_p(doubled, n_a, int(round(2.0 * w)))
        return w, p
    mean = n_a * (n + 1) / 2.0
    # tie correction: subtract sum(t^3 - t) over tie groups from the variance
    _, tie_counts = np.unique(combined, return_counts=True)
    tie_term = float(((tie_counts**3) - tie_counts).sum())
    var = n_a * n_b / 12.0 * ((n + 1) - tie_term / (n * (n - 1)))
    if var <= 0.0:
        return w, 1.0
    z = (w - mean) / math.sqrt(var)
    p = math.erfc(abs(z) / math.sqrt(2.0))
    return w, min(1.0, p)
