"""Three-objective driver-assistance calibration problem (safety, energy,
comfort) over eight unit-cube parameters, plus the decision-quality
indicators reported for it: responsiveness, knee selection, decision
convergence, and expert alignment.

The closed forms are synthetic but deliberately conflicting: safety wants
hot sensors and aggressive gains, energy wants everything cold, comfort
punishes aggressive gains without damping.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .archive import ParetoArchive
from .core import Bounds, ProblemSpec, Solution, normalize_front

PARAM_NAMES = (
    "radar_sensitivity",
    "camera_exposure",
    "controller_gain",
    "brake_threshold",
    "throttle_smoothing",
    "suspension_damping",
    "sensor_duty_cycle",
    "steering_gain",
)

ADAS_ID = "adas8"


def _unit_params(p) -> np.ndarray:
    p = np.asarray(p, dtype=np.float64).ravel()
    if p.shape != (len(PARAM_NAMES),):
        raise ValueError(f"expected {len(PARAM_NAMES)} parameters, got {p.shape[0]}")
    if np.any(p < 0.0) or np.any(p > 1.0) or not np.all(np.isfinite(p)):
        raise ValueError("parameters must lie in the unit cube")
    return p


def adas_evaluate(p) -> np.ndarray:
    """Safety index, energy metric, comfort score (all minimized)."""
    p = _unit_params(p)
    radar, exposure, gain, brake, smooth, damp, duty, steer = p
    si = (
        0.5 * (1.0 - radar * duty) ** 2
        + 0.3 * (1.0 - brake) ** 2
        + 0.2 * (1.0 - gain * steer) ** 2
    )
    eem = (
        0.4 * radar**2
        + 0.3 * duty**2
        + 0.2 * gain**2
        + 0.1 * (1.0 - smooth) ** 2
    )
    cps = (
        0.4 * gain**2 * (1.0 - damp) ** 2
        + 0.3 * brake**2 * (1.0 - smooth) ** 2
        + 0.2 * steer**2 * (1.0 - damp) ** 2
        + 0.1 * (1.0 - exposure) * exposure
    )
    return np.array([si, eem, cps])


def system_responsiveness(p) -> float:
    """Latency proxy, reported per solution but not optimized; affine in p."""
    p = _unit_params(p)
    gain, smooth, duty = p[2], p[4], p[6]
    return float(0.5 * (1.0 - gain) + 0.3 * smooth + 0.2 * (1.0 - duty))


def adas_problem_spec() -> ProblemSpec:
    return ProblemSpec(
        id=ADAS_ID,
        dimension=len(PARAM_NAMES),
        objectives=3,
        bounds=Bounds.cube(len(PARAM_NAMES), 0.0, 1.0),
        has_reference_front=False,
    )


def adas_problem():
    from .problems import Problem

    return Problem(adas_problem_spec(), adas_evaluate)


def knee_point(archive: ParetoArchive, w) -> Solution:
    """Archive member minimizing the weighted Chebyshev scalarization
    max_m w_m * f~_m over the normalized front.

    Ties break by lowest weighted sum, then lowest member index.
    """
    if len(archive) == 0:
        raise ValueError("knee point of an empty archive")
    w = np.asarray(w, dtype=np.float64).ravel()
    front = normalize_front(archive.objectives)
    if w.shape != (front.shape[1],):
        raise ValueError("weight length must equal objective count")
    weighted = front * w
    cheb = weighted.max(axis=1)
    best = cheb.min()
    candidates = np.flatnonzero(cheb == best)
    if candidates.shape[0] > 1:
        sums = weighted[candidates].sum(axis=1)
        candidates = candidates[sums == sums.min()]
    return archive.members[int(candidates[0])]


def decision_convergence(knee_history) -> float:
    """Stability of successive knee choices, as a percentage.

    100 means the knee never moved between feedback events; 0 means it
    jumped across the whole normalized objective cube every time.
    """
    history = np.atleast_2d(np.asarray(knee_history, dtype=np.float64))
    if history.shape[0] < 2:
        raise ValueError("decision convergence needs at least 2 knee samples")
    m = history.shape[1]
    steps = np.linalg.norm(np.diff(history, axis=0), axis=1) / np.sqrt(m)
    return float(np.clip(100.0 * (1.0 - steps.mean()), 0.0, 100.0))


def expert_alignment(archive: ParetoArchive, chosen: Solution, w_expert) -> float:
    """How close the chosen member sits to the expert's top pick.

    Members are ranked by the expert's weighted sum over the normalized
    front (ascending); ties share the best rank, so the result does not
    depend on member ordering. 100 = expert's favorite, 0 = their least.
    """
    if len(archive) == 0:
        raise ValueError("empty archive")
    idx = next(
        (
            i
            for i, member in enumerate(archive.members)
            if member is chosen
            or (np.array_equal(member.x, chosen.x) and np.array_equal(member.f, chosen.f))
        ),
        None,
    )
    if idx is None:
        raise ValueError("chosen solution is not an archive member")
    w = np.asarray(w_expert, dtype=np.float64).ravel()
    front = normalize_front(archive.objectives)
    if w.shape != (front.shape[1],):
        raise ValueError("weight length must equal objective count")
    scores = front @ w
    rank = 1 + int((scores < scores[idx]).sum())
    k = len(archive)
    return float(100.0 * (1.0 - (rank - 1) / max(1, k - 1)))


@dataclass
class AdasIndicators:
    """Decision-quality summary for one calibration run."""

    si: float
    eem: float
    cps: float
    sr: float
    dc: float | None
    efa: float

    def to_dict(self) -> dict:
        return {
            "si": self.si,
            "eem": self.eem,
            "cps": self.cps,
            "sr": self.sr,
            "dc": self.dc,
            "efa": self.efa,
        }


def run_indicators(
    archive: ParetoArchive, weights, knee_history, w_expert
) -> AdasIndicators:
    """Knee-centric indicator bundle for a finished calibration run.

    The knee is selected under the run's final weights; alignment is scored
    against the expert's final preference. Convergence needs at least two
    knee samples and is reported as None otherwise.
    """
    knee = knee_point(archive, weights)
    si, eem, cps = (float(v) for v in knee.f)
    if knee_history is not None and len(knee_history) >= 2:
        history = np.atleast_2d(np.asarray(knee_history, dtype=np.float64))
        dc = decision_convergence(normalize_front(history))
    else:
        dc = None
    return AdasIndicators(
        si=si,
        eem=eem,
        cps=cps,
        sr=system_responsiveness(knee.x),
        dc=dc,
        efa=expert_alignment(archive, knee, w_expert),
    )
