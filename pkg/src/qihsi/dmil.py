"""Decision-maker-in-the-loop support: objective-weight state, the periodic
feedback update, preference-aware food-source scoring, and expert models
(scripted scenarios for headless runs, a queue for live sessions).

Weights never alter dominance; they only bias which archive members leaders
pick as food sources, so the archive remains a true Pareto set.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .archive import ParetoArchive
from .core import normalize_front

SCORE_EPS = 1e-6
DEFAULT_TAU = 25
DEFAULT_GAMMA = 0.3


def uniform_weights(m: int) -> np.ndarray:
    if m < 1:
        raise ValueError("need at least one objective")
    return np.full(m, 1.0 / m)


def normalize_weights(values) -> np.ndarray:
    """Project raw non-negative values onto the unit simplex."""
    w = np.asarray(values, dtype=np.float64).ravel()
    if w.size == 0:
        raise ValueError("weights must be non-empty")
    if not np.all(np.isfinite(w)) or np.any(w < 0.0):
        raise ValueError("weights must be finite and non-negative")
    total = w.sum()
    if total <= 0.0:
        raise ValueError("weights must not all be zero")
    return w / total


def _check_simplex(w: np.ndarray, name: str) -> None:
    if np.any(w < 0.0) or abs(float(w.sum()) - 1.0) > 1e-9:
        raise ValueError(f"{name} must lie on the unit simplex")


def update_weights(w, w_expert, gamma: float) -> np.ndarray:
    """Blend current weights toward the expert's: (1-gamma)*w + gamma*e,
    renormalized to sum exactly 1 to stop rounding drift."""
    w = np.asarray(w, dtype=np.float64)
    e = np.asarray(w_expert, dtype=np.float64)
    if w.shape != e.shape:
        raise ValueError("weight vectors differ in length")
    if not 0.0 <= gamma <= 1.0:
        raise ValueError("gamma must lie in [0, 1]")
    _check_simplex(w, "weights")
    _check_simplex(e, "expert weights")
    blended = (1.0 - gamma) * w + gamma * e
    return blended / blended.sum()


def food_source_scores(archive: ParetoArchive, w) -> np.ndarray:
    """Roulette scores CD_i / (eps + w . f~_i) over the normalized front.

    Low weighted objectives raise a member's score, steering leaders toward
    regions the decision maker currently favors; crowding keeps spread.
    """
    if len(archive) == 0:
        raise ValueError("cannot score an empty archive")
    w = np.asarray(w, dtype=np.float64)
    front = normalize_front(archive.objectives)
    if w.shape != (front.shape[1],):
        raise ValueError("weight length must equal objective count")
    _check_simplex(w, "weights")
    return archive.crowding / (SCORE_EPS + front @ w)


@dataclass
class ExpertScenario:
    """Scripted expert: an ordered (event index, weights) schedule."""

    schedule: list[tuple[int, np.ndarray]] = field(default_factory=list)
    description: str = ""

    def __post_init__(self):
        cleaned: list[tuple[int, np.ndarray]] = []
        last = -1
        for event, weights in self.schedule:
            event = int(event)
            if event <= last:
                raise ValueError("schedule event indices must strictly increase")
            if event < 1:
                raise ValueError("event indices start at 1")
            cleaned.append((event, normalize_weights(weights)))
            last = event
        self.schedule = cleaned

    def to_dict(self) -> dict:
        return {
            "schedule": [
                {"event": e, "weights": [float(v) for v in w]}
                for e, w in self.schedule
            ],
            "description": self.description,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ExpertScenario":
        entries = data.get("schedule", [])
        schedule = [(entry["event"], entry["weights"]) for entry in entries]
        return cls(schedule=schedule, description=data.get("description", ""))


def simulated_expert(scenario: ExpertScenario, event_index: int, m: int) -> np.ndarray:
    """Expert weights for a feedback event: the latest schedule entry at or
    before `event_index`, or uniform weights before the first entry."""
    chosen: np.ndarray | None = None
    for event, weights in scenario.schedule:
        if event <= event_index:
            chosen = weights
        else:
            break
    if chosen is None:
        # Single normalization pass, same as a live submission of 1/m values:
        # keeps scripted runs bit-identical to equivalent live sessions.
        return normalize_weights(uniform_weights(m))
    return chosen.copy()


BUILTIN_SCENARIOS: dict[str, dict] = {
    "adas-safety": {
        "schedule": [{"event": 2, "weights": [0.6, 0.2, 0.2]}],
        "description": "safety-priority shift after the second feedback window",
    },
    "uniform": {
        "schedule": [],
        "description": "no preference: uniform weights at every event",
    },
}


def load_scenario(source: str) -> ExpertScenario:
    """Resolve a scenario by built-in name or JSON file path."""
    if source in BUILTIN_SCENARIOS:
        return ExpertScenario.from_dict(BUILTIN_SCENARIOS[source])
    path = Path(source)
    if not path.exists():
        raise ValueError(f"unknown scenario: {source!r} (not a name or file)")
    with open(path) as fh:
        return ExpertScenario.from_dict(json.load(fh))


@dataclass
class FeedbackSample:
    """One expert input: weights plus an optional per-event gamma override."""

    weights: np.ndarray
    gamma: float | None = None


class ScenarioFeedback:
    """Feedback source backed by a scripted scenario; never skips an event."""

    def __init__(self, scenario: ExpertScenario):
        self.scenario = scenario

    def pull(self, event_index: int, m: int) -> FeedbackSample:
        return FeedbackSample(simulated_expert(self.scenario, event_index, m))


class NullFeedback:
    """Feedback source with no expert: every event is skipped."""

    def pull(self, event_index: int, m: int) -> None:
        return None


class FeedbackQueue:
    """Live feedback channel: one writer (session layer), one reader (engine).

    Multiple submissions within a feedback period collapse last-write-wins;
    the reader consumes the pending sample at a tau boundary, after which the
    queue is empty again.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._pending: FeedbackSample | None = None
        self.history: list[dict] = []

    def submit(self, weights, gamma: float | None = None, iteration: int = 0) -> np.ndarray:
        normalized = normalize_weights(weights)
        with self._lock:
            if self._pending is not None and self.history:
                self.history[-1]["status"] = "superseded"
            self._pending = FeedbackSample(normalized, gamma)
            self.history.append(
                {
                    "weights": [float(v) for v in normalized],
                    "gamma": gamma,
                    "submitted_at": iteration,
                    "status": "pending",
                }
            )
        return normalized

    def pull(self, event_index: int, m: int) -> FeedbackSample | None:
        with self._lock:
            sample = self._pending
            self._pending = None
            if sample is not None and self.history:
                self.history[-1]["status"] = "consumed"
            return sample


@dataclass
class DmilState:
    """Runtime weight state plus the feedback-event log."""

    weights: np.ndarray
    gamma: float = DEFAULT_GAMMA
    tau: int = DEFAULT_TAU
    event_log: list[dict] = field(default_factory=list)

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=np.float64)
        _check_simplex(self.weights, "weights")
        if self.tau < 1:
            raise ValueError("tau must be >= 1")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError("gamma must lie in [0, 1]")


def apply_feedback(
    state: DmilState, sample: FeedbackSample | None, iteration: int, event_index: int
) -> None:
    """Consume one feedback event at a tau boundary.

    A missing sample (live queue with nothing pending) leaves the weights
    untouched and logs the event as skipped.
    """
    if sample is None:
        state.event_log.append(
            {
                "iteration": iteration,
                "event": event_index,
                "expert": None,
                "weights": [float(v) for v in state.weights],
                "skipped": True,
            }
        )
        return
    gamma = state.gamma if sample.gamma is None else float(sample.gamma)
    state.weights = update_weights(state.weights, sample.weights, gamma)
    state.event_log.append(
        {
            "iteration": iteration,
            "event": event_index,
            "expert": [float(v) for v in sample.weights],
            "weights": [float(v) for v in state.weights],
            "gamma": gamma,
            "skipped": False,
        }
    )


def last_expert_weights(state: DmilState, m: int) -> np.ndarray:
    """Most recent expert weights seen in the event log (uniform if none)."""
    for entry in reversed(state.event_log):
        if entry.get("expert") is not None:
            return np.asarray(entry["expert"], dtype=np.float64)
    return uniform_weights(m)
