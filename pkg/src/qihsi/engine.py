"""Swarm optimizer core: quantum-style leader updates over a salp chain,
the follower midpoint rule, the exploration schedule, and the full run loop
with per-iteration tracing.

Two leader rules share one engine. The quantum rule mixes the leader with
its food source in normalized coordinates, perturbs the mix by a small
rotation, and maps it back through the affine range transform. Disabling it
(the baseline mode) swaps in the classical update driven by a plain uniform
draw. Everything else - archive, followers, schedule, feedback - is
identical, so the quantum operators are the only delta between the two.

Random draws come from four dedicated streams (init, leader, roulette,
sign); per leader the order is fixed: one roulette draw, then the
per-dimension leader-stream draws (alpha, phi, theta - or c2 in baseline
mode), then per-dimension sign draws when a sign flip applies.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .adas import ADAS_ID, knee_point, run_indicators
from .archive import ParetoArchive
from .core import Bounds, RngBundle, Solution, clamp_to_bounds
from .dmil import (
    DEFAULT_GAMMA,
    DEFAULT_TAU,
    DmilState,
    NullFeedback,
    ScenarioFeedback,
    apply_feedback,
    food_source_scores,
    last_expert_weights,
    load_scenario,
    uniform_weights,
)
from .metrics import MetricReport, hv_reference_point, hypervolume, igd, metric_report
from .problems import Problem, get_problem

ALGORITHMS = ("qihsi", "mssa")


def c1_schedule(t: int, total: int) -> float:
    """Exploration coefficient 2*exp(-(4t/T)^2): 2 at t=0, ~2e-16 * 1 at t=T."""
    if total < 1:
        raise ValueError("iteration budget must be >= 1")
    if not 0 <= t <= total:
        raise ValueError(f"iteration {t} outside [0, {total}]")
    return 2.0 * math.exp(-((4.0 * t / total) ** 2))


def superpose(x_best, x_i, alpha):
    """Convex mix alpha*x_best + (1-alpha)*x_i, element-wise."""
    alpha = np.asarray(alpha, dtype=np.float64)
    if np.any(alpha < 0.0) or np.any(alpha > 1.0):
        raise ValueError("alpha must lie in [0, 1]")
    return alpha * np.asarray(x_best, dtype=np.float64) + (1.0 - alpha) * np.asarray(
        x_i, dtype=np.float64
    )


def entangle(q, phi, theta, beta):
    """Rotation-style perturbation q*cos(phi) - beta*sin(theta)."""
    return np.asarray(q, dtype=np.float64) * np.cos(phi) - beta * np.sin(theta)


def leader_update(
    food: np.ndarray,
    mix: np.ndarray,
    c1: float,
    bounds: Bounds,
    rng: np.random.Generator,
    sign_flip: bool,
) -> np.ndarray:
    """Move a leader around its food source.

    The offset is c1 * (range * mix + lower) per dimension; with sign_flip
    on, each dimension's offset is negated with probability 1/2 (one draw
    per dimension from the sign stream). The result is clamped into bounds.
    """
    food = np.asarray(food, dtype=np.float64)
    mix = np.asarray(mix, dtype=np.float64)
    if food.shape != mix.shape or food.shape != bounds.lower.shape:
        raise ValueError("dimension mismatch in leader update")
    if c1 <= 0.0:
        raise ValueError("c1 must be positive")
    offset = c1 * (bounds.width * mix + bounds.lower)
    if sign_flip:
        flip = rng.random(food.shape[0]) < 0.5
        offset = np.where(flip, -offset, offset)
    return clamp_to_bounds(food + offset, bounds)


def follower_update(x_old: np.ndarray, prev_new: np.ndarray) -> np.ndarray:
    """Chain rule: each follower moves to the midpoint of its old position
    and its already-updated predecessor. Stays in bounds when both are."""
    x_old = np.asarray(x_old, dtype=np.float64)
    prev_new = np.asarray(prev_new, dtype=np.float64)
    if x_old.shape != prev_new.shape:
        raise ValueError("dimension mismatch in follower update")
    return 0.5 * (x_old + prev_new)


@dataclass
class QuantumParams:
    """Knobs for the quantum leader rule."""

    enabled: bool = True
    beta: float = 0.1
    rot_sigma: float = math.pi / 12.0
    sign_flip: bool = True
    alpha_mode: str = "uniform_per_dimension"

    def __post_init__(self):
        if self.beta < 0.0:
            raise ValueError("beta must be >= 0")
        if self.rot_sigma < 0.0:
            raise ValueError("rot_sigma must be >= 0")
        if self.alpha_mode != "uniform_per_dimension":
            raise ValueError(f"unsupported alpha_mode: {self.alpha_mode!r}")

    def to_dict(self) -> dict:
        return {
            "enabled": self.enabled,
            "beta": self.beta,
            "rot_sigma": self.rot_sigma,
            "sign_flip": self.sign_flip,
            "alpha_mode": self.alpha_mode,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "QuantumParams":
        _reject_unknown(data, {"enabled", "beta", "rot_sigma", "sign_flip", "alpha_mode"}, "quantum")
        return cls(**data)


@dataclass
class DmilConfig:
    """Feedback-loop settings: period, gain, and the expert source."""

    enabled: bool = False
    tau: int = DEFAULT_TAU
    gamma: float = DEFAULT_GAMMA
    scenario: Optional[str] = None

    def __post_init__(self):
        if self.tau < 1:
            raise ValueError("tau must be >= 1")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError("gamma must lie in [0, 1]")

    def to_dict(self) -> dict:
        return {
            "enabled": self.enabled,
            "tau": self.tau,
            "gamma": self.gamma,
            "scenario": self.scenario,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DmilConfig":
        _reject_unknown(data, {"enabled", "tau", "gamma", "scenario"}, "dmil")
        return cls(**data)


@dataclass
class RunConfig:
    """Full parameterization of one optimizer run."""

    problem: str
    algo: str = "qihsi"
    pop: int = 100
    iters: int = 250
    archive: int = 100
    seed: int = 0
    quantum: QuantumParams = field(default_factory=QuantumParams)
    dmil: DmilConfig = field(default_factory=DmilConfig)
    ref_points: int = 1000

    def __post_init__(self):
        if self.algo not in ALGORITHMS:
            raise ValueError(f"algo must be one of {ALGORITHMS}")
        if self.pop < 2:
            raise ValueError("population must be >= 2")
        if self.iters < 1:
            raise ValueError("iteration budget must be >= 1")
        if self.archive < 1:
            raise ValueError("archive capacity must be >= 1")
        if self.ref_points < 2:
            raise ValueError("ref_points must be >= 2")
        # baseline mode is defined by the absence of the quantum operators
        if self.algo == "mssa" and self.quantum.enabled:
            self.quantum = QuantumParams(
                enabled=False,
                beta=self.quantum.beta,
                rot_sigma=self.quantum.rot_sigma,
                sign_flip=self.quantum.sign_flip,
                alpha_mode=self.quantum.alpha_mode,
            )

    def to_dict(self) -> dict:
        return {
            "problem": self.problem,
            "algo": self.algo,
            "pop": self.pop,
            "iters": self.iters,
            "archive": self.archive,
            "seed": self.seed,
            "quantum": self.quantum.to_dict(),
            "dmil": self.dmil.to_dict(),
            "ref_points": self.ref_points,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        _reject_unknown(
            data,
            {"problem", "algo", "pop", "iters", "archive", "seed", "quantum", "dmil", "ref_points"},
            "run config",
        )
        if "problem" not in data:
            raise ValueError("run config requires a problem id")
        kwargs = dict(data)
        if "quantum" in kwargs:
            kwargs["quantum"] = QuantumParams.from_dict(kwargs["quantum"])
        if "dmil" in kwargs:
            kwargs["dmil"] = DmilConfig.from_dict(kwargs["dmil"])
        return cls(**kwargs)


def _reject_unknown(data: dict, allowed: set, context: str) -> None:
    if not isinstance(data, dict):
        raise ValueError(f"{context} must be a JSON object")
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise ValueError(f"unknown {context} keys: {unknown}")


@dataclass
class SwarmState:
    """Mutable run state: the chain, the repository, and the clocks."""

    population: list[Solution]
    archive: ParetoArchive
    iteration: int
    max_iterations: int
    dmil: DmilState
    rng: RngBundle


@dataclass
class RunRecord:
    """Everything one run produced, bit-stable given the config seed
    (wall_seconds excepted)."""

    config: RunConfig
    c1_trace: list[float]
    weights_trace: list[list[float]]
    archive_size_trace: list[int]
    igd_trace: Optional[list[float]]
    hv_trace: Optional[list[float]]
    final_front: np.ndarray
    final_decisions: np.ndarray
    metrics: Optional[MetricReport]
    adas_indicators: Optional[object]
    event_log: list[dict]
    knee_history: list[list[float]]
    wall_seconds: float

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "traces": {
                "c1": self.c1_trace,
                "weights": self.weights_trace,
                "archive_size": self.archive_size_trace,
                "igd": self.igd_trace,
                "hv": self.hv_trace,
            },
            "final_front": [[float(v) for v in row] for row in self.final_front],
            "final_decisions": [[float(v) for v in row] for row in self.final_decisions],
            "metrics": self.metrics.to_dict() if self.metrics else None,
            "adas_indicators": (
                self.adas_indicators.to_dict() if self.adas_indicators else None
            ),
            "event_log": self.event_log,
            "knee_history": self.knee_history,
            "wall_seconds": self.wall_seconds,
        }


class Optimizer:
    """One seeded run: builds the initial chain, then advances step by step.

    Live sessions call step_once() under their own pacing; headless runs
    call run_all(). Both paths execute identical code, which is what makes
    scripted-session and offline results comparable bit for bit.
    """

    def __init__(self, config: RunConfig, problem: Problem | None = None, feedback=None):
        self.config = config
        self.problem = problem if problem is not None else get_problem(config.problem)
        if self.problem.spec.id != config.problem:
            raise ValueError(
                f"problem {self.problem.spec.id!r} does not match config {config.problem!r}"
            )
        if feedback is not None:
            self.feedback = feedback
        elif config.dmil.scenario:
            self.feedback = ScenarioFeedback(load_scenario(config.dmil.scenario))
        else:
            self.feedback = NullFeedback()

        spec = self.problem.spec
        if spec.has_reference_front:
            self._reference = self.problem.true_front(config.ref_points).points
            self._ref_point = hv_reference_point(self._reference)
        else:
            self._reference = None
            self._ref_point = None

        t0 = time.perf_counter()
        rng = RngBundle(config.seed)
        unit = rng.init.random((config.pop, spec.dimension))
        positions = spec.bounds.lower + unit * spec.bounds.width
        population = [Solution(x, self.problem.evaluate(x)) for x in positions]
        archive = ParetoArchive(config.archive)
        for s in population:
            archive.insert(s)
        self.state = SwarmState(
            population=population,
            archive=archive,
            iteration=0,
            max_iterations=config.iters,
            dmil=DmilState(
                weights=uniform_weights(spec.objectives),
                gamma=config.dmil.gamma,
                tau=config.dmil.tau,
            ),
            rng=rng,
        )
        self.knee_history: list[list[float]] = []
        self.trace_c1: list[float] = []
        self.trace_weights: list[list[float]] = []
        self.trace_archive: list[int] = []
        self.trace_igd: list[float] | None = [] if self._reference is not None else None
        self.trace_hv: list[float] | None = [] if self._reference is not None else None
        self._elapsed = time.perf_counter() - t0

    @property
    def finished(self) -> bool:
        return self.state.iteration >= self.state.max_iterations

    def step_once(self) -> None:
        """Advance one iteration: leaders, followers, archive, feedback."""
        st = self.state
        if st.iteration >= st.max_iterations:
            raise ValueError("run already finished")
        t0 = time.perf_counter()
        cfg = self.config
        spec = self.problem.spec
        bounds = spec.bounds
        dim = spec.dimension
        c1 = c1_schedule(st.iteration, st.max_iterations)

        if cfg.dmil.enabled:
            scores = food_source_scores(st.archive, st.dmil.weights)
        else:
            scores = st.archive.crowding

        quantum = cfg.quantum
        leaders = (cfg.pop + 1) // 2
        lower, width = bounds.lower, bounds.width
        new_xs: list[np.ndarray] = []
        for i in range(leaders):
            food = st.archive.roulette_select(scores, st.rng.roulette)
            if quantum.enabled:
                alpha = st.rng.leader.random(dim)
                phi = st.rng.leader.normal(0.0, quantum.rot_sigma, dim)
                theta = st.rng.leader.normal(0.0, quantum.rot_sigma, dim)
                own_norm = (st.population[i].x - lower) / width
                food_norm = (food.x - lower) / width
                mix = superpose(food_norm, own_norm, alpha)
                mix = np.clip(entangle(mix, phi, theta, quantum.beta), 0.0, 1.0)
                new_xs.append(
                    leader_update(food.x, mix, c1, bounds, st.rng.sign, quantum.sign_flip)
                )
            else:
                # classical rule: the +/- branch is part of the formula
                c2 = st.rng.leader.random(dim)
                new_xs.append(leader_update(food.x, c2, c1, bounds, st.rng.sign, True))
        for i in range(leaders, cfg.pop):
            new_xs.append(follower_update(st.population[i].x, new_xs[i - 1]))

        st.population = [Solution(x, self.problem.evaluate(x)) for x in new_xs]
        for s in st.population:
            st.archive.insert(s)

        st.iteration += 1
        if st.iteration % st.dmil.tau == 0:
            if cfg.dmil.enabled:
                event = st.iteration // st.dmil.tau
                sample = self.feedback.pull(event, spec.objectives)
                apply_feedback(st.dmil, sample, st.iteration, event)
            knee = knee_point(st.archive, st.dmil.weights)
            self.knee_history.append([float(v) for v in knee.f])

        self.trace_c1.append(c1)
        self.trace_weights.append([float(v) for v in st.dmil.weights])
        self.trace_archive.append(len(st.archive))
        if self._reference is not None:
            front = st.archive.objectives
            self.trace_igd.append(igd(front, self._reference))
            self.trace_hv.append(hypervolume(front, self._ref_point))
        self._elapsed += time.perf_counter() - t0

    def run_all(self) -> RunRecord:
        while not self.finished:
            self.step_once()
        return self.finalize_record()

    def finalize_record(self) -> RunRecord:
        """Assemble the RunRecord for the run so far."""
        st = self.state
        final_front = st.archive.objectives
        report = (
            metric_report(final_front, self._reference)
            if self._reference is not None
            else None
        )
        adas_ind = None
        if self.problem.spec.id == ADAS_ID:
            expert = last_expert_weights(st.dmil, self.problem.spec.objectives)
            adas_ind = run_indicators(
                st.archive, st.dmil.weights, self.knee_history, expert
            )
        return RunRecord(
            config=self.config,
            c1_trace=list(self.trace_c1),
            weights_trace=[list(w) for w in self.trace_weights],
            archive_size_trace=list(self.trace_archive),
            igd_trace=list(self.trace_igd) if self.trace_igd is not None else None,
            hv_trace=list(self.trace_hv) if self.trace_hv is not None else None,
            final_front=final_front,
            final_decisions=st.archive.decisions,
            metrics=report,
            adas_indicators=adas_ind,
            event_log=list(st.dmil.event_log),
            knee_history=[list(k) for k in self.knee_history],
            wall_seconds=self._elapsed,
        )


def run(config: RunConfig, problem: Problem | None = None, feedback=None) -> RunRecord:
    """Execute one full run and return its record."""
    return Optimizer(config, problem=problem, feedback=feedback).run_all()
