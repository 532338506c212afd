"""Interactive optimization sessions behind a JSON message protocol.

A session wraps one Optimizer fed by a live FeedbackQueue. Control is
request/response: create, advance, feedback, snapshot, record. Snapshots
are copies published at iteration boundaries, so reads are wait-free and
never observe a torn mid-step state. The engine code path is the same one
headless runs use; a scripted session therefore reproduces an offline run
bit for bit.
"""

from __future__ import annotations

import threading
import time
import uuid

import numpy as np

from .dmil import FeedbackQueue, normalize_weights
from .engine import Optimizer, RunConfig, c1_schedule

IDLE_TIMEOUT_SECONDS = 1800.0


class ProtocolError(Exception):
    """Maps onto an error reply: carries the protocol error code."""

    def __init__(self, code: str, detail: str):
        super().__init__(detail)
        self.code = code
        self.detail = detail


class Session:
    """One live run: engine, feedback queue, and published snapshots."""

    def __init__(self, session_id: str, config: RunConfig):
        self.id = session_id
        self.queue = FeedbackQueue()
        self.optimizer = Optimizer(config, feedback=self.queue)
        self.lock = threading.Lock()
        self.status = "paused"
        self.last_access = time.monotonic()
        self._published: dict = {}
        self._publish()

    def _publish(self) -> None:
        opt = self.optimizer
        st = opt.state
        tail = None
        if opt.trace_igd is not None:
            tail = {
                "igd": [float(v) for v in opt.trace_igd[-50:]],
                "hv": [float(v) for v in opt.trace_hv[-50:]],
            }
        front = st.archive.objectives
        decisions = st.archive.decisions
        self._published = {
            "type": "state",
            "session": self.id,
            "iteration": st.iteration,
            "max_iterations": st.max_iterations,
            "c1": c1_schedule(st.iteration, st.max_iterations),
            "front": [[float(v) for v in row] for row in front],
            "decisions": [[float(v) for v in row] for row in decisions],
            "weights": [float(v) for v in st.dmil.weights],
            "last_feedback": st.dmil.event_log[-1] if st.dmil.event_log else None,
            "trace_tail": tail,
        }

    def snapshot(self) -> dict:
        snap = dict(self._published)
        snap["status"] = self.status
        return snap

    def advance(self, n: int) -> dict:
        with self.lock:
            remaining = self.optimizer.state.max_iterations - self.optimizer.state.iteration
            steps = min(n, remaining)
            if steps > 0:
                self.status = "running"
                for _ in range(steps):
                    self.optimizer.step_once()
                    self._publish()
            self.status = "finished" if self.optimizer.finished else "paused"
            self._publish()
            return self.snapshot()

    def feedback(self, weights, gamma: float | None) -> dict:
        st = self.optimizer.state
        m = self.optimizer.problem.spec.objectives
        raw = np.asarray(weights, dtype=np.float64).ravel()
        if raw.shape != (m,):
            raise ProtocolError("bad_weights", f"expected {m} weights, got {raw.shape[0]}")
        try:
            normalized = normalize_weights(raw)
        except ValueError as exc:
            raise ProtocolError("bad_weights", str(exc)) from None
        tau = st.dmil.tau
        applies_at = (st.iteration // tau + 1) * tau
        echo = [float(v) for v in normalized]
        if self.status == "finished" or applies_at > st.max_iterations:
            return {"type": "ack", "applies_at": None, "weights": echo, "no_effect": True}
        self.queue.submit(normalized, gamma=gamma, iteration=st.iteration)
        return {"type": "ack", "applies_at": applies_at, "weights": echo}

    def record(self) -> dict:
        with self.lock:
            return self.optimizer.finalize_record().to_dict()


class SessionService:
    """Transport-independent dispatcher for the session message protocol."""

    def __init__(self, idle_timeout: float = IDLE_TIMEOUT_SECONDS):
        self.idle_timeout = idle_timeout
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def handle(self, message) -> dict:
        """Process one protocol message, returning the reply message."""
        try:
            if not isinstance(message, dict) or "type" not in message:
                raise ProtocolError("bad_message", "message must be an object with a type")
            kind = message["type"]
            if kind == "create":
                return self._create(message)
            if kind == "advance":
                return self._advance(message)
            if kind == "feedback":
                return self._feedback(message)
            if kind == "snapshot":
                return self._session(message).snapshot()
            if kind == "record":
                session = self._session(message)
                return {"type": "record", "session": session.id, "record": session.record()}
            raise ProtocolError("bad_message", f"unknown message type: {kind!r}")
        except ProtocolError as exc:
            return {"type": "error", "code": exc.code, "detail": exc.detail}

    def _evict_idle(self) -> None:
        now = time.monotonic()
        with self._lock:
            stale = [
                sid
                for sid, s in self._sessions.items()
                if now - s.last_access > self.idle_timeout
            ]
            for sid in stale:
                del self._sessions[sid]

    def _session(self, message: dict) -> Session:
        self._evict_idle()
        sid = message.get("session")
        with self._lock:
            session = self._sessions.get(sid)
        if session is None:
            raise ProtocolError("no_such_session", f"no session {sid!r}")
        session.last_access = time.monotonic()
        return session

    def _create(self, message: dict) -> dict:
        self._evict_idle()
        raw = message.get("config")
        try:
            config = RunConfig.from_dict(raw)
            session = Session(uuid.uuid4().hex[:12], config)
        except (ValueError, TypeError, KeyError) as exc:
            raise ProtocolError("bad_config", str(exc)) from None
        with self._lock:
            self._sessions[session.id] = session
        spec = session.optimizer.problem.spec
        reference = session.optimizer._reference
        return {
            "type": "created",
            "session": session.id,
            "problem": {
                "id": spec.id,
                "dimension": spec.dimension,
                "objectives": spec.objectives,
                "lower": [float(v) for v in spec.bounds.lower],
                "upper": [float(v) for v in spec.bounds.upper],
                "has_reference_front": spec.has_reference_front,
            },
            "reference_front": (
                [[float(v) for v in row] for row in reference]
                if reference is not None
                else None
            ),
        }

    def _advance(self, message: dict) -> dict:
        session = self._session(message)
        n = message.get("n")
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise ProtocolError("bad_message", "advance requires a non-negative integer n")
        return session.advance(n)

    def _feedback(self, message: dict) -> dict:
        session = self._session(message)
        weights = message.get("weights")
        if not isinstance(weights, (list, tuple)) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in weights
        ):
            raise ProtocolError("bad_weights", "weights must be a list of numbers")
        gamma = message.get("gamma")
        if gamma is not None:
            if not isinstance(gamma, (int, float)) or isinstance(gamma, bool) or not 0.0 <= gamma <= 1.0:
                raise ProtocolError("bad_message", "gamma must be a number in [0, 1]")
            gamma = float(gamma)
        return session.feedback(weights, gamma)
