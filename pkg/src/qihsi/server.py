"""HTTP transport for the session protocol.

One POST endpoint carries every protocol message; errors travel in-band as
{"type": "error", ...} replies with HTTP 200, keeping the wire protocol
identical to the in-process SessionService. A GET endpoint serves the
default run config so a console can create sessions without its own
configuration editor.
"""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from .engine import RunConfig
from .session import SessionService


def create_app(
    service: SessionService | None = None, default_config: RunConfig | None = None
) -> FastAPI:
    app = FastAPI(title="qihsi session service")
    # the console is served from another origin (file:// or a dev server)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    svc = service if service is not None else SessionService()
    app.state.service = svc
    app.state.default_config = default_config

    @app.post("/session")
    def session_endpoint(message: dict):
        return svc.handle(message)

    @app.get("/config")
    def config_endpoint():
        cfg = app.state.default_config
        return {"config": cfg.to_dict() if cfg is not None else None}

    @app.get("/healthz")
    def health_endpoint():
        return {"ok": True}

    return app
