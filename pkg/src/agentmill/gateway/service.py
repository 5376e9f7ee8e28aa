"""REST and SSE surface of the management layer.

Paths are part of the platform contract:

- ``POST   /api/agents``                 one-sentence text or full profile
- ``GET    /api/agents``                 list, filter by subject/level
- ``GET    /api/agents/{id}``            profile plus metrics
- ``DELETE /api/agents/{id}``
- ``POST   /api/agents/{id}/sessions``
- ``POST   /api/sessions/{sid}/chat``    streamed reply frames
- ``GET    /api/skills``, ``GET /api/skills/{id}``, ``GET /api/stats``
- ``GET    /api/events``                 aggregated server-sent events

Errors use the uniform ``{code, message, details[]}`` envelope.
"""

from __future__ import annotations

from contextlib import asynccontextmanager
from typing import Any

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, StreamingResponse
from pydantic import BaseModel

from agentmill.gateway.config import GatewayConfig
from agentmill.gateway.core import ApiError, GatewayCore


class ChatBody(BaseModel):
    message: str


def create_app(config: GatewayConfig, provider=None) -> FastAPI:
    core = GatewayCore(config, provider=provider)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        core.start()
        try:
            yield
        finally:
            core.stop()

    app = FastAPI(title="agentmill gateway", lifespan=lifespan)
    app.state.core = core

    @app.exception_handler(ApiError)
    async def api_error_handler(request: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(status_code=exc.status, content=exc.body())

    @app.post("/api/agents", status_code=201)
    def create_agent(body: dict[str, Any]) -> dict:
        return core.create_agent(body)

    @app.get("/api/agents")
    def list_agents(subject: str | None = None, level: str | None = None) -> list[dict]:
        return core.list_agents(subject=subject, level=level)

    @app.get("/api/agents/{agent_id}")
    def get_agent(agent_id: str) -> dict:
        return core.get_agent(agent_id)

    @app.delete("/api/agents/{agent_id}", status_code=204)
    def delete_agent(agent_id: str) -> None:
        core.delete_agent(agent_id)

    @app.post("/api/agents/{agent_id}/sessions", status_code=201)
    def create_session(agent_id: str) -> dict:
        return core.create_session(agent_id).as_dict()

    @app.post("/api/sessions/{session_id}/chat")
    def chat(session_id: str, body: ChatBody) -> StreamingResponse:
        _, frames = core.chat(session_id, body.message)
        return StreamingResponse(frames, media_type="application/x-ndjson")

    @app.get("/api/skills")
    def list_skills() -> list[dict]:
        return core.list_skills()

    @app.get("/api/skills/{skill_id}")
    def get_skill(skill_id: str) -> dict:
        return core.get_skill(skill_id)

    @app.get("/api/stats")
    def stats() -> dict:
        return core.stats()

    @app.get("/api/events")
    def events(request: Request) -> StreamingResponse:
        stream = core.events(request.headers.get("last-event-id"))
        return StreamingResponse(
            stream,
            media_type="text/event-stream",
            headers={"Cache-Control": "no-cache", "X-Accel-Buffering": "no"},
        )

    if config.ui_dir is not None and config.ui_dir.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=config.ui_dir, html=True), name="ui")

    return app
