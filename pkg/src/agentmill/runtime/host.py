"""Reference agent host: one process serving a single materialized workspace.

The host composes its system prompt from the workspace's AGENTS.md plus the
copied skill modules, proxies chat turns to the configured completion
provider, and exposes the agent wire protocol:

- ``GET /health``  -> ``{"status":"ok","agent":"<name>"}``
- ``POST /chat``   body ``{"session": "...", "message": "..."}`` -> newline-
  delimited JSON frames ``{"type":"delta","text":...}`` ending in a ``done``
  frame
- ``GET /events``  -> server-sent events (id/event/data)
- ``POST /quit``   -> graceful exit

Launched as ``python -m agentmill.runtime.host --workspace DIR --port N
--provider-config FILE``. With ``--port 0`` the OS-assigned port is written
to ``<workspace>/.runtime/port`` once the server is listening.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import queue
import re
import threading
import time
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse, StreamingResponse
from pydantic import BaseModel

from agentmill.synthesis.providers import CompletionProvider, load_provider

RUNTIME_DIR = ".runtime"
PORT_FILE = "port"
EVENT_KEEPALIVE = 1.0

_TOKEN_RE = re.compile(r"\S+\s*")


class ChatRequest(BaseModel):
    session: str
    message: str


class HostEventBus:
    """Per-host event fan-out with a monotonically increasing sequence."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._seq = 0
        self._subscribers: list[queue.Queue] = []

    def publish(self, kind: str, payload: dict) -> None:
        with self._lock:
            self._seq += 1
            event = {"seq": self._seq, "kind": kind, "payload": json.dumps(payload)}
            for subscriber in self._subscribers:
                subscriber.put(event)

    def subscribe(self) -> queue.Queue:
        subscriber: queue.Queue = queue.Queue()
        with self._lock:
            self._subscribers.append(subscriber)
        return subscriber

    def unsubscribe(self, subscriber: queue.Queue) -> None:
        with self._lock:
            if subscriber in self._subscribers:
                self._subscribers.remove(subscriber)


def _load_workspace(workspace: Path) -> tuple[str, str, dict]:
    """Return (agent name, composed system prompt, host settings)."""
    behavior = (workspace / "AGENTS.md").read_text(encoding="utf-8")
    name = workspace.name
    profile_file = workspace / "profile.json"
    if profile_file.exists():
        name = json.loads(profile_file.read_text(encoding="utf-8")).get("name", name)

    prompt_parts = [behavior]
    skills_dir = workspace / "skills"
    if skills_dir.is_dir():
        for skill_file in sorted(skills_dir.glob("*/SKILL.md")):
            prompt_parts.append(f"# Skill Module: {skill_file.parent.name}")
            prompt_parts.append(skill_file.read_text(encoding="utf-8"))

    settings_file = workspace / "settings.json"
    settings = json.loads(settings_file.read_text(encoding="utf-8")) if settings_file.exists() else {}
    return name, "\n\n".join(prompt_parts), settings


def create_host_app(workspace: Path, provider: CompletionProvider) -> FastAPI:
    workspace = Path(workspace)
    agent_name, system_prompt, settings = _load_workspace(workspace)
    chunk_words = int(settings.get("reply_chunk_words", 12))
    budget = int(settings.get("completion_budget", 2048))

    app = FastAPI(title=f"agent-host:{agent_name}")
    app.state.agent_name = agent_name
    app.state.events = HostEventBus()
    app.state.stopping = threading.Event()
    app.state.server = None  # set by run_host
    app.state.last_activity = time.monotonic()

    def touch() -> None:
        app.state.last_activity = time.monotonic()

    @app.get("/health")
    def health() -> JSONResponse:
        return JSONResponse({"status": "ok", "agent": agent_name})

    @app.post("/chat")
    def chat(request: ChatRequest) -> StreamingResponse:
        if not request.message.strip():
            raise HTTPException(status_code=422, detail="message must be non-empty")
        touch()
        app.state.events.publish(
            "chat-request", {"session": request.session, "chars": len(request.message)}
        )

        def frames():
            reply = provider.complete(system_prompt, request.message, budget=budget)
            tokens = _TOKEN_RE.findall(reply)
            for start in range(0, len(tokens), chunk_words):
                chunk = "".join(tokens[start : start + chunk_words])
                yield json.dumps({"type": "delta", "text": chunk}) + "\n"
            yield json.dumps({"type": "done", "session": request.session}) + "\n"
            app.state.events.publish(
                "chat-reply", {"session": request.session, "chars": len(reply)}
            )
            touch()

        return StreamingResponse(frames(), media_type="application/x-ndjson")

    @app.get("/events")
    def events() -> StreamingResponse:
        bus: HostEventBus = app.state.events
        subscriber = bus.subscribe()

        def stream():
            try:
                while not app.state.stopping.is_set():
                    try:
                        event = subscriber.get(timeout=EVENT_KEEPALIVE)
                    except queue.Empty:
                        yield ": keepalive\n\n"
                        continue
                    yield (
                        f"id: {event['seq']}\n"
                        f"event: {event['kind']}\n"
                        f"data: {event['payload']}\n\n"
                    )
            finally:
                bus.unsubscribe(subscriber)

        return StreamingResponse(stream(), media_type="text/event-stream")

    @app.post("/quit")
    def quit(request: Request) -> dict:
        app.state.events.publish("quit-requested", {})
        app.state.stopping.set()
        server = request.app.state.server
        if server is not None:
            server.should_exit = True
        return {"status": "quitting"}

    return app


def run_host(workspace: Path, port: int, provider_config: Path, host: str = "127.0.0.1") -> None:
    import uvicorn

    workspace = Path(workspace)
    provider = load_provider(json.loads(Path(provider_config).read_text(encoding="utf-8")))
    app = create_host_app(workspace, provider)

    config = uvicorn.Config(
        app, host=host, port=port, log_level="warning", timeout_graceful_shutdown=3
    )
    server = uvicorn.Server(config)
    app.state.server = server

    async def serve() -> None:
        task = asyncio.create_task(server.serve())
        while not server.started and not task.done():
            await asyncio.sleep(0.01)
        if server.started:
            bound = server.servers[0].sockets[0].getsockname()[1]
            runtime_dir = workspace / RUNTIME_DIR
            runtime_dir.mkdir(exist_ok=True)
            tmp = runtime_dir / f"{PORT_FILE}.tmp"
            tmp.write_text(str(bound), encoding="utf-8")
            tmp.rename(runtime_dir / PORT_FILE)
            app.state.events.publish("host-ready", {"port": bound})
        await task

    asyncio.run(serve())


def main(argv: list[str] | None = None) -> None:
    parser = argparse.ArgumentParser(description="Serve one agent workspace.")
    parser.add_argument("--workspace", required=True, type=Path)
    parser.add_argument("--port", required=True, type=int)
    parser.add_argument("--provider-config", required=True, type=Path)
    parser.add_argument("--host", default="127.0.0.1")
    args = parser.parse_args(argv)
    run_host(args.workspace, args.port, args.provider_config, host=args.host)


if __name__ == "__main__":
    main()
