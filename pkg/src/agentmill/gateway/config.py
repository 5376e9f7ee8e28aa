"""Gateway configuration: listen address, registry roots, provider settings,
supervisor numbers, and event-stream tuning. Loadable from a JSON file."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from agentmill.runtime.supervisor import SupervisorConfig


@dataclass(frozen=True)
class GatewayConfig:
    host: str = "127.0.0.1"
    port: int = 8420
    registry_root: Path = Path("registry")
    run_root: Path = Path("run")
    provider: dict[str, Any] = field(default_factory=lambda: {"kind": "mock"})
    supervisor: SupervisorConfig = field(default_factory=SupervisorConfig)
    keepalive: float = 15.0
    ring_size: int = 256
    instance_per_session: bool = False
    max_retries: int = 3
    ui_dir: Path | None = None

    @classmethod
    def from_dict(cls, data: dict[str, Any], base_dir: Path | None = None) -> GatewayConfig:
        base = Path(base_dir) if base_dir is not None else Path.cwd()

        def resolve(value: str | None) -> Path | None:
            if value is None:
                return None
            path = Path(value)
            return path if path.is_absolute() else base / path

        listen = data.get("listen", {})
        supervisor_settings = dict(data.get("supervisor", {}))
        if supervisor_settings.get("port_range") is not None:
            supervisor_settings["port_range"] = tuple(supervisor_settings["port_range"])
        events = data.get("events", {})
        return cls(
            host=listen.get("host", "127.0.0.1"),
            port=int(listen.get("port", 8420)),
            registry_root=resolve(data.get("registry_root", "registry")),
            run_root=resolve(data.get("run_root", "run")),
            provider=dict(data.get("provider", {"kind": "mock"})),
            supervisor=SupervisorConfig(**supervisor_settings),
            keepalive=float(events.get("keepalive", 15.0)),
            ring_size=int(events.get("ring_size", 256)),
            instance_per_session=bool(data.get("instance_per_session", False)),
            max_retries=int(data.get("synthesis", {}).get("max_retries", 3)),
            ui_dir=resolve(data.get("ui_dir")),
        )

    @classmethod
    def from_file(cls, path: Path) -> GatewayConfig:
        path = Path(path)
        data = json.loads(path.read_text(encoding="utf-8"))
        return cls.from_dict(data, base_dir=path.parent)
