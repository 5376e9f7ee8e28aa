"""Gateway core: the management layer behind the REST surface.

Owns the registries, the synthesis pipeline, the supervisor, the session
table, and the event aggregator. Agents are constructed and launched only
when a session needs them; concurrent sessions for one profile share a
single instance unless the per-session toggle is set.
"""

from __future__ import annotations

import json
import logging
import threading
from collections import Counter, defaultdict
from pathlib import Path
from typing import Any, Iterator

import httpx

from agentmill.construct import (
    ConstructionConfig,
    ConstructionError,
    Registries,
    ProfileRegistry,
    ToolRegistry,
    construct,
    materialize,
    packaged_template_dir,
)
from agentmill.errors import AgentMillError
from agentmill.gateway.config import GatewayConfig
from agentmill.gateway.events import EventAggregator, iter_sse_events, sse_stream
from agentmill.gateway.sessions import Session, SessionTable
from agentmill.metrics import aggregate_score, classify, measure
from agentmill.profiles import (
    AgentProfile,
    ProfileError,
    parse_details,
    parse_profile,
    validate_profile,
)
from agentmill.runtime import (
    AgentInstance,
    HostLauncher,
    InstanceState,
    SpawnError,
    Supervisor,
)
from agentmill.runtime.ports import PortUnavailable
from agentmill.skills import SkillLibrary
from agentmill.synthesis import (
    SynthesisConfig,
    SynthesisError,
    enrich_profile,
    generate_profile,
    load_provider,
)

logger = logging.getLogger(__name__)


class ApiError(AgentMillError):
    """Error carrying the uniform REST envelope fields."""

    def __init__(self, status: int, code: str, message: str, details: list[str] | None = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.details = details or []

    def body(self) -> dict[str, Any]:
        return {"code": self.code, "message": str(self), "details": self.details}


class EventPump(threading.Thread):
    """Background reader relaying one instance's event stream into the
    aggregator. Exits when stopped or the host connection drops."""

    def __init__(self, core: GatewayCore, instance: AgentInstance) -> None:
        super().__init__(name=f"pump-{instance.instance_id}", daemon=True)
        self._core = core
        self._agent_id = instance.profile_id
        self._instance_id = instance.instance_id
        self._port = instance.port
        self._lines: list[str] = []
        self.stop_event = threading.Event()

    def run(self) -> None:
        url = f"http://127.0.0.1:{self._port}/events"
        try:
            with httpx.stream("GET", url, timeout=httpx.Timeout(5.0, read=10.0)) as response:
                for line in response.iter_lines():
                    if self.stop_event.is_set():
                        return
                    self._buffer(line)
        except httpx.HTTPError:
            pass
        if not self.stop_event.is_set():
            self._core.aggregator.publish(
                self._agent_id,
                "instance-disconnect",
                json.dumps({"instance_id": self._instance_id}),
            )

    def _buffer(self, line: str) -> None:
        self._lines.append(line)
        if line == "":
            for event in iter_sse_events(self._lines):
                kind = event.get("event", "message")
                self._core.aggregator.publish(self._agent_id, kind, event.get("data", ""))
            self._lines = []


class GatewayCore:
    def __init__(self, config: GatewayConfig, provider=None) -> None:
        self.config = config
        registry_root = Path(config.registry_root)
        run_root = Path(config.run_root)
        run_root.mkdir(parents=True, exist_ok=True)

        self.library = SkillLibrary.open(registry_root / "skills")
        self.profiles = ProfileRegistry.open(registry_root / "profiles")
        self.tools = ToolRegistry.open(registry_root / "tools.json")
        self.registries = Registries(
            skills=self.library, tools=self.tools, profiles=self.profiles
        )

        template_dir = registry_root / "templates"
        self.template_dir = template_dir if template_dir.is_dir() else packaged_template_dir()
        self.construction = ConstructionConfig.at(registry_root, template_dir=self.template_dir)

        self.provider = provider if provider is not None else load_provider(config.provider)
        self.synthesis = SynthesisConfig(max_retries=config.max_retries)

        self.aggregator = EventAggregator(ring_size=config.ring_size)
        self.sessions = SessionTable()
        self.stopping = threading.Event()
        self._workspaces_root = run_root / "workspaces"
        self._instance_by_profile: dict[str, str] = {}
        self._pumps: dict[str, EventPump] = {}
        self._profile_locks: defaultdict[str, threading.Lock] = defaultdict(threading.Lock)
        self._lock = threading.Lock()

        provider_file = run_root / "provider.json"
        provider_file.write_text(json.dumps(config.provider, indent=2) + "\n", encoding="utf-8")
        self.supervisor = Supervisor(
            config.supervisor, launcher=HostLauncher(provider_config=provider_file)
        )
        self.supervisor.on_lifecycle(self._on_lifecycle)

    # -- lifecycle ---------------------------------------------------------

    def start(self) -> None:
        self.supervisor.start()

    def stop(self) -> None:
        self.stopping.set()
        self.supervisor.stop()
        self.supervisor.shutdown_all(mode="forced")
        for pump in list(self._pumps.values()):
            pump.stop_event.set()

    def _on_lifecycle(self, instance: AgentInstance, event: str) -> None:
        self.aggregator.publish(
            instance.profile_id or instance.instance_id,
            f"instance-{event}",
            json.dumps({"instance_id": instance.instance_id, "port": instance.port}),
        )
        if event in ("spawned", "restarted"):
            self._start_pump(instance)
        elif not instance.live:
            self._stop_pump(instance.instance_id)
            with self._lock:
                if self._instance_by_profile.get(instance.profile_id) == instance.instance_id:
                    del self._instance_by_profile[instance.profile_id]

    def _start_pump(self, instance: AgentInstance) -> None:
        self._stop_pump(instance.instance_id)
        pump = EventPump(self, instance)
        self._pumps[instance.instance_id] = pump
        pump.start()

    def _stop_pump(self, instance_id: str) -> None:
        pump = self._pumps.pop(instance_id, None)
        if pump is not None:
            pump.stop_event.set()

    # -- agents ------------------------------------------------------------

    def create_agent(self, body: dict[str, Any]) -> dict[str, Any]:
        """Register an agent from a one-sentence description or a full
        profile document; runs generation and enrichment as needed."""
        sentence = body.get("sentence")
        try:
            if sentence is not None:
                if not str(sentence).strip():
                    raise ApiError(400, "empty-sentence", "sentence must be non-empty")
                profile = generate_profile(str(sentence), self.provider, self.synthesis)
            elif "name" in body:
                profile = parse_profile(json.dumps(body))
            else:
                raise ApiError(
                    400,
                    "invalid-request",
                    'body must carry "sentence" or a full profile document',
                )
        except ProfileError as exc:
            raise ApiError(400, exc.code, str(exc)) from exc
        except SynthesisError as exc:
            raise ApiError(
                502, exc.code, str(exc), [f.render() for f in exc.findings]
            ) from exc

        matched_before = set(self.library.ids())
        if not profile.skills:
            try:
                profile, _ = enrich_profile(profile, self.library, self.provider, self.synthesis)
            except SynthesisError as exc:
                raise ApiError(
                    502, exc.code, str(exc), [f.render() for f in exc.findings]
                ) from exc
        generated = [s for s in profile.skills if s not in matched_before]
        matched = [s for s in profile.skills if s in matched_before]

        report = validate_profile(profile, self.registries.view())
        if not report.ok:
            raise ApiError(
                400,
                "invalid-profile",
                "profile failed validation",
                [f.render() for f in report.errors],
            )
        try:
            construct(profile, self.registries, self.construction)
        except ConstructionError as exc:
            raise ApiError(400, exc.code, str(exc)) from exc

        agent_id = self.profiles.add(profile)
        return {
            "id": agent_id,
            "profile": json.loads(self._profile_json(profile)),
            "skills": {"matched": matched, "generated": generated},
            "warnings": [f.render() for f in report.warnings],
        }

    @staticmethod
    def _profile_json(profile: AgentProfile) -> str:
        from agentmill.profiles import serialize_profile

        return serialize_profile(profile)

    def _agent_card(self, agent_id: str, profile: AgentProfile) -> dict[str, Any]:
        subject, level = self._subject_level(profile)
        card: dict[str, Any] = {
            "id": agent_id,
            "name": profile.name,
            "description": profile.description,
            "subject": subject,
            "level": level,
            "skills": list(profile.skills),
        }
        try:
            doc = parse_details(profile.details)
            metrics = measure(profile, doc)
            card["metrics"] = metrics.as_dict()
            card["bands"] = classify(metrics).as_dict()
        except ProfileError:
            card["metrics"] = None
            card["bands"] = None
        return card

    def _subject_level(self, profile: AgentProfile) -> tuple[str, str]:
        """Derive an agent's subject/level from its bound skill modules."""
        subjects = Counter()
        levels = Counter()
        for skill_id in profile.skills:
            if skill_id in self.library:
                module = self.library.resolve(skill_id)
                if module.subject != "other":
                    subjects[module.subject] += 1
                if module.level != "unspecified":
                    levels[module.level] += 1
        subject = subjects.most_common(1)[0][0] if subjects else "other"
        level = levels.most_common(1)[0][0] if levels else "unspecified"
        return subject, level

    def list_agents(self, subject: str | None = None, level: str | None = None) -> list[dict]:
        cards = [self._agent_card(id, self.profiles.get(id)) for id in self.profiles.ids()]
        if subject:
            cards = [c for c in cards if c["subject"].lower() == subject.lower()]
        if level:
            cards = [c for c in cards if c["level"].lower() == level.lower()]
        return cards

    def get_agent(self, agent_id: str) -> dict[str, Any]:
        try:
            profile = self.profiles.get(agent_id)
        except AgentMillError as exc:
            raise ApiError(404, "unknown-agent", str(exc)) from exc
        card = self._agent_card(agent_id, profile)
        card["profile"] = json.loads(self._profile_json(profile))
        try:
            plan = construct(profile, self.registries, self.construction)
            doc = parse_details(profile.details)
            metrics = measure(profile, doc, plan_depth=plan.depth())
            card["metrics"] = metrics.as_dict()
            card["bands"] = classify(metrics).as_dict()
            card["score"] = aggregate_score(metrics)
            card["plan_digest"] = plan.digest()
        except (ConstructionError, ProfileError):
            pass
        with self._lock:
            instance_id = self._instance_by_profile.get(agent_id)
        instance = self.supervisor.get(instance_id) if instance_id else None
        card["instance"] = instance.as_dict() if instance else None
        return card

    def delete_agent(self, agent_id: str) -> None:
        try:
            self.profiles.remove(agent_id)
        except AgentMillError as exc:
            raise ApiError(404, "unknown-agent", str(exc)) from exc
        with self._lock:
            instance_id = self._instance_by_profile.get(agent_id)
        if instance_id:
            instance = self.supervisor.get(instance_id)
            if instance is not None and instance.live:
                self.supervisor.shutdown(instance, "graceful")
        self.sessions.drop_agent(agent_id)

    # -- sessions and chat ---------------------------------------------------

    def _ensure_workspace(self, profile: AgentProfile, agent_id: str):
        plan = construct(profile, self.registries, self.construction)
        target = self._workspaces_root / agent_id / plan.digest()[:12]
        if (target / "manifest.json").exists():
            return target  # already materialized for this exact plan
        if target.exists():
            import shutil

            shutil.rmtree(target)  # leftover from an interrupted run
        materialize(plan, target, self.template_dir)
        return target

    def create_session(self, agent_id: str) -> Session:
        """Bind a new session to a healthy instance, spawning on demand."""
        try:
            profile = self.profiles.get(agent_id)
        except AgentMillError as exc:
            raise ApiError(404, "unknown-agent", str(exc)) from exc

        with self._profile_locks[agent_id]:
            instance = None
            if not self.config.instance_per_session:
                with self._lock:
                    instance_id = self._instance_by_profile.get(agent_id)
                if instance_id:
                    candidate = self.supervisor.get(instance_id)
                    if candidate is not None and candidate.state is InstanceState.HEALTHY:
                        instance = candidate
            if instance is None:
                try:
                    workspace = self._ensure_workspace(profile, agent_id)
                except (ConstructionError, ProfileError) as exc:
                    raise ApiError(
                        400, "construction-failed", f"cannot construct agent: {exc}"
                    ) from exc
                try:
                    instance = self.supervisor.spawn(
                        workspace, profile_id=agent_id, agent_name=profile.name
                    )
                except (SpawnError, PortUnavailable) as exc:
                    raise ApiError(503, "spawn-failed", str(exc)) from exc
                if not self.config.instance_per_session:
                    with self._lock:
                        self._instance_by_profile[agent_id] = instance.instance_id

        self.supervisor.touch(instance.instance_id)
        return self.sessions.create(agent_id, instance.instance_id)

    def chat(self, session_id: str, message: str) -> tuple[Session, Iterator[bytes]]:
        """Relay a chat turn to the session's instance, streaming frames."""
        session = self.sessions.get(session_id)
        if session is None:
            raise ApiError(404, "unknown-session", f"session {session_id!r} not found")
        if not message.strip():
            raise ApiError(400, "empty-message", "message must be non-empty")
        instance = self.supervisor.get(session.instance_id)
        if instance is None or instance.state is not InstanceState.HEALTHY:
            state = instance.state.value if instance else "gone"
            raise ApiError(
                503,
                "instance-unavailable",
                f"agent instance for this session is {state}; create a new session",
            )
        self.sessions.touch(session_id)
        self.supervisor.touch(instance.instance_id)
        port = instance.port

        def relay() -> Iterator[bytes]:
            with httpx.stream(
                "POST",
                f"http://127.0.0.1:{port}/chat",
                json={"session": session_id, "message": message},
                timeout=httpx.Timeout(10.0, read=60.0),
            ) as response:
                for chunk in response.iter_bytes():
                    yield chunk

        return session, relay()

    # -- skills and stats ----------------------------------------------------

    def list_skills(self) -> list[dict]:
        return [
            {"id": m.id, "name": m.name, "subject": m.subject, "level": m.level}
            for m in self.library.modules()
        ]

    def get_skill(self, skill_id: str) -> dict:
        try:
            module = self.library.resolve(skill_id)
        except AgentMillError as exc:
            raise ApiError(404, "unknown-skill", str(exc)) from exc
        return {
            "id": module.id,
            "name": module.name,
            "subject": module.subject,
            "level": module.level,
            "applicable_scenarios": module.applicable_scenarios,
            "pedagogical_dimensions": module.pedagogical_dimensions,
            "guiding_principles": module.guiding_principles,
            "output_templates": module.output_templates,
        }

    def stats(self) -> dict:
        return self.library.stats().as_dict()

    # -- events ----------------------------------------------------------------

    def events(self, last_event_id: str | None) -> Iterator[str]:
        return sse_stream(self.aggregator, last_event_id, self.config.keepalive, self.stopping)
