"""Profile and tool registries backing construction.

Profiles live as one canonical JSON document per id under a directory; the
tool registry is a single ``tools.json`` listing bindings. Both support a
purely in-memory mode for tests.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from agentmill.errors import AgentMillError
from agentmill.profiles.codec import parse_profile, serialize_profile
from agentmill.profiles.model import AgentProfile
from agentmill.profiles.validate import RegistryView
from agentmill.skills.library import SkillLibrary
from agentmill.skills.model import normalize_identifier

TOOL_KINDS = ("http-endpoint", "local-command", "builtin")


class RegistryError(AgentMillError):
    code = "registry-error"


class UnknownProfile(RegistryError):
    code = "unknown-profile"

    def __init__(self, id: str) -> None:
        super().__init__(f"profile {id!r} not found in registry")
        self.id = id


class UnknownTool(RegistryError):
    code = "unknown-tool"

    def __init__(self, id: str) -> None:
        super().__init__(f"tool {id!r} not found in registry")
        self.id = id


@dataclass(frozen=True)
class ToolBinding:
    """A callable integration: how to reach it and what it does."""

    id: str
    kind: str
    descriptor: Mapping[str, Any] = field(default_factory=dict)
    description: str = ""

    def __post_init__(self) -> None:
        if self.kind not in TOOL_KINDS:
            raise RegistryError(f"unknown tool kind {self.kind!r}")

    def as_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "kind": self.kind,
            "descriptor": dict(self.descriptor),
            "description": self.description,
        }


def profile_id(profile: AgentProfile) -> str:
    """Registry identifier for a profile: its normalized name."""
    return normalize_identifier(profile.name)


class ProfileRegistry:
    """Id-indexed profile store, optionally persisted one file per profile."""

    def __init__(self, root: Path | None = None) -> None:
        self._root = Path(root) if root is not None else None
        self._profiles: dict[str, AgentProfile] = {}

    @classmethod
    def open(cls, root: Path) -> ProfileRegistry:
        registry = cls(root=root)
        root = Path(root)
        if root.is_dir():
            for profile_file in sorted(root.glob("*.json")):
                profile = parse_profile(profile_file.read_text(encoding="utf-8"))
                registry._profiles[profile_id(profile)] = profile
        return registry

    def __len__(self) -> int:
        return len(self._profiles)

    def __contains__(self, id: str) -> bool:
        return id in self._profiles

    def ids(self) -> tuple[str, ...]:
        return tuple(sorted(self._profiles))

    def get(self, id: str) -> AgentProfile:
        profile = self._profiles.get(id)
        if profile is None:
            raise UnknownProfile(id)
        return profile

    def add(self, profile: AgentProfile) -> str:
        id = profile_id(profile)
        self._profiles[id] = profile
        if self._root is not None:
            self._root.mkdir(parents=True, exist_ok=True)
            (self._root / f"{id}.json").write_text(serialize_profile(profile), encoding="utf-8")
        return id

    def remove(self, id: str) -> None:
        if id not in self._profiles:
            raise UnknownProfile(id)
        del self._profiles[id]
        if self._root is not None:
            (self._root / f"{id}.json").unlink(missing_ok=True)


class ToolRegistry:
    """Tool bindings, loadable from a ``tools.json`` descriptor list."""

    def __init__(self, bindings: list[ToolBinding] | None = None) -> None:
        self._tools: dict[str, ToolBinding] = {}
        for binding in bindings or []:
            if binding.id in self._tools:
                raise RegistryError(f"duplicate tool id {binding.id!r}")
            self._tools[binding.id] = binding

    @classmethod
    def open(cls, file: Path) -> ToolRegistry:
        file = Path(file)
        if not file.exists():
            return cls()
        entries = json.loads(file.read_text(encoding="utf-8"))
        return cls(
            [
                ToolBinding(
                    id=entry["id"],
                    kind=entry["kind"],
                    descriptor=entry.get("descriptor", {}),
                    description=entry.get("description", ""),
                )
                for entry in entries
            ]
        )

    def __len__(self) -> int:
        return len(self._tools)

    def __contains__(self, id: str) -> bool:
        return id in self._tools

    def ids(self) -> tuple[str, ...]:
        return tuple(sorted(self._tools))

    def get(self, id: str) -> ToolBinding:
        binding = self._tools.get(id)
        if binding is None:
            raise UnknownTool(id)
        return binding

    def add(self, binding: ToolBinding) -> None:
        self._tools[binding.id] = binding


@dataclass
class Registries:
    """The three lookup surfaces construction draws from."""

    skills: SkillLibrary
    tools: ToolRegistry
    profiles: ProfileRegistry

    def view(self) -> RegistryView:
        return RegistryView(
            skills=frozenset(self.skills.ids()),
            tools=frozenset(self.tools.ids()),
            profiles=frozenset(self.profiles.ids()),
        )
