"""Recursive plan construction: profile resolution, capability binding, and
subagent recursion with memoized deduplication.

Construction is pure: it touches no filesystem and resolves everything it
needs up front, so a returned plan has no dangling references. Each distinct
profile id becomes exactly one node even when several parents reference it;
reference cycles are a hard error carrying the offending path.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from agentmill.errors import AgentMillError
from agentmill.profiles.codec import serialize_profile
from agentmill.profiles.details import parse_details
from agentmill.profiles.model import AgentProfile, DetailsDocument
from agentmill.skills.library import NotFound
from agentmill.skills.model import SkillModule
from agentmill.construct.registry import (
    Registries,
    ToolBinding,
    UnknownProfile,
    UnknownTool,
    profile_id,
)


class ConstructionError(AgentMillError):
    code = "construction-error"


class UnresolvedSkill(ConstructionError):
    code = "unresolved-skill"

    def __init__(self, id: str) -> None:
        super().__init__(f"skill {id!r} cannot be resolved")
        self.id = id


class UnresolvedTool(ConstructionError):
    code = "unresolved-tool"

    def __init__(self, id: str) -> None:
        super().__init__(f"tool {id!r} cannot be resolved")
        self.id = id


class UnresolvedSubagent(ConstructionError):
    code = "unresolved-subagent"

    def __init__(self, id: str) -> None:
        super().__init__(f"subagent profile {id!r} cannot be resolved")
        self.id = id


class CycleDetected(ConstructionError):
    code = "cycle-detected"

    def __init__(self, path: list[str]) -> None:
        super().__init__("subagent reference cycle: " + " -> ".join(path))
        self.path = path


class DepthExceeded(ConstructionError):
    code = "depth-exceeded"

    def __init__(self, limit: int) -> None:
        super().__init__(f"subagent nesting exceeds the maximum depth of {limit}")
        self.limit = limit


@dataclass(frozen=True)
class ConstructionConfig:
    max_depth: int = 8
    skills_root: Path | None = None
    tools_file: Path | None = None
    profiles_root: Path | None = None
    template_dir: Path | None = None

    def __post_init__(self) -> None:
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")

    @classmethod
    def at(cls, registry_root: Path, **overrides) -> ConstructionConfig:
        """Conventional layout under one registry root directory."""
        root = Path(registry_root)
        settings = {
            "skills_root": root / "skills",
            "tools_file": root / "tools.json",
            "profiles_root": root / "profiles",
            "template_dir": root / "templates",
        }
        settings.update(overrides)
        return cls(**settings)


@dataclass(frozen=True)
class PlanNode:
    profile_id: str
    profile: AgentProfile
    details: DetailsDocument
    skills: tuple[SkillModule, ...]
    tools: tuple[ToolBinding, ...]
    children: tuple[str, ...]


@dataclass(frozen=True)
class AgentBuildPlan:
    """Resolved construction DAG; ``nodes`` is keyed by profile id."""

    root_id: str
    nodes: Mapping[str, PlanNode] = field(default_factory=dict)

    @property
    def root(self) -> PlanNode:
        return self.nodes[self.root_id]

    def edges(self) -> frozenset[tuple[str, str]]:
        return frozenset(
            (node.profile_id, child) for node in self.nodes.values() for child in node.children
        )

    def depth(self) -> int:
        """Longest root-to-leaf path, counted in nodes."""
        memo: dict[str, int] = {}

        def longest(id: str) -> int:
            if id not in memo:
                node = self.nodes[id]
                memo[id] = 1 + max((longest(child) for child in node.children), default=0)
            return memo[id]

        return longest(self.root_id)

    def digest(self) -> str:
        """Stable content hash over the full resolved structure."""
        payload = {
            "root": self.root_id,
            "nodes": {
                id: {
                    "profile": serialize_profile(node.profile),
                    "skills": [skill.id for skill in node.skills],
                    "tools": [tool.id for tool in node.tools],
                    "children": list(node.children),
                }
                for id, node in sorted(self.nodes.items())
            },
        }
        encoded = json.dumps(payload, sort_keys=True, ensure_ascii=False).encode("utf-8")
        return hashlib.sha256(encoded).hexdigest()


def construct(
    profile: AgentProfile, registries: Registries, config: ConstructionConfig | None = None
) -> AgentBuildPlan:
    """Resolve a profile into a deduplicated build plan.

    The caller is expected to have validated the root profile. Raises
    UnresolvedSkill, UnresolvedTool, UnresolvedSubagent, CycleDetected, or
    DepthExceeded.
    """
    config = config or ConstructionConfig()
    nodes: dict[str, PlanNode] = {}
    path: list[str] = []

    def build(current: AgentProfile, depth: int) -> str:
        id = profile_id(current)
        if id in path:
            raise CycleDetected(path[path.index(id) :] + [id])
        if depth > config.max_depth:
            raise DepthExceeded(config.max_depth)
        if id in nodes:
            return id

        path.append(id)
        try:
            details = parse_details(current.details)
            skills = []
            for skill_id in current.skills:
                try:
                    skills.append(registries.skills.resolve(skill_id))
                except NotFound as exc:
                    raise UnresolvedSkill(skill_id) from exc
            tools = []
            for tool_id in current.tools:
                try:
                    tools.append(registries.tools.get(tool_id))
                except UnknownTool as exc:
                    raise UnresolvedTool(tool_id) from exc
            children = []
            for subagent_id in current.subagents:
                try:
                    child = registries.profiles.get(subagent_id)
                except UnknownProfile as exc:
                    raise UnresolvedSubagent(subagent_id) from exc
                children.append(build(child, depth + 1))
        finally:
            path.pop()

        nodes[id] = PlanNode(
            profile_id=id,
            profile=current,
            details=details,
            skills=tuple(skills),
            tools=tuple(tools),
            children=tuple(children),
        )
        return id

    root_id = build(profile, 1)
    return AgentBuildPlan(root_id=root_id, nodes=nodes)
