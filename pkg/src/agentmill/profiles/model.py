"""Domain types for agent profiles and their structured details payload."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Mapping

from agentmill.errors import AgentMillError, Finding

#: Canonical key order of the profile interchange document.
PROFILE_FIELDS = (
    "name",
    "description",
    "details",
    "agent_template",
    "skills",
    "tools",
    "subagents",
)

LIST_FIELDS = ("skills", "tools", "subagents")


class ProfileError(AgentMillError):
    code = "profile-error"


class EmptyName(ProfileError):
    code = "empty-name"

    def __init__(self) -> None:
        super().__init__("profile name is empty after trimming whitespace")


class DuplicateIdentifier(ProfileError):
    code = "duplicate-identifier"

    def __init__(self, list_name: str, identifier: str) -> None:
        super().__init__(f"duplicate identifier {identifier!r} in {list_name!r}")
        self.list_name = list_name
        self.identifier = identifier


def _check_unique(list_name: str, values: tuple[str, ...]) -> None:
    seen: set[str] = set()
    for value in values:
        if value in seen:
            raise DuplicateIdentifier(list_name, value)
        seen.add(value)


@dataclass(frozen=True)
class AgentProfile:
    """Declarative agent specification with the seven interchange fields.

    ``extras`` holds unknown top-level keys preserved verbatim so that
    documents written by newer schema versions survive a round trip.
    """

    name: str
    description: str = ""
    details: str = ""
    agent_template: str = ""
    skills: tuple[str, ...] = ()
    tools: tuple[str, ...] = ()
    subagents: tuple[str, ...] = ()
    extras: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.name.strip():
            raise EmptyName()
        for list_name in LIST_FIELDS:
            _check_unique(list_name, getattr(self, list_name))

    def with_skills(self, skills: tuple[str, ...]) -> AgentProfile:
        return replace(self, skills=skills)


@dataclass(frozen=True)
class Dimension:
    """A pedagogical focus area: a name plus its focus points."""

    name: str
    focus_points: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.name.strip():
            raise ValueError("dimension name must be non-empty")


@dataclass(frozen=True)
class Stage:
    """One step of the structured output format, 1-based and contiguous."""

    ordinal: int
    title: str
    description: str = ""


@dataclass(frozen=True)
class DetailsDocument:
    """Parsed four-section behavioral specification.

    Sections may be empty; every empty section carries a warning finding.
    """

    role_definition: str = ""
    core_dimensions: tuple[Dimension, ...] = ()
    standards: tuple[str, ...] = ()
    output_format: tuple[Stage, ...] = ()
    warnings: tuple[Finding, ...] = ()

    def content_equal(self, other: DetailsDocument) -> bool:
        """Structural equality ignoring warnings and surrounding whitespace."""
        return (
            " ".join(self.role_definition.split()) == " ".join(other.role_definition.split())
            and self.core_dimensions == other.core_dimensions
            and self.standards == other.standards
            and self.output_format == other.output_format
        )


@dataclass(frozen=True)
class ValidationReport:
    """Coded errors and warnings for one profile; errors block construction."""

    errors: tuple[Finding, ...] = ()
    warnings: tuple[Finding, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.errors

    def render(self) -> str:
        lines = [f"error   {f.render()}" for f in self.errors]
        lines += [f"warning {f.render()}" for f in self.warnings]
        return "\n".join(lines) if lines else "ok"
