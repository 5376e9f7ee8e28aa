"""Profile validation against a view of known registry identifiers."""

from __future__ import annotations

from dataclasses import dataclass

from agentmill.errors import Finding
from agentmill.profiles.details import DetailsError, parse_details
from agentmill.profiles.model import AgentProfile, ValidationReport


@dataclass(frozen=True)
class RegistryView:
    """Identifier sets a profile may reference; used purely for lookups."""

    skills: frozenset[str] = frozenset()
    tools: frozenset[str] = frozenset()
    profiles: frozenset[str] = frozenset()


def validate_profile(profile: AgentProfile, view: RegistryView) -> ValidationReport:
    """Check a profile against known identifiers and its details grammar.

    Unresolved subagents and details parse failures are errors (they cannot
    be repaired later); unresolved skills and tools are warnings because the
    enrichment stage may still generate them. Unknown preserved keys warn.
    """
    errors: list[Finding] = []
    warnings: list[Finding] = []

    try:
        doc = parse_details(profile.details)
    except DetailsError as exc:
        errors.append(exc.finding("details"))
    else:
        warnings.extend(doc.warnings)

    for skill_id in profile.skills:
        if skill_id not in view.skills:
            warnings.append(
                Finding("unresolved-skill", f"skills.{skill_id}", "skill not found in library")
            )
    for tool_id in profile.tools:
        if tool_id not in view.tools:
            warnings.append(
                Finding("unresolved-tool", f"tools.{tool_id}", "tool not found in registry")
            )
    for agent_id in profile.subagents:
        if agent_id not in view.profiles:
            errors.append(
                Finding(
                    "unresolved-subagent",
                    f"subagents.{agent_id}",
                    "subagent profile not found in registry",
                )
            )
    for key in profile.extras:
        warnings.append(Finding("unknown-key", key, "unknown top-level key preserved"))

    return ValidationReport(errors=tuple(errors), warnings=tuple(warnings))
