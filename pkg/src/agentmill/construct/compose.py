"""Composition of the behavioral specification written to AGENTS.md."""

from __future__ import annotations

from agentmill.profiles.details import render_details
from agentmill.profiles.model import DetailsDocument
from agentmill.skills.model import SkillModule


def compose_behavior_spec(doc: DetailsDocument, skills: list[SkillModule]) -> str:
    """Compose the agent's behavior document: the four details sections in
    fixed order, then a manifest of the bound skills.

    Byte-identical output for identical input.
    """
    parts = [render_details(doc).rstrip("\n"), "", "## Skills", ""]
    if not skills:
        parts.append("No skill modules bound.")
    for skill in skills:
        parts += [f"### {skill.name} (`{skill.id}`)", ""]
        if skill.applicable_scenarios:
            parts += [skill.applicable_scenarios, ""]
    return "\n".join(parts).rstrip("\n") + "\n"
