"""Small shared builders for skill modules used across test modules."""

from __future__ import annotations

from agentmill.skills import SkillModule


def demo_modules(ids: tuple[str, ...]) -> tuple[SkillModule, ...]:
    return tuple(
        SkillModule(
            id=id,
            name=id.replace("-", " ").title(),
            applicable_scenarios=f"Scenario notes for {id}.",
            pedagogical_dimensions="Concept grounding.",
            guiding_principles="Ask first.",
            output_templates="1. Step",
        )
        for id in ids
    )
