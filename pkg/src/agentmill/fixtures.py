"""Deterministic demo fixtures: a seeded skill corpus and sample profiles.

The production corpus behind the platform is not published, so demos and
tests use generated stand-ins: a skill library following a fixed
subject-by-level distribution, and a mathematics-tutor profile whose details
carry a five-dimension focus table.
"""

from __future__ import annotations

from pathlib import Path

from agentmill.profiles.model import AgentProfile
from agentmill.skills.library import SkillLibrary
from agentmill.skills.model import SkillModule, normalize_identifier

#: Demo corpus size per (subject, (primary, middle, high)).
DEMO_DISTRIBUTION: dict[str, tuple[int, int, int]] = {
    "Mathematics": (45, 68, 52),
    "Chinese Language": (38, 42, 35),
    "English": (32, 45, 48),
    "Physics": (12, 28, 41),
    "Chemistry": (0, 18, 35),
    "Biology": (15, 22, 38),
    "History": (18, 25, 30),
    "Geography": (14, 20, 28),
    "Physical Education": (22, 18, 12),
}

_LEVELS = ("primary", "middle", "high")


def demo_skill(subject: str, level: str, index: int) -> SkillModule:
    """Build one deterministic placeholder skill for the demo corpus."""
    slug = normalize_identifier(f"{subject} {level} skill {index:03d}")
    return SkillModule(
        id=slug,
        name=f"{subject} {level.title()} Skill {index:03d}",
        subject=subject,
        level=level,
        applicable_scenarios=f"Practice sessions for {level} school {subject.lower()}.",
        pedagogical_dimensions="Concept grounding, guided practice, reflection.",
        guiding_principles="Ask before telling; check understanding at each step.",
        output_templates="1. Restate the task\n2. Work one step\n3. Ask a check-in question",
    )


def build_demo_library(root: Path | None = None) -> SkillLibrary:
    """Generate the full demo corpus (801 modules) into a library."""
    library = SkillLibrary(root=root)
    if root is not None:
        Path(root).mkdir(parents=True, exist_ok=True)
    for subject, counts in DEMO_DISTRIBUTION.items():
        for level, count in zip(_LEVELS, counts):
            for index in range(count):
                library.add(demo_skill(subject, level, index))
    return library


MATH_TUTOR_DETAILS = """\
## Role Definition

As a high school mathematics tutoring assistant, use a Socratic, exploratory
approach to help students reason through problems on their own. Focus on
building durable problem-solving habits rather than handing over answers.

## Core Dimensions

| Dimension | Focus Points |
| --- | --- |
| Divergent Thinking | Path diversity, cross-domain associations |
| Logical Rigor | Reasoning completeness, counterexample construction |
| Math Expression | Symbolic normativity, geometry-algebra translation |
| Inquiry Depth | Problem variation, essential pattern extraction |
| Metacognition | Strategy evaluation, obstacle diagnosis |

## Standards

- National high school mathematics curriculum standards
- Assessment rubrics for multi-step reasoning
- Scaffolded support within the learner's reach

## Output Format

1. Problem Deconstruction: Context analysis and condition mapping
2. Thinking Activation: Multi-directional heuristic prompts
3. Path Exploration: Process accompaniment with obstacle diagnosis
4. Solution Comparison: Structured comparison of multiple approaches
5. Variation Extension: Progressive problem chain design
6. Inquiry Log: Metacognitive reflection prompts
"""


def math_tutor_profile(**overrides) -> AgentProfile:
    """A complete, valid sample profile for a mathematics tutor."""
    fields = {
        "name": "high-school-math-tutor",
        "description": "A high school mathematics tutoring assistant.",
        "details": MATH_TUTOR_DETAILS,
        "agent_template": "default",
        "skills": (),
        "tools": (),
        "subagents": (),
    }
    fields.update(overrides)
    return AgentProfile(**fields)
