"""Domain types for reusable skill modules and library statistics."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from agentmill.errors import AgentMillError

#: Subject tags a skill may carry; anything else maps to "other".
SUBJECTS = (
    "Mathematics",
    "Chinese Language",
    "English",
    "Physics",
    "Chemistry",
    "Biology",
    "History",
    "Geography",
    "Physical Education",
    "other",
)

LEVELS = ("primary", "middle", "high", "unspecified")

#: Section key -> display heading in SKILL.md order.
SKILL_SECTIONS = {
    "applicable_scenarios": "Applicable Scenarios",
    "pedagogical_dimensions": "Pedagogical Dimensions",
    "guiding_principles": "Guiding Principles",
    "output_templates": "Output Templates",
}

_ID_RE = re.compile(r"^[a-z0-9]+(?:-[a-z0-9]+)*$")


class SkillError(AgentMillError):
    code = "skill-error"


def normalize_identifier(text: str) -> str:
    """Lowercase, spaces to hyphens, strip everything non-alphanumeric."""
    slug = re.sub(r"[^a-z0-9]+", "-", text.strip().lower())
    return slug.strip("-")


def is_valid_identifier(identifier: str) -> bool:
    return bool(_ID_RE.match(identifier))


def coerce_subject(value: str) -> str:
    for subject in SUBJECTS:
        if subject.lower() == value.strip().lower():
            return subject
    return "other"


def coerce_level(value: str) -> str:
    lowered = value.strip().lower()
    return lowered if lowered in LEVELS else "unspecified"


@dataclass(frozen=True)
class SkillModule:
    """One reusable knowledge unit in the SKILL.md format."""

    id: str
    name: str
    subject: str = "other"
    level: str = "unspecified"
    applicable_scenarios: str = ""
    pedagogical_dimensions: str = ""
    guiding_principles: str = ""
    output_templates: str = ""

    def __post_init__(self) -> None:
        if not is_valid_identifier(self.id):
            raise SkillError(f"invalid skill identifier {self.id!r}")
        if self.subject not in SUBJECTS:
            raise SkillError(f"unknown subject {self.subject!r}")
        if self.level not in LEVELS:
            raise SkillError(f"unknown level {self.level!r}")


@dataclass(frozen=True)
class LibraryStats:
    """Per-(subject, level) module counts with consistent totals."""

    counts: dict[tuple[str, str], int] = field(default_factory=dict)

    def level_total(self, level: str) -> int:
        return sum(n for (_, lvl), n in self.counts.items() if lvl == level)

    def subject_total(self, subject: str) -> int:
        return sum(n for (subj, _), n in self.counts.items() if subj == subject)

    @property
    def grand_total(self) -> int:
        return sum(self.counts.values())

    def as_dict(self) -> dict:
        return {
            "cells": [
                {"subject": subject, "level": level, "count": count}
                for (subject, level), count in sorted(self.counts.items())
            ],
            "level_totals": {level: self.level_total(level) for level in LEVELS},
            "grand_total": self.grand_total,
        }
