"""Reusable skill modules: SKILL.md codec and the append-only library."""

from agentmill.skills.library import ConflictingContent, NotFound, SkillLibrary
from agentmill.skills.markdown import (
    MalformedFrontMatter,
    MissingSection,
    SkillParseError,
    parse_skill,
    render_skill,
)
from agentmill.skills.model import (
    LEVELS,
    SUBJECTS,
    LibraryStats,
    SkillError,
    SkillModule,
    normalize_identifier,
)

__all__ = [
    "LEVELS",
    "SUBJECTS",
    "ConflictingContent",
    "LibraryStats",
    "MalformedFrontMatter",
    "MissingSection",
    "NotFound",
    "SkillError",
    "SkillLibrary",
    "SkillModule",
    "SkillParseError",
    "normalize_identifier",
    "parse_skill",
    "render_skill",
]
