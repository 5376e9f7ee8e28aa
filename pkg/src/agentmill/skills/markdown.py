"""SKILL.md parsing and rendering.

The format is UTF-8 Markdown with an optional ``---``-delimited front matter
block of ``key: value`` lines (name, subject, level) followed by four ``##``
sections: Applicable Scenarios, Pedagogical Dimensions, Guiding Principles,
Output Templates.
"""

from __future__ import annotations

from agentmill.skills.model import (
    SKILL_SECTIONS,
    SkillError,
    SkillModule,
    coerce_level,
    coerce_subject,
)

_HEADINGS = {title.lower(): key for key, title in SKILL_SECTIONS.items()}


class SkillParseError(SkillError):
    code = "skill-parse-error"


class MissingSection(SkillParseError):
    code = "missing-skill-section"

    def __init__(self, name: str) -> None:
        super().__init__(f"required section {name!r} is missing")
        self.name = name


class MalformedFrontMatter(SkillParseError):
    code = "malformed-front-matter"


def _split_front_matter(text: str) -> tuple[dict[str, str], list[str]]:
    lines = text.splitlines()
    if not lines or lines[0].strip() != "---":
        return {}, lines
    meta: dict[str, str] = {}
    for index, line in enumerate(lines[1:], start=1):
        if line.strip() == "---":
            return meta, lines[index + 1 :]
        if not line.strip():
            continue
        key, sep, value = line.partition(":")
        if not sep or not key.strip():
            raise MalformedFrontMatter(f"expected 'key: value', got {line!r}")
        meta[key.strip().lower()] = value.strip()
    raise MalformedFrontMatter("front matter block is not terminated by '---'")


def parse_skill(document: str, id: str) -> SkillModule:
    """Parse a SKILL.md document, binding it to the given identifier.

    Subject and level default to other/unspecified when absent from the
    front matter. Raises MissingSection or MalformedFrontMatter.
    """
    meta, lines = _split_front_matter(document)

    sections: dict[str, list[str]] = {}
    current: list[str] | None = None
    for line in lines:
        stripped = line.strip()
        if stripped.startswith("## "):
            key = _HEADINGS.get(stripped[3:].strip().rstrip(":").lower())
            current = sections.setdefault(key, []) if key else None
            continue
        if current is not None:
            current.append(line)
    for key, title in SKILL_SECTIONS.items():
        if key not in sections:
            raise MissingSection(title)

    body = {key: "\n".join(lines).strip() for key, lines in sections.items()}
    return SkillModule(
        id=id,
        name=meta.get("name", id),
        subject=coerce_subject(meta.get("subject", "")),
        level=coerce_level(meta.get("level", "")),
        **body,
    )


def render_skill(module: SkillModule) -> str:
    """Render a module to canonical SKILL.md text (the stored byte form)."""
    parts = [
        "---",
        f"name: {module.name}",
        f"subject: {module.subject}",
        f"level: {module.level}",
        "---",
        "",
    ]
    for key, title in SKILL_SECTIONS.items():
        parts += [f"## {title}", ""]
        content = getattr(module, key)
        if content:
            parts += [content, ""]
    return "\n".join(parts).strip() + "\n"
