"""Parser and renderer for the structured-Markdown details payload.

A details document has four ``##``-level sections matched case-insensitively
against a configurable alias table: a free-text role definition, a two-column
dimensions table (name | comma-separated focus points), a bulleted standards
list, and a numbered output-format list whose items become stages.
"""

from __future__ import annotations

import re

from agentmill.errors import Finding
from agentmill.profiles.model import (
    DetailsDocument,
    Dimension,
    ProfileError,
    Stage,
)

ROLE = "role_definition"
DIMENSIONS = "core_dimensions"
STANDARDS = "standards"
OUTPUT = "output_format"

SECTION_ORDER = (ROLE, DIMENSIONS, STANDARDS, OUTPUT)

SECTION_TITLES = {
    ROLE: "Role Definition",
    DIMENSIONS: "Core Dimensions",
    STANDARDS: "Standards",
    OUTPUT: "Output Format",
}

#: Lowercased heading text -> section key. Extend to localize headings.
DEFAULT_HEADING_ALIASES = {title.lower(): key for key, title in SECTION_TITLES.items()}

_HEADING_RE = re.compile(r"^##\s+(?P<title>.+?)\s*$")
_LIST_ITEM_RE = re.compile(r"^\s*(?:[-*+]|\d+[.)])\s+(?P<text>.*)$")
_TABLE_RULE_RE = re.compile(r"^:?-{3,}:?$")
_BOLD_RE = re.compile(r"\*\*(.+?)\*\*")


class DetailsError(ProfileError):
    code = "malformed-details"


class MissingSection(DetailsError):
    code = "missing-section"

    def __init__(self, name: str) -> None:
        super().__init__(f"required section {name!r} is missing")
        self.name = name


class DuplicateSection(DetailsError):
    code = "duplicate-section"

    def __init__(self, name: str) -> None:
        super().__init__(f"section {name!r} appears more than once")
        self.name = name


class MalformedDimensionRow(DetailsError):
    code = "malformed-dimension-row"

    def __init__(self, line: str, reason: str) -> None:
        super().__init__(f"bad dimension row {line!r}: {reason}")
        self.line = line


def _split_sections(
    text: str, aliases: dict[str, str]
) -> tuple[dict[str, list[str]], list[Finding]]:
    sections: dict[str, list[str]] = {}
    warnings: list[Finding] = []
    current: list[str] | None = None
    for line in text.splitlines():
        match = _HEADING_RE.match(line)
        if match:
            title = match.group("title").strip().rstrip(":")
            key = aliases.get(title.lower())
            if key is None:
                warnings.append(
                    Finding("unknown-section", title, "unrecognized section heading ignored")
                )
                current = None
                continue
            if key in sections:
                raise DuplicateSection(SECTION_TITLES[key])
            sections[key] = current = []
            continue
        if current is not None:
            current.append(line)
    for key in SECTION_ORDER:
        if key not in sections:
            raise MissingSection(SECTION_TITLES[key])
    return sections, warnings


def _table_cells(line: str) -> list[str]:
    cells = [cell.strip() for cell in line.strip().split("|")]
    # Leading/trailing pipes produce empty edge cells; drop them.
    if cells and cells[0] == "":
        cells = cells[1:]
    if cells and cells[-1] == "":
        cells = cells[:-1]
    return cells


def _parse_dimensions(lines: list[str]) -> tuple[Dimension, ...]:
    rows = [line for line in lines if line.strip().startswith("|")]
    dimensions: list[Dimension] = []
    seen: set[str] = set()
    header_skipped = False
    for line in rows:
        cells = _table_cells(line)
        if all(_TABLE_RULE_RE.match(cell) for cell in cells):
            continue
        if not header_skipped:
            header_skipped = True
            continue
        if len(cells) != 2:
            raise MalformedDimensionRow(line.strip(), "expected exactly two columns")
        name, points = cells
        if not name:
            raise MalformedDimensionRow(line.strip(), "dimension name is empty")
        if name in seen:
            raise MalformedDimensionRow(line.strip(), f"duplicate dimension name {name!r}")
        seen.add(name)
        focus = tuple(p.strip() for p in points.split(",") if p.strip())
        dimensions.append(Dimension(name=name, focus_points=focus))
    return tuple(dimensions)


def _parse_items(lines: list[str]) -> tuple[str, ...]:
    items: list[str] = []
    for line in lines:
        if not line.strip():
            continue
        match = _LIST_ITEM_RE.match(line)
        items.append(match.group("text").strip() if match else line.strip())
    return tuple(items)


def _parse_stages(lines: list[str]) -> tuple[Stage, ...]:
    stages: list[Stage] = []
    for line in lines:
        if not line.strip():
            continue
        match = _LIST_ITEM_RE.match(line)
        if match is None:
            # Continuation line: extend the previous stage description.
            if stages:
                prev = stages[-1]
                joined = f"{prev.description} {line.strip()}".strip()
                stages[-1] = Stage(prev.ordinal, prev.title, joined)
            continue
        text = _BOLD_RE.sub(r"\1", match.group("text")).strip()
        title, _, description = text.partition(":")
        stages.append(
            Stage(ordinal=len(stages) + 1, title=title.strip(), description=description.strip())
        )
    return tuple(stages)


def parse_details(
    text: str, *, heading_aliases: dict[str, str] | None = None
) -> DetailsDocument:
    """Parse a details Markdown document into its four sections.

    Stage ordinals are assigned by position so they are always contiguous
    from 1 regardless of the literal numbering in the source. Empty sections
    parse successfully and attach an ``empty-section`` warning.

    Raises MissingSection, DuplicateSection, or MalformedDimensionRow.
    """
    aliases = heading_aliases or DEFAULT_HEADING_ALIASES
    sections, warnings = _split_sections(text, aliases)

    role = "\n".join(sections[ROLE]).strip()
    dimensions = _parse_dimensions(sections[DIMENSIONS])
    standards = _parse_items(sections[STANDARDS])
    stages = _parse_stages(sections[OUTPUT])

    for key, empty in (
        (ROLE, not role),
        (DIMENSIONS, not dimensions),
        (STANDARDS, not standards),
        (OUTPUT, not stages),
    ):
        if empty:
            warnings.append(Finding("empty-section", key, "section has no content"))

    return DetailsDocument(
        role_definition=role,
        core_dimensions=dimensions,
        standards=standards,
        output_format=stages,
        warnings=tuple(warnings),
    )


def render_details(doc: DetailsDocument) -> str:
    """Render a details document back to canonical Markdown.

    ``parse_details(render_details(d))`` equals ``d`` up to whitespace
    normalization of the role text.
    """
    parts: list[str] = [f"## {SECTION_TITLES[ROLE]}", ""]
    if doc.role_definition:
        parts += [doc.role_definition, ""]

    parts += [f"## {SECTION_TITLES[DIMENSIONS]}", ""]
    if doc.core_dimensions:
        parts += ["| Dimension | Focus Points |", "| --- | --- |"]
        for dim in doc.core_dimensions:
            parts.append(f"| {dim.name} | {', '.join(dim.focus_points)} |")
        parts.append("")

    parts += [f"## {SECTION_TITLES[STANDARDS]}", ""]
    if doc.standards:
        parts += [f"- {item}" for item in doc.standards]
        parts.append("")

    parts += [f"## {SECTION_TITLES[OUTPUT]}", ""]
    for stage in doc.output_format:
        line = f"{stage.ordinal}. {stage.title}"
        if stage.description:
            line += f": {stage.description}"
        parts.append(line)
    if doc.output_format:
        parts.append("")

    return "\n".join(parts).strip() + "\n"
