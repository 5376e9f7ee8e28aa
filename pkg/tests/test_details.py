"""Details grammar: four sections, dimension tables, stages, round trips."""

from __future__ import annotations

import pytest
from hypothesis import given, settings

from agentmill.fixtures import MATH_TUTOR_DETAILS
from agentmill.profiles import (
    DetailsDocument,
    DuplicateSection,
    MalformedDimensionRow,
    MissingSection,
    Stage,
    parse_details,
    render_details,
)

from .strategies import details_documents

EMPTY_SECTIONS = "## Role Definition\n\n## Core Dimensions\n\n## Standards\n\n## Output Format\n"


def test_math_fixture_parses_five_dimensions():
    doc = parse_details(MATH_TUTOR_DETAILS)
    assert [d.name for d in doc.core_dimensions] == [
        "Divergent Thinking",
        "Logical Rigor",
        "Math Expression",
        "Inquiry Depth",
        "Metacognition",
    ]
    assert all(len(d.focus_points) == 2 for d in doc.core_dimensions)
    assert len(doc.standards) == 3
    assert [s.ordinal for s in doc.output_format] == [1, 2, 3, 4, 5, 6]
    assert doc.output_format[0] == Stage(
        1, "Problem Deconstruction", "Context analysis and condition mapping"
    )
    assert doc.warnings == ()


def test_missing_section():
    text = "## Role Definition\n\nTutor.\n\n## Core Dimensions\n\n## Output Format\n"
    with pytest.raises(MissingSection) as exc:
        parse_details(text)
    assert exc.value.name == "Standards"


def test_duplicate_section():
    with pytest.raises(DuplicateSection):
        parse_details(EMPTY_SECTIONS + "\n## Standards\n")


def test_empty_dimensions_table_warns():
    doc = parse_details(EMPTY_SECTIONS)
    assert doc.core_dimensions == ()
    assert any(w.code == "empty-section" and w.path == "core_dimensions" for w in doc.warnings)


def test_heading_match_is_case_insensitive():
    text = "## role definition\n\nTutor.\n\n## CORE DIMENSIONS\n\n## standards\n\n## Output format\n"
    doc = parse_details(text)
    assert doc.role_definition == "Tutor."


def test_malformed_dimension_row():
    text = EMPTY_SECTIONS.replace(
        "## Core Dimensions\n",
        "## Core Dimensions\n\n| A | B |\n| --- | --- |\n| only-one-cell |\n",
    )
    with pytest.raises(MalformedDimensionRow):
        parse_details(text)


def test_duplicate_dimension_name_rejected():
    text = EMPTY_SECTIONS.replace(
        "## Core Dimensions\n",
        "## Core Dimensions\n\n| A | B |\n| --- | --- |\n| Rigor | a |\n| Rigor | b |\n",
    )
    with pytest.raises(MalformedDimensionRow):
        parse_details(text)


def test_table_row_order_preserved():
    names = [f"Dim{i}" for i in range(8)]
    rows = "\n".join(f"| {n} | point |" for n in names)
    text = EMPTY_SECTIONS.replace(
        "## Core Dimensions\n",
        f"## Core Dimensions\n\n| A | B |\n| --- | --- |\n{rows}\n",
    )
    doc = parse_details(text)
    assert [d.name for d in doc.core_dimensions] == names


def test_stage_ordinals_assigned_by_position():
    text = EMPTY_SECTIONS.replace(
        "## Output Format\n",
        "## Output Format\n\n3. First: a\n9. Second: b\n1. Third: c\n",
    )
    doc = parse_details(text)
    assert [(s.ordinal, s.title) for s in doc.output_format] == [
        (1, "First"),
        (2, "Second"),
        (3, "Third"),
    ]


def test_unknown_section_ignored_with_warning():
    doc = parse_details(EMPTY_SECTIONS + "\n## Examples\n\nsome text\n")
    assert any(w.code == "unknown-section" for w in doc.warnings)


def test_render_empty_document_has_four_headers():
    rendered = render_details(DetailsDocument())
    for title in ("Role Definition", "Core Dimensions", "Standards", "Output Format"):
        assert f"## {title}" in rendered
    reparsed = parse_details(rendered)
    assert reparsed.content_equal(DetailsDocument())


def test_fixture_round_trip():
    doc = parse_details(MATH_TUTOR_DETAILS)
    again = parse_details(render_details(doc))
    assert again.content_equal(doc)
    assert len(again.core_dimensions) == 5


@given(details_documents)
@settings(max_examples=100)
def test_generated_documents_round_trip(doc):
    again = parse_details(render_details(doc))
    assert again.content_equal(doc)
