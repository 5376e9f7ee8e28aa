"""Profile interchange codec: parsing, canonical serialization, round trips."""

from __future__ import annotations

import json

import pytest
from hypothesis import given, settings

from agentmill.profiles import (
    AgentProfile,
    DuplicateIdentifier,
    EmptyName,
    MalformedDocument,
    MissingField,
    parse_profile,
    serialize_profile,
)

from .strategies import profiles

SEVEN_KEYS_DOC = json.dumps(
    {
        "name": "math-guide",
        "description": "Guides students through mathematics problems.",
        "details": "## Role Definition\n...",
        "agent_template": "default",
        "skills": [],
        "tools": [],
        "subagents": [],
    }
)


def test_parse_minimal_document_with_empty_lists():
    profile = parse_profile(SEVEN_KEYS_DOC)
    assert profile.name == "math-guide"
    assert profile.skills == ()
    assert profile.tools == ()
    assert profile.subagents == ()
    assert profile.extras == {}


def test_missing_lists_default_to_empty():
    profile = parse_profile('{"name": "x", "description": "y"}')
    assert profile.skills == profile.tools == profile.subagents == ()
    assert profile.details == ""
    assert profile.agent_template == ""


def test_empty_name_rejected():
    with pytest.raises(EmptyName):
        parse_profile('{"name": ""}')
    with pytest.raises(EmptyName):
        parse_profile('{"name": "   "}')


def test_duplicate_identifier_rejected():
    with pytest.raises(DuplicateIdentifier) as exc:
        parse_profile('{"name": "x", "skills": ["a", "a"]}')
    assert exc.value.list_name == "skills"
    assert exc.value.identifier == "a"


def test_missing_name_field():
    with pytest.raises(MissingField):
        parse_profile('{"description": "no name"}')


@pytest.mark.parametrize(
    "document",
    [
        "not json at all",
        "[1, 2]",
        '{"name": 3}',
        '{"name": "x", "skills": "a"}',
        '{"name": "x", "tools": [1]}',
    ],
)
def test_malformed_documents(document):
    with pytest.raises(MalformedDocument):
        parse_profile(document)


def test_unknown_keys_preserved_verbatim():
    doc = '{"name": "x", "x-version": 2, "vendor": {"a": 1}}'
    profile = parse_profile(doc)
    assert profile.extras == {"x-version": 2, "vendor": {"a": 1}}
    again = parse_profile(serialize_profile(profile))
    assert again.extras == profile.extras


def test_serialize_empty_lists_explicit():
    profile = AgentProfile(name="x")
    assert '"skills": []' in serialize_profile(profile)


def test_canonical_key_order():
    profile = AgentProfile(name="x", extras={"zzz": 1})
    keys = list(json.loads(serialize_profile(profile)))
    assert keys == [
        "name",
        "description",
        "details",
        "agent_template",
        "skills",
        "tools",
        "subagents",
        "zzz",
    ]


@given(profiles)
@settings(max_examples=100)
def test_round_trip_identity(profile):
    assert parse_profile(serialize_profile(profile)) == profile


@given(profiles)
@settings(max_examples=100)
def test_serialize_idempotent(profile):
    first = serialize_profile(profile)
    second = serialize_profile(parse_profile(first))
    assert first == second
