"""Parse and serialize agent profiles in the JSON interchange format.

The canonical serialization uses a fixed key order (the seven schema keys,
then preserved unknown keys in source order), two-space indentation, and a
trailing newline, so that registries diff cleanly and serialization is
idempotent.
"""

from __future__ import annotations

import json
from typing import Any

from agentmill.profiles.model import (
    LIST_FIELDS,
    PROFILE_FIELDS,
    AgentProfile,
    ProfileError,
)


class MalformedDocument(ProfileError):
    code = "malformed-document"


class MissingField(ProfileError):
    code = "missing-field"

    def __init__(self, name: str) -> None:
        super().__init__(f"required field {name!r} is missing")
        self.name = name


def _string_field(data: dict[str, Any], key: str) -> str:
    value = data.get(key, "")
    if not isinstance(value, str):
        raise MalformedDocument(f"field {key!r} must be a string, got {type(value).__name__}")
    return value


def _list_field(data: dict[str, Any], key: str) -> tuple[str, ...]:
    value = data.get(key, [])
    if not isinstance(value, list) or any(not isinstance(item, str) for item in value):
        raise MalformedDocument(f"field {key!r} must be a list of strings")
    return tuple(value)


def parse_profile(document: str) -> AgentProfile:
    """Parse an interchange-format JSON document into an AgentProfile.

    Unknown top-level keys are preserved verbatim in ``extras`` (validation
    reports them as warnings). Missing optional lists default to empty.

    Raises MalformedDocument, MissingField, EmptyName, or
    DuplicateIdentifier.
    """
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise MalformedDocument("top-level value must be a JSON object")
    if "name" not in data:
        raise MissingField("name")

    extras = {key: value for key, value in data.items() if key not in PROFILE_FIELDS}
    return AgentProfile(
        name=_string_field(data, "name"),
        description=_string_field(data, "description"),
        details=_string_field(data, "details"),
        agent_template=_string_field(data, "agent_template"),
        skills=_list_field(data, "skills"),
        tools=_list_field(data, "tools"),
        subagents=_list_field(data, "subagents"),
        extras=extras,
    )


def serialize_profile(profile: AgentProfile) -> str:
    """Render a profile to canonical interchange text.

    ``parse_profile(serialize_profile(p))`` equals ``p`` field-wise, and a
    second serialization is byte-identical to the first.
    """
    document: dict[str, Any] = {
        "name": profile.name,
        "description": profile.description,
        "details": profile.details,
        "agent_template": profile.agent_template,
    }
    for key in LIST_FIELDS:
        document[key] = list(getattr(profile, key))
    for key, value in profile.extras.items():
        document[key] = value
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"
