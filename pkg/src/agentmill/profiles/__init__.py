"""Agent profile documents: schema types, codec, details grammar, validation."""

from agentmill.profiles.codec import (
    MalformedDocument,
    MissingField,
    parse_profile,
    serialize_profile,
)
from agentmill.profiles.details import (
    DetailsError,
    DuplicateSection,
    MalformedDimensionRow,
    MissingSection,
    parse_details,
    render_details,
)
from agentmill.profiles.model import (
    AgentProfile,
    DetailsDocument,
    Dimension,
    DuplicateIdentifier,
    EmptyName,
    ProfileError,
    Stage,
    ValidationReport,
)
from agentmill.profiles.validate import RegistryView, validate_profile

__all__ = [
    "AgentProfile",
    "DetailsDocument",
    "DetailsError",
    "Dimension",
    "DuplicateIdentifier",
    "DuplicateSection",
    "EmptyName",
    "MalformedDimensionRow",
    "MalformedDocument",
    "MissingField",
    "MissingSection",
    "ProfileError",
    "RegistryView",
    "Stage",
    "ValidationReport",
    "parse_details",
    "parse_profile",
    "render_details",
    "serialize_profile",
    "validate_profile",
]
