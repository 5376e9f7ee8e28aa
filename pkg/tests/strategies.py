"""Shared hypothesis strategies for generated profiles and details docs."""

from __future__ import annotations

import string

from hypothesis import strategies as st

from agentmill.profiles.model import PROFILE_FIELDS, AgentProfile, DetailsDocument, Dimension, Stage

slugs = st.from_regex(r"[a-z][a-z0-9]{0,6}(?:-[a-z0-9]{1,5}){0,2}", fullmatch=True)

names = st.text(
    alphabet=string.ascii_letters + string.digits + " -_", min_size=1, max_size=40
).filter(lambda s: bool(s.strip()))

free_text = st.text(max_size=120)

_json_scalars = st.none() | st.booleans() | st.integers(-10**6, 10**6) | st.text(max_size=30)
extras = st.dictionaries(
    keys=st.text(min_size=1, max_size=15).filter(lambda k: k not in PROFILE_FIELDS),
    values=_json_scalars | st.lists(_json_scalars, max_size=3),
    max_size=3,
)

id_lists = st.lists(slugs, unique=True, max_size=4).map(tuple)

profiles = st.builds(
    AgentProfile,
    name=names,
    description=free_text,
    details=free_text,
    agent_template=slugs | st.just(""),
    skills=id_lists,
    tools=id_lists,
    subagents=id_lists,
    extras=extras,
)

_words = st.text(alphabet=string.ascii_letters, min_size=1, max_size=8)
phrases = st.lists(_words, min_size=1, max_size=4).map(" ".join)

dimensions = st.builds(
    Dimension,
    name=phrases,
    focus_points=st.lists(phrases, max_size=4).map(tuple),
)


def _stages(texts: list[tuple[str, str]]) -> tuple[Stage, ...]:
    return tuple(
        Stage(ordinal=i, title=title, description=desc)
        for i, (title, desc) in enumerate(texts, start=1)
    )


details_documents = st.builds(
    DetailsDocument,
    role_definition=phrases | st.just(""),
    core_dimensions=st.lists(dimensions, unique_by=lambda d: d.name, max_size=6).map(tuple),
    standards=st.lists(phrases, max_size=5).map(tuple),
    output_format=st.lists(st.tuples(phrases, phrases | st.just("")), max_size=6).map(_stages),
)
