"""Richness measurement, threshold-exact banding, and the surrogate score."""

from __future__ import annotations

import dataclasses

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from agentmill.fixtures import MATH_TUTOR_DETAILS, math_tutor_profile
from agentmill.metrics import (
    RichnessMetrics,
    ScoreWeights,
    aggregate_score,
    classify,
    count_words,
    measure,
)
from agentmill.profiles import parse_details


def test_measure_math_fixture():
    profile = math_tutor_profile()
    doc = parse_details(MATH_TUTOR_DETAILS)
    metrics = measure(profile, doc)
    assert metrics.dimension_count == 5
    assert metrics.focus_point_total == 10
    assert metrics.stage_count == 6
    assert metrics.skill_count == 0
    assert metrics.plan_depth == 1


def test_empty_role_counts_zero():
    doc = parse_details(
        "## Role Definition\n\n## Core Dimensions\n\n## Standards\n\n## Output Format\n"
    )
    metrics = measure(math_tutor_profile(), doc)
    assert metrics.role_words == 0


def test_word_count_matches_independent_tokenizer():
    text = "Guide **students** through `verification`, with [care](x) and _patience_."
    # Oracle: strip markdown punctuation by hand, then whitespace-split.
    assert count_words(text) == len("Guide students through verification, with care and patience.".split())


def test_plan_depth_passthrough():
    doc = parse_details(MATH_TUTOR_DETAILS)
    assert measure(math_tutor_profile(), doc, plan_depth=3).plan_depth == 3


@pytest.mark.parametrize(
    "field,value,band_field,expected",
    [
        ("role_words", 19, "role_band", "generic"),
        ("role_words", 20, "role_band", "intermediate"),
        ("role_words", 50, "role_band", "specific"),
        ("dimension_count", 2, "dim_band", "sparse"),
        ("dimension_count", 3, "dim_band", "typical"),
        ("dimension_count", 7, "dim_band", "typical"),
        ("dimension_count", 8, "dim_band", "diminishing"),
        ("skill_count", 1, "skill_band", "single"),
        ("skill_count", 2, "skill_band", "compositional"),
        ("skill_count", 4, "skill_band", "compositional"),
        ("skill_count", 5, "skill_band", "heavy"),
        ("stage_count", 3, "format_band", "minimal"),
        ("stage_count", 4, "format_band", "structured"),
    ],
)
def test_band_boundaries(field, value, band_field, expected):
    metrics = dataclasses.replace(RichnessMetrics(), **{field: value})
    assert getattr(classify(metrics), band_field) == expected


def test_broad_coverage_flag():
    assert not classify(RichnessMetrics(dimension_count=4)).broad_coverage
    assert classify(RichnessMetrics(dimension_count=5)).broad_coverage


def test_all_zero_metrics_score_zero():
    assert aggregate_score(RichnessMetrics()) == 0.0


def test_doubling_skills_increases_score():
    base = RichnessMetrics(skill_count=2)
    doubled = RichnessMetrics(skill_count=4)
    assert aggregate_score(doubled) > aggregate_score(base)


def test_score_matches_independent_weighted_sum():
    metrics = RichnessMetrics(
        role_words=55,
        dimension_count=5,
        focus_point_total=10,
        skill_count=3,
        tool_count=1,
        subagent_count=2,
        plan_depth=2,
        stage_count=6,
    )
    weights = ScoreWeights(role_words=2.0, skill_count=0.5)
    # Oracle: spell out every term of the weighted sum by hand.
    expected = (
        2.0 * 55 / 105
        + 1.0 * 5 / 10
        + 1.0 * 10 / 20
        + 0.5 * 3 / 6
        + 1.0 * 1 / 4
        + 1.0 * 2 / 4
        + 1.0 * 2 / 4
        + 1.0 * 6 / 10
    )
    assert aggregate_score(metrics, weights) == pytest.approx(expected)


def test_negative_weight_rejected():
    with pytest.raises(ValueError):
        ScoreWeights(skill_count=-1.0)


_metric_values = st.integers(0, 200)


@given(
    st.builds(
        RichnessMetrics,
        role_words=_metric_values,
        dimension_count=_metric_values,
        focus_point_total=_metric_values,
        skill_count=_metric_values,
        tool_count=_metric_values,
        subagent_count=_metric_values,
        plan_depth=_metric_values,
        stage_count=_metric_values,
    ),
    st.sampled_from([f.name for f in dataclasses.fields(RichnessMetrics)]),
    st.integers(1, 50),
)
@settings(max_examples=100)
def test_score_monotone_in_every_component(metrics, field, delta):
    bumped = dataclasses.replace(metrics, **{field: getattr(metrics, field) + delta})
    assert aggregate_score(bumped) >= aggregate_score(metrics)
