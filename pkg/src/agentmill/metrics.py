"""Structural richness metrics for profiles and their quality bands.

Measures the countable dimensions of a profile (role wording, focus-area
breadth and depth, skill/tool references, runtime composition) and maps them
to coarse quality bands. The aggregate score is an explicitly labeled
surrogate: a simple monotone weighted sum for ranking profiles, not a
calibrated capability measure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, fields

from agentmill.profiles.model import AgentProfile, DetailsDocument

ROLE_GENERIC_MAX = 20  # word counts below this are generic
ROLE_SPECIFIC_MIN = 50
DIM_SPARSE_MAX = 3  # dimension counts below this are sparse
DIM_BROAD_MIN = 5
DIM_DIMINISHING_MIN = 8  # beyond seven, extra dimensions stop paying off
SKILL_COMPOSITIONAL_MIN = 2
SKILL_HEAVY_MIN = 5
FORMAT_STRUCTURED_MIN = 4

_MD_LINK_RE = re.compile(r"\[([^\]]*)\]\([^)]*\)")
_MD_LINE_MARKER_RE = re.compile(r"^\s*(?:[-*+]|\d+[.)]|#{1,6}|>)\s+", re.MULTILINE)
_MD_INLINE_RE = re.compile(r"[*_`]")


def _strip_markdown(text: str) -> str:
    text = _MD_LINK_RE.sub(r"\1", text)
    text = _MD_LINE_MARKER_RE.sub("", text)
    text = text.replace("|", " ")
    return _MD_INLINE_RE.sub("", text)


def count_words(text: str) -> int:
    """Whitespace-delimited token count after Markdown stripping."""
    return len(_strip_markdown(text).split())


@dataclass(frozen=True)
class RichnessMetrics:
    """Raw structural counts measured from one profile."""

    role_words: int = 0
    dimension_count: int = 0
    focus_point_total: int = 0
    skill_count: int = 0
    tool_count: int = 0
    subagent_count: int = 0
    plan_depth: int = 0
    stage_count: int = 0

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class QualityBand:
    """Coarse quality classification of one profile's metrics."""

    role_band: str  # generic | intermediate | specific
    dim_band: str  # sparse | typical | diminishing
    broad_coverage: bool  # five or more dimensions
    skill_band: str  # single | compositional | heavy
    format_band: str  # minimal | structured

    def as_dict(self) -> dict:
        return {
            "role_band": self.role_band,
            "dim_band": self.dim_band,
            "broad_coverage": self.broad_coverage,
            "skill_band": self.skill_band,
            "format_band": self.format_band,
        }


def measure(
    profile: AgentProfile, doc: DetailsDocument, plan_depth: int | None = None
) -> RichnessMetrics:
    """Measure structural counts; ``doc`` must be parsed from the profile."""
    return RichnessMetrics(
        role_words=count_words(doc.role_definition),
        dimension_count=len(doc.core_dimensions),
        focus_point_total=sum(len(d.focus_points) for d in doc.core_dimensions),
        skill_count=len(profile.skills),
        tool_count=len(profile.tools),
        subagent_count=len(profile.subagents),
        plan_depth=plan_depth if plan_depth is not None else 1,
        stage_count=len(doc.output_format),
    )


def classify(metrics: RichnessMetrics) -> QualityBand:
    """Band the metrics; every boundary is closed exactly as documented."""
    if metrics.role_words < ROLE_GENERIC_MAX:
        role_band = "generic"
    elif metrics.role_words < ROLE_SPECIFIC_MIN:
        role_band = "intermediate"
    else:
        role_band = "specific"

    if metrics.dimension_count < DIM_SPARSE_MAX:
        dim_band = "sparse"
    elif metrics.dimension_count < DIM_DIMINISHING_MIN:
        dim_band = "typical"
    else:
        dim_band = "diminishing"

    if metrics.skill_count < SKILL_COMPOSITIONAL_MIN:
        skill_band = "single"
    elif metrics.skill_count < SKILL_HEAVY_MIN:
        skill_band = "compositional"
    else:
        skill_band = "heavy"

    format_band = "structured" if metrics.stage_count >= FORMAT_STRUCTURED_MIN else "minimal"

    return QualityBand(
        role_band=role_band,
        dim_band=dim_band,
        broad_coverage=metrics.dimension_count >= DIM_BROAD_MIN,
        skill_band=skill_band,
        format_band=format_band,
    )


@dataclass(frozen=True)
class ScoreWeights:
    """Non-negative weight per metric component; defaults are uniform."""

    role_words: float = 1.0
    dimension_count: float = 1.0
    focus_point_total: float = 1.0
    skill_count: float = 1.0
    tool_count: float = 1.0
    subagent_count: float = 1.0
    plan_depth: float = 1.0
    stage_count: float = 1.0

    def __post_init__(self) -> None:
        for f in fields(self):
            if getattr(self, f.name) < 0:
                raise ValueError(f"weight {f.name} must be non-negative")


#: Saturation scale per component: value v contributes v / (v + scale).
_SCALES = {
    "role_words": 50.0,
    "dimension_count": 5.0,
    "focus_point_total": 10.0,
    "skill_count": 3.0,
    "tool_count": 3.0,
    "subagent_count": 2.0,
    "plan_depth": 2.0,
    "stage_count": 4.0,
}


def aggregate_score(metrics: RichnessMetrics, weights: ScoreWeights | None = None) -> float:
    """Weighted sum of saturating-normalized components, in [0, sum(w)).

    Monotone: increasing any raw count never decreases the score.
    """
    weights = weights or ScoreWeights()
    score = 0.0
    for name, scale in _SCALES.items():
        value = float(getattr(metrics, name))
        score += getattr(weights, name) * (value / (value + scale))
    return score
