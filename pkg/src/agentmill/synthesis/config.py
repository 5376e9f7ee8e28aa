"""Synthesis configuration: retry budget, base template, prompt templates."""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from agentmill.profiles.model import AgentProfile


def _template(name: str) -> str:
    return (resources.files("agentmill.synthesis") / "templates" / name).read_text("utf-8")


def default_base_template() -> AgentProfile:
    """Profile defaults merged into every generated profile."""
    return AgentProfile(name="base-template", agent_template="default")


@dataclass(frozen=True)
class SynthesisConfig:
    max_retries: int = 3
    completion_budget: int = 8192
    base_template: AgentProfile = field(default_factory=default_base_template)
    system_prompt: str = field(default_factory=lambda: _template("system.txt"))
    profile_prompt: str = field(default_factory=lambda: _template("profile_generation.txt"))
    analysis_prompt: str = field(default_factory=lambda: _template("skill_analysis.txt"))
    skill_prompt: str = field(default_factory=lambda: _template("skill_generation.txt"))

    def __post_init__(self) -> None:
        if self.max_retries < 1:
            raise ValueError("max_retries must be at least 1")


def fill(template: str, **values: str) -> str:
    """Substitute {name} placeholders; literal braces elsewhere are kept."""
    for key, value in values.items():
        template = template.replace("{" + key + "}", value)
    return template
