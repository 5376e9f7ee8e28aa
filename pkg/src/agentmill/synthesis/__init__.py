"""LLM-powered profile generation and skill resolution with a mock provider."""

from agentmill.synthesis.config import SynthesisConfig, default_base_template, fill
from agentmill.synthesis.pipeline import (
    InvalidGenerationAfterRetries,
    InvalidSkillAfterRetries,
    SynthesisError,
    UnparsableSkillList,
    analyze_skills,
    enrich_profile,
    generate_profile,
    generate_skill,
    merge_with_template,
)
from agentmill.synthesis.providers import (
    CompletionProvider,
    LiveProvider,
    MockProvider,
    ProviderFailure,
    load_provider,
)

__all__ = [
    "CompletionProvider",
    "InvalidGenerationAfterRetries",
    "InvalidSkillAfterRetries",
    "LiveProvider",
    "MockProvider",
    "ProviderFailure",
    "SynthesisConfig",
    "SynthesisError",
    "UnparsableSkillList",
    "analyze_skills",
    "default_base_template",
    "enrich_profile",
    "fill",
    "generate_profile",
    "generate_skill",
    "load_provider",
    "merge_with_template",
]
