"""The two LLM-powered pipeline stages: profile generation and skill
resolution.

Both stages validate provider output and retry with the failure appended to
the next prompt, up to the configured attempt budget. Under the mock
provider the whole pipeline is a pure function of its inputs.
"""

from __future__ import annotations

import json
import logging
import re

from agentmill.errors import AgentMillError, Finding
from agentmill.profiles.codec import parse_profile, serialize_profile
from agentmill.profiles.details import parse_details
from agentmill.profiles.model import AgentProfile, ProfileError
from agentmill.skills.library import SkillLibrary
from agentmill.skills.markdown import SkillParseError, parse_skill
from agentmill.skills.model import SkillModule, normalize_identifier
from agentmill.synthesis.config import SynthesisConfig, fill
from agentmill.synthesis.providers import CompletionProvider

logger = logging.getLogger(__name__)

_FENCE_RE = re.compile(r"^```[a-z]*\s*\n|\n```\s*$", re.MULTILINE)
_FRONT_ID_RE = re.compile(r"^id:\s*(?P<id>\S+)\s*$", re.MULTILINE)


class SynthesisError(AgentMillError):
    code = "synthesis-error"

    def __init__(self, message: str, findings: tuple[Finding, ...] = ()) -> None:
        super().__init__(message)
        self.findings = findings


class InvalidGenerationAfterRetries(SynthesisError):
    code = "invalid-generation"


class UnparsableSkillList(SynthesisError):
    code = "unparsable-skill-list"


class InvalidSkillAfterRetries(SynthesisError):
    code = "invalid-skill"


def _strip_fences(text: str) -> str:
    return _FENCE_RE.sub("", text.strip()).strip()


def _failure_note(findings: list[Finding]) -> str:
    if not findings:
        return ""
    last = findings[-1]
    return (
        "\nYour previous response was rejected: "
        f"{last.message} Fix the problem and respond again in the required format."
    )


def merge_with_template(generated: AgentProfile, template: AgentProfile) -> AgentProfile:
    """Field-wise merge: non-empty generated fields win, lists are replaced.

    Idempotent: merging an already-merged profile with the same template
    changes nothing.
    """
    extras = dict(template.extras)
    extras.update(generated.extras)
    return AgentProfile(
        name=generated.name,
        description=generated.description or template.description,
        details=generated.details or template.details,
        agent_template=generated.agent_template or template.agent_template,
        skills=generated.skills or template.skills,
        tools=generated.tools or template.tools,
        subagents=generated.subagents or template.subagents,
        extras=extras,
    )


def generate_profile(
    sentence: str, provider: CompletionProvider, config: SynthesisConfig
) -> AgentProfile:
    """Stage 1: one-sentence description to a validated, merged profile.

    The returned profile always has an empty skills list; enrichment fills
    it. Raises InvalidGenerationAfterRetries when every attempt fails.
    """
    if not sentence.strip():
        raise ValueError("scenario sentence must be non-empty")
    findings: list[Finding] = []
    for _attempt in range(config.max_retries):
        prompt = fill(config.profile_prompt, sentence=sentence, failure=_failure_note(findings))
        text = provider.complete(config.system_prompt, prompt, budget=config.completion_budget)
        try:
            profile = parse_profile(_strip_fences(text))
            parse_details(profile.details)
        except ProfileError as exc:
            findings.append(exc.finding("generated profile"))
            continue
        merged = merge_with_template(profile, config.base_template)
        return merged.with_skills(())
    raise InvalidGenerationAfterRetries(
        f"profile generation failed after {config.max_retries} attempts", tuple(findings)
    )


def analyze_skills(
    profile: AgentProfile, provider: CompletionProvider, config: SynthesisConfig
) -> list[str]:
    """Stage 2 step 1: required skill identifiers, normalized and deduplicated."""
    findings: list[Finding] = []
    for _attempt in range(config.max_retries):
        prompt = fill(
            config.analysis_prompt,
            profile=serialize_profile(profile),
            failure=_failure_note(findings),
        )
        text = provider.complete(config.system_prompt, prompt, budget=config.completion_budget)
        try:
            raw = json.loads(_strip_fences(text))
            if not isinstance(raw, list) or any(not isinstance(item, str) for item in raw):
                raise ValueError("expected a JSON array of strings")
        except ValueError as exc:
            findings.append(Finding("unparsable-skill-list", "skill analysis", str(exc)))
            continue
        seen: list[str] = []
        for item in raw:
            identifier = normalize_identifier(item)
            if identifier and identifier not in seen:
                seen.append(identifier)
        return seen
    raise UnparsableSkillList(
        f"skill analysis failed after {config.max_retries} attempts", tuple(findings)
    )


def generate_skill(
    id: str, profile: AgentProfile, provider: CompletionProvider, config: SynthesisConfig
) -> SkillModule:
    """Stage 2 step 2: generate a missing skill module for the given id."""
    findings: list[Finding] = []
    for _attempt in range(config.max_retries):
        prompt = fill(
            config.skill_prompt,
            skill_id=id,
            profile=serialize_profile(profile),
            failure=_failure_note(findings),
        )
        text = provider.complete(config.system_prompt, prompt, budget=config.completion_budget)
        document = _strip_fences(text)
        declared = _FRONT_ID_RE.search(document)
        if declared and normalize_identifier(declared.group("id")) != id:
            logger.warning(
                "generated skill declared id %r; using requested id %r",
                declared.group("id"),
                id,
            )
        try:
            return parse_skill(document, id)
        except SkillParseError as exc:
            findings.append(exc.finding(f"skill {id}"))
    raise InvalidSkillAfterRetries(
        f"skill generation for {id!r} failed after {config.max_retries} attempts",
        tuple(findings),
    )


def enrich_profile(
    profile: AgentProfile,
    library: SkillLibrary,
    provider: CompletionProvider,
    config: SynthesisConfig,
) -> tuple[AgentProfile, SkillLibrary]:
    """Stage 2: resolve required skills against the library, generating the
    missing ones.

    Skills generated before a later failure stay in the library; the library
    only ever grows. The enriched profile lists the full requirement set in
    analysis order.
    """
    if profile.skills:
        raise ValueError("profile already carries skills; enrichment expects an empty list")
    required = analyze_skills(profile, provider, config)
    _, missing = library.match(required)
    for skill_id in missing:
        library.add(generate_skill(skill_id, profile, provider, config))
    return profile.with_skills(tuple(required)), library


__all__ = [
    "InvalidGenerationAfterRetries",
    "InvalidSkillAfterRetries",
    "SynthesisError",
    "UnparsableSkillList",
    "analyze_skills",
    "enrich_profile",
    "generate_profile",
    "generate_skill",
    "merge_with_template",
]
