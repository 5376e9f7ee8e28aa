"""Completion providers: the behavioral contract, a live HTTP client, and a
deterministic mock.

The mock is the test and demo backbone: for identical prompts it returns
identical output across runs. It recognizes the task marker lines embedded
in the prompt templates and fabricates structurally valid responses for
each pipeline stage; anything else gets a deterministic chat-style reply.
A response script can be supplied to exercise retry paths.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
from typing import Protocol

import httpx

from agentmill.errors import AgentMillError
from agentmill.skills.model import normalize_identifier


class ProviderFailure(AgentMillError):
    code = "provider-failure"


class CompletionProvider(Protocol):
    def complete(self, system_prompt: str, user_prompt: str, *, budget: int = 4096) -> str:
        """Produce completion text for the prompts, at most ``budget`` chars."""
        ...


class LiveProvider:
    """Chat-completions HTTP client configured from settings or environment."""

    def __init__(
        self,
        endpoint: str,
        model: str,
        api_key: str | None = None,
        timeout: float = 30.0,
    ) -> None:
        self.endpoint = endpoint
        self.model = model
        self.api_key = api_key
        self.timeout = timeout

    @classmethod
    def from_env(cls, env: dict[str, str] | None = None) -> LiveProvider:
        env = dict(os.environ if env is None else env)
        endpoint = env.get("AGENTMILL_PROVIDER_URL")
        model = env.get("AGENTMILL_PROVIDER_MODEL")
        if not endpoint or not model:
            raise ProviderFailure(
                "AGENTMILL_PROVIDER_URL and AGENTMILL_PROVIDER_MODEL must be set"
            )
        return cls(
            endpoint=endpoint,
            model=model,
            api_key=env.get("AGENTMILL_PROVIDER_KEY"),
            timeout=float(env.get("AGENTMILL_PROVIDER_TIMEOUT", "30")),
        )

    def complete(self, system_prompt: str, user_prompt: str, *, budget: int = 4096) -> str:
        headers = {}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        payload = {
            "model": self.model,
            "messages": [
                {"role": "system", "content": system_prompt},
                {"role": "user", "content": user_prompt},
            ],
            "max_tokens": budget,
        }
        try:
            response = httpx.post(
                self.endpoint, json=payload, headers=headers, timeout=self.timeout
            )
            response.raise_for_status()
            return response.json()["choices"][0]["message"]["content"]
        except (httpx.HTTPError, KeyError, IndexError, ValueError) as exc:
            raise ProviderFailure(f"completion request failed: {exc}") from exc


_TASK_RE = re.compile(r"^TASK:\s*(?P<kind>[a-z-]+)\s*$", re.MULTILINE)
_SCENARIO_RE = re.compile(r"^SCENARIO:\s*(?P<text>.+)$", re.MULTILINE)
_SKILL_RE = re.compile(r"^SKILL:\s*(?P<id>\S+)\s*$", re.MULTILINE)
_NAME_RE = re.compile(r'"name":\s*"(?P<name>[^"]*)"')

_SUBJECT_KEYWORDS = {
    "Mathematics": ("math", "algebra", "geometry", "calculus"),
    "Physics": ("physics", "mechanics"),
    "Chemistry": ("chemistry", "chemical"),
    "Biology": ("biology", "life science"),
    "English": ("english", "language learning", "vocabulary"),
    "Chinese Language": ("chinese", "mandarin"),
    "History": ("history",),
    "Geography": ("geography",),
    "Physical Education": ("physical education", "sports", "fitness"),
}

_MATH_DIMENSIONS = (
    ("Divergent Thinking", "Path diversity, cross-domain associations"),
    ("Logical Rigor", "Reasoning completeness, counterexample construction"),
    ("Math Expression", "Symbolic normativity, geometry-algebra translation"),
    ("Inquiry Depth", "Problem variation, essential pattern extraction"),
    ("Metacognition", "Strategy evaluation, obstacle diagnosis"),
)

_GENERIC_DIMENSIONS = (
    ("Concept Clarity", "Accurate definitions, worked illustrations"),
    ("Guided Reasoning", "Stepwise prompts, misconception checks"),
    ("Feedback Quality", "Specific praise, actionable correction"),
    ("Reflection", "Strategy review, self-assessment prompts"),
)

_STAGES = (
    ("Problem Deconstruction", "Context analysis and condition mapping"),
    ("Thinking Activation", "Multi-directional heuristic prompts"),
    ("Path Exploration", "Process accompaniment with obstacle diagnosis"),
    ("Solution Comparison", "Structured comparison of multiple approaches"),
    ("Variation Extension", "Progressive problem chain design"),
    ("Inquiry Log", "Metacognitive reflection prompts"),
)


def infer_subject(text: str) -> str:
    lowered = text.lower().replace("-", " ")
    for subject, keywords in _SUBJECT_KEYWORDS.items():
        if any(keyword in lowered for keyword in keywords):
            return subject
    return "other"


def infer_level(text: str) -> str:
    lowered = text.lower().replace("-", " ")
    if "high school" in lowered or "senior" in lowered:
        return "high"
    if "middle school" in lowered or "junior" in lowered:
        return "middle"
    if "primary" in lowered or "elementary" in lowered:
        return "primary"
    return "unspecified"


class MockProvider:
    """Deterministic provider; optionally scripted for retry testing.

    Scripted responses are consumed first, in order; an Exception instance
    in the script is raised instead of returned. Once the script is
    exhausted the provider falls back to its generative behavior. Every
    call is recorded in ``calls``.
    """

    def __init__(self, script: list[str | Exception] | None = None) -> None:
        self._script = list(script or [])
        self.calls: list[tuple[str, str]] = []

    def complete(self, system_prompt: str, user_prompt: str, *, budget: int = 4096) -> str:
        self.calls.append((system_prompt, user_prompt))
        if self._script:
            item = self._script.pop(0)
            if isinstance(item, Exception):
                raise item
            return item[:budget]
        return self._generate(system_prompt, user_prompt)[:budget]

    def _generate(self, system_prompt: str, user_prompt: str) -> str:
        task = _TASK_RE.search(user_prompt)
        kind = task.group("kind") if task else "chat"
        if kind == "profile-generation":
            return self._profile_document(user_prompt)
        if kind == "skill-analysis":
            return self._skill_list(user_prompt)
        if kind == "skill-generation":
            return self._skill_document(user_prompt)
        return self._chat_reply(system_prompt, user_prompt)

    def _profile_document(self, prompt: str) -> str:
        match = _SCENARIO_RE.search(prompt)
        sentence = match.group("text").strip() if match else "general tutoring assistant"
        slug = normalize_identifier(sentence) or "tutoring-assistant"
        subject = infer_subject(sentence)
        dimensions = _MATH_DIMENSIONS if subject == "Mathematics" else _GENERIC_DIMENSIONS

        dim_rows = "\n".join(f"| {name} | {points} |" for name, points in dimensions)
        stages = "\n".join(
            f"{i}. {title}: {desc}" for i, (title, desc) in enumerate(_STAGES, start=1)
        )
        role = (
            f"As a dedicated {sentence.strip().rstrip('.')}, work through every request with "
            "a patient, question-first style: surface what the learner already knows, choose "
            "one concrete next step at a time, and keep the learner doing the reasoning. "
            "Favor guided discovery over direct answers, connect new ideas to earlier ones, "
            "and close each exchange by checking understanding and naming the next goal."
        )
        details = (
            f"## Role Definition\n\n{role}\n\n"
            f"## Core Dimensions\n\n| Dimension | Focus Points |\n| --- | --- |\n{dim_rows}\n\n"
            "## Standards\n\n"
            "- Align guidance with the relevant national curriculum standards\n"
            "- Evaluate reasoning steps, not only final answers\n"
            "- Keep support within the learner's current reach\n\n"
            f"## Output Format\n\n{stages}\n"
        )
        document = {
            "name": slug,
            "description": sentence.strip().rstrip(".") + ".",
            "details": details,
        }
        return json.dumps(document, indent=2, ensure_ascii=False)

    def _skill_list(self, prompt: str) -> str:
        match = _NAME_RE.search(prompt)
        base = normalize_identifier(match.group("name")) if match else "general"
        ids = [f"{base}-foundations", f"{base}-guided-practice", f"{base}-reflection"]
        return json.dumps(ids)

    def _skill_document(self, prompt: str) -> str:
        match = _SKILL_RE.search(prompt)
        skill_id = match.group("id") if match else "general-skill"
        name_match = _NAME_RE.search(prompt)
        context = name_match.group("name") if name_match else skill_id
        subject = infer_subject(f"{skill_id} {context}")
        level = infer_level(f"{skill_id} {context}")
        title = skill_id.replace("-", " ").title()
        return (
            "---\n"
            f"name: {title}\n"
            f"subject: {subject}\n"
            f"level: {level}\n"
            "---\n\n"
            "## Applicable Scenarios\n\n"
            f"Sessions where the learner practices {title.lower()} with guided support.\n\n"
            "## Pedagogical Dimensions\n\n"
            "Concept grounding, error diagnosis, incremental challenge.\n\n"
            "## Guiding Principles\n\n"
            "Ask the learner to attempt each step before offering help; treat errors as "
            "diagnostic information, not failures.\n\n"
            "## Output Templates\n\n"
            "1. Restate the task in the learner's words\n"
            "2. Elicit an approach and try its first step\n"
            "3. Check the result and pose one extension question\n"
        )

    def _chat_reply(self, system_prompt: str, user_prompt: str) -> str:
        digest = hashlib.sha256(f"{system_prompt}\n{user_prompt}".encode()).hexdigest()[:8]
        topic = " ".join(user_prompt.split())[:80]
        return (
            f"Let's reason about \"{topic}\" together. First, restate the task in your own "
            "words so we agree on what's being asked. Then pick one approach you find "
            "promising and carry out just its first step. I'll check each step with you "
            f"and we'll compare alternatives at the end. (turn {digest})"
        )


def load_provider(settings: dict) -> CompletionProvider:
    """Build a provider from a settings mapping ({"kind": "mock"|"live", ...})."""
    kind = settings.get("kind", "mock")
    if kind == "mock":
        return MockProvider()
    if kind == "live":
        api_key = settings.get("api_key")
        key_env = settings.get("api_key_env")
        if api_key is None and key_env:
            api_key = os.environ.get(key_env)
        try:
            return LiveProvider(
                endpoint=settings["endpoint"],
                model=settings["model"],
                api_key=api_key,
                timeout=float(settings.get("timeout", 30.0)),
            )
        except KeyError as exc:
            raise ProviderFailure(f"live provider settings missing {exc}") from exc
    raise ProviderFailure(f"unknown provider kind {kind!r}")
