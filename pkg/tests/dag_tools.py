"""Seeded random subagent graphs and an independent reachability oracle.

The oracle is a plain breadth-first traversal over the raw reference lists,
deliberately separate from the plan builder it checks.
"""

from __future__ import annotations

import random
from collections import deque

from agentmill.construct import ProfileRegistry, Registries, ToolRegistry
from agentmill.profiles.model import AgentProfile
from agentmill.skills import SkillLibrary

TINY_DETAILS = """\
## Role Definition

Guides learners with patience and precise questions.

## Core Dimensions

| Dimension | Focus Points |
| --- | --- |
| Guided Reasoning | Stepwise prompts |

## Standards

- Check understanding each turn

## Output Format

1. Restate: confirm the task
2. Explore: attempt one step
3. Review: check the result
4. Extend: pose a variation
"""


def random_reference_graph(seed: int, max_nodes: int = 12) -> tuple[str, dict[str, list[str]]]:
    """A random acyclic reference graph over agent ids, edges go low to high."""
    rng = random.Random(seed)
    count = rng.randint(1, max_nodes)
    ids = [f"agent-{i:02d}" for i in range(count)]
    edges = {
        ids[i]: [ids[j] for j in range(i + 1, count) if rng.random() < 0.35]
        for i in range(count)
    }
    return ids[0], edges


def registries_for(edges: dict[str, list[str]]) -> Registries:
    registry = ProfileRegistry()
    for id, children in edges.items():
        registry.add(AgentProfile(name=id, details=TINY_DETAILS, subagents=tuple(children)))
    return Registries(skills=SkillLibrary(), tools=ToolRegistry(), profiles=registry)


def reachable_nodes(edges: dict[str, list[str]], root: str) -> set[str]:
    seen = {root}
    queue = deque([root])
    while queue:
        node = queue.popleft()
        for child in edges.get(node, []):
            if child not in seen:
                seen.add(child)
                queue.append(child)
    return seen


def reachable_edges(edges: dict[str, list[str]], nodes: set[str]) -> set[tuple[str, str]]:
    return {(parent, child) for parent in nodes for child in edges.get(parent, [])}


def add_back_edge(edges: dict[str, list[str]], root: str, seed: int) -> dict[str, list[str]]:
    """Cyclic variant: route some reachable node back to the root."""
    rng = random.Random(seed)
    source = rng.choice(sorted(reachable_nodes(edges, root)))
    cyclic = {node: list(children) for node, children in edges.items()}
    if root not in cyclic[source]:
        cyclic[source].append(root)
    return cyclic
