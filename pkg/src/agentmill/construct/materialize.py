"""Workspace materialization: write a build plan to disk, all or nothing.

Every plan node gets its own self-contained directory: template files, the
composed AGENTS.md, the profile document, copied skill modules, and a
manifest recording tool bindings and child workspaces. Children nest under
their first parent's ``subagents/``; additional parents reference the same
directory through their manifest rather than duplicating it.
"""

from __future__ import annotations

import json
import shutil
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from agentmill.construct.compose import compose_behavior_spec
from agentmill.construct.plan import AgentBuildPlan, ConstructionError, PlanNode
from agentmill.profiles.codec import serialize_profile
from agentmill.skills.markdown import render_skill

MANIFEST_FILE = "manifest.json"
BEHAVIOR_FILE = "AGENTS.md"
PROFILE_FILE = "profile.json"
SKILLS_DIR = "skills"
SUBAGENTS_DIR = "subagents"


def packaged_template_dir() -> Path:
    """Directory of agent templates shipped with the package."""
    from importlib import resources

    return Path(str(resources.files("agentmill.construct"))) / "templates"


class TemplateMissing(ConstructionError):
    code = "template-missing"

    def __init__(self, template: str, search_dir: Path) -> None:
        super().__init__(f"agent template {template!r} not found under {search_dir}")
        self.template = template


class IoFailure(ConstructionError):
    code = "io-failure"

    def __init__(self, path: Path, reason: str) -> None:
        super().__init__(f"{path}: {reason}")
        self.path = Path(path)


@dataclass(frozen=True)
class Workspace:
    """The on-disk root of one materialized plan."""

    root_path: Path
    behavior_spec: str
    skills_dir: Path
    manifest: dict[str, Any]


def load_manifest(workspace_dir: Path) -> dict[str, Any]:
    manifest_path = Path(workspace_dir) / MANIFEST_FILE
    if not manifest_path.exists():
        raise IoFailure(manifest_path, "manifest not found")
    return json.loads(manifest_path.read_text(encoding="utf-8"))


def materialize(plan: AgentBuildPlan, root: Path, template_dir: Path) -> Workspace:
    """Write the plan under ``root`` (which must be empty or absent).

    On any failure the partially written tree is removed before the error
    propagates, so a root either holds a complete workspace or nothing.
    """
    root = Path(root)
    template_dir = Path(template_dir)
    if root.exists() and any(root.iterdir()):
        raise IoFailure(root, "target directory is not empty")

    placed: dict[str, Path] = {}
    try:
        _write_node(plan, plan.root_id, root, root, template_dir, placed)
    except BaseException:
        shutil.rmtree(root, ignore_errors=True)
        raise

    manifest = load_manifest(root)
    return Workspace(
        root_path=root,
        behavior_spec=(root / BEHAVIOR_FILE).read_text(encoding="utf-8"),
        skills_dir=root / SKILLS_DIR,
        manifest=manifest,
    )


def _copy_template(node: PlanNode, node_dir: Path, template_dir: Path) -> None:
    template = node.profile.agent_template or "default"
    source = template_dir / template
    if not source.is_dir():
        raise TemplateMissing(template, template_dir)
    shutil.copytree(source, node_dir, dirs_exist_ok=True)


def _write_node(
    plan: AgentBuildPlan,
    node_id: str,
    node_dir: Path,
    plan_root: Path,
    template_dir: Path,
    placed: dict[str, Path],
) -> None:
    node = plan.nodes[node_id]
    try:
        node_dir.mkdir(parents=True, exist_ok=False)
    except OSError as exc:
        raise IoFailure(node_dir, f"cannot create workspace directory: {exc}") from exc
    placed[node_id] = node_dir

    _copy_template(node, node_dir, template_dir)
    (node_dir / BEHAVIOR_FILE).write_text(
        compose_behavior_spec(node.details, list(node.skills)), encoding="utf-8"
    )
    (node_dir / PROFILE_FILE).write_text(serialize_profile(node.profile), encoding="utf-8")

    skills_dir = node_dir / SKILLS_DIR
    skills_dir.mkdir(exist_ok=True)
    for skill in node.skills:
        skill_dir = skills_dir / skill.id
        skill_dir.mkdir(parents=True, exist_ok=True)
        (skill_dir / "SKILL.md").write_text(render_skill(skill), encoding="utf-8")

    children_entries = []
    for child_id in node.children:
        if child_id not in placed:
            _write_node(
                plan,
                child_id,
                node_dir / SUBAGENTS_DIR / child_id,
                plan_root,
                template_dir,
                placed,
            )
        children_entries.append(
            {"id": child_id, "path": placed[child_id].relative_to(plan_root).as_posix()}
        )

    manifest = {
        "profile_id": node.profile_id,
        "plan_digest": plan.digest(),
        "tools": [tool.as_dict() for tool in node.tools],
        "children": children_entries,
    }
    (node_dir / MANIFEST_FILE).write_text(
        json.dumps(manifest, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )
