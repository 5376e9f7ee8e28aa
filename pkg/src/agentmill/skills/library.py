"""Append-only skill library with optional directory persistence.

The library never removes or rewrites a module: re-adding identical content
is a no-op and conflicting content under an existing id is rejected. Each
successful insert bumps the revision counter by one. Adds are serialized
through a single writer lock; readers see either the old or the new module
set, never a partial write.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path

from agentmill.skills.markdown import parse_skill, render_skill
from agentmill.skills.model import LibraryStats, SkillError, SkillModule

INDEX_FILE = "index.json"


class NotFound(SkillError):
    code = "skill-not-found"

    def __init__(self, id: str) -> None:
        super().__init__(f"skill {id!r} not found in library")
        self.id = id


class ConflictingContent(SkillError):
    code = "conflicting-content"

    def __init__(self, id: str) -> None:
        super().__init__(f"skill {id!r} already exists with different content")
        self.id = id


def _normalize(text: str) -> str:
    return text.replace("\r\n", "\n").replace("\r", "\n")


class SkillLibrary:
    """Id-indexed module store; pass a root directory to persist adds."""

    def __init__(self, root: Path | None = None) -> None:
        self._root = Path(root) if root is not None else None
        self._modules: dict[str, SkillModule] = {}
        self._revision = 0
        self._write_lock = threading.Lock()

    @classmethod
    def open(cls, root: Path) -> SkillLibrary:
        """Load every ``<id>/SKILL.md`` under the root into a new library."""
        library = cls(root=root)
        root = Path(root)
        if root.is_dir():
            for skill_file in sorted(root.glob("*/SKILL.md")):
                module = parse_skill(skill_file.read_text(encoding="utf-8"), skill_file.parent.name)
                library.add(module)
        return library

    @property
    def revision(self) -> int:
        return self._revision

    @property
    def root(self) -> Path | None:
        return self._root

    def __len__(self) -> int:
        return len(self._modules)

    def __contains__(self, id: str) -> bool:
        return id in self._modules

    def ids(self) -> tuple[str, ...]:
        return tuple(sorted(self._modules))

    def modules(self) -> tuple[SkillModule, ...]:
        return tuple(self._modules[id] for id in self.ids())

    def add(self, module: SkillModule) -> SkillLibrary:
        """Insert a module; idempotent for identical content.

        Raises ConflictingContent when the id exists with different bytes
        (after newline normalization).
        """
        with self._write_lock:
            existing = self._modules.get(module.id)
            if existing is not None:
                if _normalize(render_skill(existing)) == _normalize(render_skill(module)):
                    return self
                raise ConflictingContent(module.id)
            if self._root is not None:
                self._write_module(module)
            self._modules[module.id] = module
            self._revision += 1
            if self._root is not None:
                self._write_index()
        return self

    def resolve(self, id: str) -> SkillModule:
        module = self._modules.get(id)
        if module is None:
            raise NotFound(id)
        return module

    def match(self, required: list[str]) -> tuple[list[SkillModule], list[str]]:
        """Partition required ids into resolved modules and missing ids.

        Both outputs preserve the input order; together they cover the
        request exactly.
        """
        matched: list[SkillModule] = []
        missing: list[str] = []
        for id in required:
            module = self._modules.get(id)
            if module is None:
                missing.append(id)
            else:
                matched.append(module)
        return matched, missing

    def stats(self) -> LibraryStats:
        counts: dict[tuple[str, str], int] = {}
        for module in self._modules.values():
            key = (module.subject, module.level)
            counts[key] = counts.get(key, 0) + 1
        return LibraryStats(counts=counts)

    def _write_module(self, module: SkillModule) -> None:
        assert self._root is not None
        skill_dir = self._root / module.id
        skill_dir.mkdir(parents=True, exist_ok=True)
        (skill_dir / "SKILL.md").write_text(render_skill(module), encoding="utf-8")

    def _write_index(self) -> None:
        assert self._root is not None
        index = [
            {"id": m.id, "name": m.name, "subject": m.subject, "level": m.level}
            for m in self.modules()
        ]
        payload = json.dumps({"revision": self._revision, "skills": index}, indent=2)
        (self._root / INDEX_FILE).write_text(payload + "\n", encoding="utf-8")
