"""Shared error base class and the finding record used in reports."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Finding:
    """One coded observation about a document or profile.

    ``code`` is a stable kebab-case identifier, ``path`` points at the
    offending field or section, ``message`` is human-readable.
    """

    code: str
    path: str
    message: str

    def render(self) -> str:
        return f"[{self.code}] {self.path}: {self.message}"


class AgentMillError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"

    def finding(self, path: str = "") -> Finding:
        return Finding(code=self.code, path=path, message=str(self))
