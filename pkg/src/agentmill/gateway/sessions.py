"""Session records binding conversations to agent instances."""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass


@dataclass
class Session:
    session_id: str
    agent_id: str
    instance_id: str
    created_at: float
    last_used: float

    def as_dict(self) -> dict:
        return {
            "session_id": self.session_id,
            "agent_id": self.agent_id,
            "instance_id": self.instance_id,
            "created_at": self.created_at,
            "last_used": self.last_used,
        }


class SessionTable:
    def __init__(self) -> None:
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, agent_id: str, instance_id: str) -> Session:
        now = time.time()
        session = Session(
            session_id=uuid.uuid4().hex[:16],
            agent_id=agent_id,
            instance_id=instance_id,
            created_at=now,
            last_used=now,
        )
        with self._lock:
            self._sessions[session.session_id] = session
        return session

    def get(self, session_id: str) -> Session | None:
        with self._lock:
            return self._sessions.get(session_id)

    def touch(self, session_id: str) -> None:
        with self._lock:
            session = self._sessions.get(session_id)
            if session is not None:
                session.last_used = time.time()

    def drop_agent(self, agent_id: str) -> None:
        with self._lock:
            for session_id in [s for s, v in self._sessions.items() if v.agent_id == agent_id]:
                del self._sessions[session_id]

    def count(self) -> int:
        with self._lock:
            return len(self._sessions)
