"""Runtime record of one supervised agent process."""

from __future__ import annotations

import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Protocol

from agentmill.runtime.states import (
    LEGAL_TRANSITIONS,
    LIVE_STATES,
    IllegalTransition,
    InstanceState,
)


class ProcessHandle(Protocol):
    """The subset of subprocess.Popen the supervisor relies on."""

    returncode: int | None

    def poll(self) -> int | None: ...

    def wait(self, timeout: float | None = None) -> int: ...

    def terminate(self) -> None: ...

    def kill(self) -> None: ...


@dataclass
class AgentInstance:
    """One agent process under supervision.

    ``history`` records every state the instance has been in, in order;
    ``transition`` rejects moves outside the legal lifecycle graph.
    """

    workspace: Path
    instance_id: str = field(default_factory=lambda: uuid.uuid4().hex[:12])
    profile_id: str = ""
    agent_name: str = ""
    port: int = 0
    process: ProcessHandle | None = None
    state: InstanceState = InstanceState.STARTING
    last_activity: float = 0.0
    consecutive_failures: int = 0
    restart_count: int = 0
    restart_not_before: float = 0.0
    history: list[InstanceState] = field(default_factory=lambda: [InstanceState.STARTING])

    @property
    def live(self) -> bool:
        return self.state in LIVE_STATES

    def transition(self, new_state: InstanceState) -> None:
        if (self.state, new_state) not in LEGAL_TRANSITIONS:
            raise IllegalTransition(self.state, new_state)
        self.state = new_state
        self.history.append(new_state)

    def as_dict(self) -> dict:
        return {
            "instance_id": self.instance_id,
            "profile_id": self.profile_id,
            "agent_name": self.agent_name,
            "port": self.port,
            "state": self.state.value,
            "last_activity": self.last_activity,
            "consecutive_failures": self.consecutive_failures,
            "restart_count": self.restart_count,
        }
