"""Instance lifecycle states and the legal transition relation."""

from __future__ import annotations

from enum import Enum

from agentmill.errors import AgentMillError


class InstanceState(str, Enum):
    STARTING = "starting"
    HEALTHY = "healthy"
    UNHEALTHY = "unhealthy"
    RESTARTING = "restarting"
    TERMINATED_IDLE = "terminated-idle"
    TERMINATED_REQUESTED = "terminated-requested"
    FAILED = "failed"


LIVE_STATES = frozenset(
    {
        InstanceState.STARTING,
        InstanceState.HEALTHY,
        InstanceState.UNHEALTHY,
        InstanceState.RESTARTING,
    }
)

LEGAL_TRANSITIONS: frozenset[tuple[InstanceState, InstanceState]] = frozenset(
    {
        (InstanceState.STARTING, InstanceState.HEALTHY),
        (InstanceState.STARTING, InstanceState.FAILED),
        (InstanceState.HEALTHY, InstanceState.UNHEALTHY),
        (InstanceState.UNHEALTHY, InstanceState.HEALTHY),
        (InstanceState.UNHEALTHY, InstanceState.RESTARTING),
        (InstanceState.RESTARTING, InstanceState.STARTING),
        (InstanceState.RESTARTING, InstanceState.FAILED),
        (InstanceState.HEALTHY, InstanceState.TERMINATED_IDLE),
    }
    | {(state, InstanceState.TERMINATED_REQUESTED) for state in LIVE_STATES}
)


class IllegalTransition(AgentMillError):
    code = "illegal-transition"

    def __init__(self, current: InstanceState, requested: InstanceState) -> None:
        super().__init__(f"illegal state transition {current.value} -> {requested.value}")
        self.current = current
        self.requested = requested
