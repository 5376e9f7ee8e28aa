"""Agent process runtime: lifecycle supervision and the reference host."""

from agentmill.runtime.instance import AgentInstance, ProcessHandle
from agentmill.runtime.ports import OsAssignedPorts, PortPool, PortUnavailable
from agentmill.runtime.states import (
    LEGAL_TRANSITIONS,
    LIVE_STATES,
    IllegalTransition,
    InstanceState,
)
from agentmill.runtime.supervisor import (
    HostLauncher,
    LifecycleAction,
    ProbeResult,
    ProcessLaunchFailure,
    SpawnError,
    StartupTimeout,
    Supervisor,
    SupervisorConfig,
    http_probe,
    supervise_tick,
    write_provider_config,
)

__all__ = [
    "AgentInstance",
    "HostLauncher",
    "IllegalTransition",
    "InstanceState",
    "LEGAL_TRANSITIONS",
    "LIVE_STATES",
    "LifecycleAction",
    "OsAssignedPorts",
    "PortPool",
    "PortUnavailable",
    "ProbeResult",
    "ProcessHandle",
    "ProcessLaunchFailure",
    "SpawnError",
    "StartupTimeout",
    "Supervisor",
    "SupervisorConfig",
    "http_probe",
    "supervise_tick",
    "write_provider_config",
]
