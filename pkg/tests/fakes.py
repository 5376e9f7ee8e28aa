"""Fake clock, processes, launcher, and probes for lifecycle tests."""

from __future__ import annotations

import subprocess
from pathlib import Path

from agentmill.runtime import LEGAL_TRANSITIONS, AgentInstance, InstanceState, ProbeResult


class FakeClock:
    def __init__(self, now: float = 1000.0) -> None:
        self.now = now

    def __call__(self) -> float:
        return self.now

    def advance(self, seconds: float) -> float:
        self.now += seconds
        return self.now


class FakeProcess:
    """In-memory process handle; never blocks a real clock."""

    def __init__(self, ignore_terminate: bool = False) -> None:
        self.returncode: int | None = None
        self._ignore_terminate = ignore_terminate

    def poll(self) -> int | None:
        return self.returncode

    def wait(self, timeout: float | None = None) -> int:
        if self.returncode is None:
            raise subprocess.TimeoutExpired("fake-host", timeout or 0)
        return self.returncode

    def terminate(self) -> None:
        if not self._ignore_terminate:
            self.returncode = -15

    def kill(self) -> None:
        self.returncode = -9

    def exit(self, code: int) -> None:
        self.returncode = code


class FakeLauncher:
    def __init__(self, ignore_terminate: bool = False) -> None:
        self.launches: list[tuple[Path, int]] = []
        self.ignore_terminate = ignore_terminate

    def launch(self, workspace: Path, port: int) -> FakeProcess:
        self.launches.append((Path(workspace), port))
        return FakeProcess(ignore_terminate=self.ignore_terminate)


class ScriptedProber:
    """Probe result switchable from the test body.

    Startup probes (instance still STARTING) are answered separately so a
    restarted fake process can come up healthy while steady-state probes
    keep failing.
    """

    def __init__(self) -> None:
        self.result = ProbeResult(True)
        self.startup_result = ProbeResult(True)
        self.calls = 0

    def __call__(self, instance: AgentInstance, timeout: float) -> ProbeResult:
        self.calls += 1
        if instance.state is InstanceState.STARTING:
            return self.startup_result
        return self.result


def assert_legal_history(instance: AgentInstance) -> None:
    pairs = list(zip(instance.history, instance.history[1:]))
    for pair in pairs:
        assert pair in LEGAL_TRANSITIONS, f"illegal recorded transition {pair}"
