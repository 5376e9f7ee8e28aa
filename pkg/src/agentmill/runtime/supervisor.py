"""Process supervision: spawn, probe, restart, idle-terminate, clean up.

The lifecycle logic is split into a pure decision function
(``supervise_tick``) and an effectful executor (``Supervisor``), so the
state machine is fully testable with a scripted clock, fake probes, and fake
process handles. The supervisor's activity clock is refreshed by callers
(the gateway touches an instance on every routed chat turn); health probes
deliberately do not count as activity.
"""

from __future__ import annotations

import json
import logging
import subprocess
import sys
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable

import httpx

from agentmill.errors import AgentMillError
from agentmill.runtime.host import PORT_FILE, RUNTIME_DIR
from agentmill.runtime.instance import AgentInstance, ProcessHandle
from agentmill.runtime.ports import OsAssignedPorts, PortPool
from agentmill.runtime.states import InstanceState

logger = logging.getLogger(__name__)


class SpawnError(AgentMillError):
    code = "spawn-error"


class ProcessLaunchFailure(SpawnError):
    code = "process-launch-failure"


class StartupTimeout(SpawnError):
    code = "startup-timeout"


@dataclass(frozen=True)
class SupervisorConfig:
    health_interval: float = 5.0
    probe_timeout: float = 2.0
    failure_threshold: int = 3
    backoff_base: float = 1.0
    backoff_cap: float = 60.0
    restart_cap: int = 5
    idle_timeout: float = 900.0
    startup_timeout: float = 30.0
    grace_period: float = 5.0
    port_range: tuple[int, int] | None = None  # None: OS-assigned ports

    def __post_init__(self) -> None:
        for name in ("failure_threshold", "restart_cap"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")
        for name in (
            "health_interval",
            "probe_timeout",
            "backoff_base",
            "idle_timeout",
            "startup_timeout",
            "grace_period",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class ProbeResult:
    passing: bool
    reason: str = ""


@dataclass(frozen=True)
class LifecycleAction:
    kind: str  # restart | terminate-idle | fail
    instance_id: str


def supervise_tick(
    instances: Iterable[AgentInstance], now: float, config: SupervisorConfig
) -> list[LifecycleAction]:
    """Pure lifecycle decision: what should happen to each instance at ``now``.

    Restart fires once the consecutive failure count reaches the threshold
    (respecting the backoff schedule); at the restart cap the instance fails
    instead. A healthy instance idle for at least the idle timeout is
    terminated.
    """
    actions: list[LifecycleAction] = []
    for instance in sorted(instances, key=lambda i: i.instance_id):
        if instance.state is InstanceState.UNHEALTHY:
            if instance.consecutive_failures >= config.failure_threshold:
                if instance.restart_count >= config.restart_cap:
                    actions.append(LifecycleAction("fail", instance.instance_id))
                elif now >= instance.restart_not_before:
                    actions.append(LifecycleAction("restart", instance.instance_id))
        elif instance.state is InstanceState.HEALTHY:
            if now - instance.last_activity >= config.idle_timeout:
                actions.append(LifecycleAction("terminate-idle", instance.instance_id))
    return actions


def http_probe(instance: AgentInstance, timeout: float) -> ProbeResult:
    """Single bounded probe of the host's health endpoint; never mutates."""
    try:
        response = httpx.get(f"http://127.0.0.1:{instance.port}/health", timeout=timeout)
    except httpx.TimeoutException:
        return ProbeResult(False, "timeout")
    except httpx.HTTPError as exc:
        return ProbeResult(False, f"connection failed: {exc}")
    if response.status_code != 200:
        return ProbeResult(False, f"status {response.status_code}")
    try:
        if response.json().get("status") != "ok":
            return ProbeResult(False, "unexpected health payload")
    except ValueError:
        return ProbeResult(False, "non-JSON health payload")
    return ProbeResult(True)


@dataclass
class HostLauncher:
    """Launches the reference agent host as a subprocess.

    ``command_prefix`` is the executable part of the command line; workspace,
    port, and provider-config flags are appended. Overridable for test
    doubles standing in for the real host.
    """

    provider_config: Path
    command_prefix: tuple[str, ...] = (sys.executable, "-m", "agentmill.runtime.host")

    def launch(self, workspace: Path, port: int) -> ProcessHandle:
        runtime_dir = Path(workspace) / RUNTIME_DIR
        runtime_dir.mkdir(parents=True, exist_ok=True)
        (runtime_dir / PORT_FILE).unlink(missing_ok=True)
        log_file = (runtime_dir / "host.log").open("ab")
        command = [
            *self.command_prefix,
            "--workspace",
            str(workspace),
            "--port",
            str(port),
            "--provider-config",
            str(self.provider_config),
        ]
        try:
            return subprocess.Popen(command, stdout=log_file, stderr=subprocess.STDOUT)
        except OSError as exc:
            raise ProcessLaunchFailure(f"cannot launch agent host: {exc}") from exc
        finally:
            log_file.close()


def _default_quitter(instance: AgentInstance, timeout: float) -> None:
    try:
        httpx.post(f"http://127.0.0.1:{instance.port}/quit", timeout=timeout)
    except httpx.HTTPError:
        pass


class Supervisor:
    """Owns instance state and applies lifecycle decisions to processes.

    Instance state lives behind one lock; health probes run concurrently
    outside it. ``launcher``, ``prober``, ``quitter``, and ``clock`` are
    injectable so every lifecycle path is testable without real processes.
    """

    def __init__(
        self,
        config: SupervisorConfig | None = None,
        *,
        launcher: HostLauncher | None = None,
        prober: Callable[[AgentInstance, float], ProbeResult] = http_probe,
        quitter: Callable[[AgentInstance, float], None] = _default_quitter,
        clock: Callable[[], float] = time.monotonic,
    ) -> None:
        self.config = config or SupervisorConfig()
        self._launcher = launcher
        self._prober = prober
        self._quitter = quitter
        self._clock = clock
        self._ports = (
            PortPool(*self.config.port_range) if self.config.port_range else OsAssignedPorts()
        )
        self._instances: dict[str, AgentInstance] = {}
        self._lock = threading.RLock()
        self._listeners: list[Callable[[AgentInstance, str], None]] = []
        self._stop = threading.Event()
        self._thread: threading.Thread | None = None

    # -- observation ------------------------------------------------------

    def instances(self) -> list[AgentInstance]:
        with self._lock:
            return list(self._instances.values())

    def live_instances(self) -> list[AgentInstance]:
        return [instance for instance in self.instances() if instance.live]

    def get(self, instance_id: str) -> AgentInstance | None:
        with self._lock:
            return self._instances.get(instance_id)

    def on_lifecycle(self, listener: Callable[[AgentInstance, str], None]) -> None:
        self._listeners.append(listener)

    def _notify(self, instance: AgentInstance, event: str) -> None:
        for listener in list(self._listeners):
            try:
                listener(instance, event)
            except Exception:  # listener bugs must not break supervision
                logger.exception("lifecycle listener failed")

    # -- spawning ---------------------------------------------------------

    def spawn(
        self, workspace: Path, *, profile_id: str = "", agent_name: str = ""
    ) -> AgentInstance:
        """Launch a host for the workspace and wait until it reports healthy.

        Raises PortUnavailable, ProcessLaunchFailure, or StartupTimeout.
        """
        if self._launcher is None:
            raise ProcessLaunchFailure("supervisor has no launcher configured")
        workspace = Path(workspace)
        port = self._ports.acquire()
        instance = AgentInstance(
            workspace=workspace,
            profile_id=profile_id,
            agent_name=agent_name,
            port=port,
            last_activity=self._clock(),
        )
        try:
            instance.process = self._launcher.launch(workspace, port)
        except Exception:
            self._ports.release(port)
            raise
        with self._lock:
            self._instances[instance.instance_id] = instance
        self._await_ready(instance)
        self._notify(instance, "spawned")
        return instance

    def _await_ready(self, instance: AgentInstance) -> None:
        deadline = time.monotonic() + self.config.startup_timeout
        portfile = Path(instance.workspace) / RUNTIME_DIR / PORT_FILE
        while time.monotonic() < deadline:
            process = instance.process
            if process is not None and process.poll() is not None:
                instance.transition(InstanceState.FAILED)
                self._ports.release(instance.port)
                raise ProcessLaunchFailure(
                    f"agent host exited during startup (code {process.returncode})"
                )
            if instance.port == 0:
                if not portfile.exists():
                    time.sleep(0.03)
                    continue
                instance.port = int(portfile.read_text(encoding="utf-8").strip())
            if self._prober(instance, self.config.probe_timeout).passing:
                instance.transition(InstanceState.HEALTHY)
                instance.last_activity = self._clock()
                return
            time.sleep(0.05)
        self._terminate_process(instance, force=True)
        instance.transition(InstanceState.FAILED)
        self._ports.release(instance.port)
        raise StartupTimeout(
            f"agent host not healthy within {self.config.startup_timeout:.1f}s"
        )

    # -- probing and the supervision loop ---------------------------------

    def check_health(self, instance: AgentInstance) -> ProbeResult:
        return self._prober(instance, self.config.probe_timeout)

    def touch(self, instance_id: str) -> None:
        with self._lock:
            instance = self._instances.get(instance_id)
            if instance is not None:
                instance.last_activity = self._clock()

    def tick_once(self, now: float | None = None) -> list[LifecycleAction]:
        """Probe, apply probe outcomes, decide, and execute one round."""
        now = self._clock() if now is None else now
        with self._lock:
            probed = [
                instance
                for instance in self._instances.values()
                if instance.state in (InstanceState.HEALTHY, InstanceState.UNHEALTHY)
            ]
        if probed:
            with ThreadPoolExecutor(max_workers=min(8, len(probed))) as pool:
                results = list(
                    pool.map(lambda i: self._prober(i, self.config.probe_timeout), probed)
                )
        else:
            results = []
        with self._lock:
            for instance, result in zip(probed, results):
                self._apply_probe(instance, result)
            actions = supervise_tick(self._instances.values(), now, self.config)
            for action in actions:
                self._apply_action(action, now)
        return actions

    def _apply_probe(self, instance: AgentInstance, result: ProbeResult) -> None:
        if instance.state not in (InstanceState.HEALTHY, InstanceState.UNHEALTHY):
            return  # state changed while the probe was in flight
        if result.passing:
            instance.consecutive_failures = 0
            if instance.state is InstanceState.UNHEALTHY:
                instance.transition(InstanceState.HEALTHY)
        else:
            instance.consecutive_failures += 1
            if instance.state is InstanceState.HEALTHY:
                instance.transition(InstanceState.UNHEALTHY)

    def _apply_action(self, action: LifecycleAction, now: float) -> None:
        instance = self._instances.get(action.instance_id)
        if instance is None:
            return
        if action.kind == "terminate-idle":
            self._shutdown_locked(instance, "graceful", InstanceState.TERMINATED_IDLE)
        elif action.kind == "fail":
            self._terminate_process(instance, force=True)
            self._ports.release(instance.port)
            instance.transition(InstanceState.RESTARTING)
            instance.transition(InstanceState.FAILED)
            self._notify(instance, "failed")
        elif action.kind == "restart":
            self._restart(instance, now)

    def _restart(self, instance: AgentInstance, now: float) -> None:
        instance.transition(InstanceState.RESTARTING)
        self._terminate_process(instance, force=True)
        self._ports.release(instance.port)
        instance.restart_count += 1
        backoff = min(
            self.config.backoff_base * 2 ** (instance.restart_count - 1),
            self.config.backoff_cap,
        )
        instance.restart_not_before = now + backoff
        instance.consecutive_failures = 0
        if self._launcher is None:
            instance.transition(InstanceState.FAILED)
            self._notify(instance, "failed")
            return
        try:
            port = self._ports.acquire()
            instance.port = port
            instance.process = self._launcher.launch(instance.workspace, port)
            instance.transition(InstanceState.STARTING)
            self._await_ready(instance)
            self._notify(instance, "restarted")
        except Exception as exc:
            logger.warning("restart of %s failed: %s", instance.instance_id, exc)
            if instance.state is not InstanceState.FAILED:
                instance.transition(InstanceState.FAILED)
            self._notify(instance, "failed")

    # -- shutdown ---------------------------------------------------------

    def shutdown(
        self,
        instance: AgentInstance,
        mode: str = "graceful",
        terminal_state: InstanceState = InstanceState.TERMINATED_REQUESTED,
    ) -> InstanceState:
        """Stop an instance; graceful asks the host to quit first.

        Always succeeds: a host that ignores the quit request is force-
        killed after the grace period. The port is released and the process
        reaped.
        """
        with self._lock:
            return self._shutdown_locked(instance, mode, terminal_state)

    def _shutdown_locked(
        self, instance: AgentInstance, mode: str, terminal_state: InstanceState
    ) -> InstanceState:
        if not instance.live:
            return instance.state
        process = instance.process
        if process is not None and process.poll() is None:
            if mode == "graceful":
                self._quitter(instance, self.config.probe_timeout)
                try:
                    process.wait(timeout=self.config.grace_period)
                except subprocess.TimeoutExpired:
                    self._terminate_process(instance, force=True)
            else:
                self._terminate_process(instance, force=True)
        if process is not None:
            process.wait(timeout=5)
        self._ports.release(instance.port)
        instance.transition(terminal_state)
        self._notify(instance, terminal_state.value)
        return instance.state

    def shutdown_all(self, mode: str = "graceful") -> None:
        for instance in self.live_instances():
            self.shutdown(instance, mode)

    @staticmethod
    def _terminate_process(instance: AgentInstance, force: bool = False) -> None:
        process = instance.process
        if process is None or process.poll() is not None:
            return
        try:
            process.terminate()
            process.wait(timeout=2)
        except subprocess.TimeoutExpired:
            if force:
                process.kill()
                process.wait(timeout=5)

    # -- background loop ---------------------------------------------------

    def start(self) -> None:
        if self._thread is not None:
            return
        self._stop.clear()

        def loop() -> None:
            while not self._stop.wait(self.config.health_interval):
                try:
                    self.tick_once()
                except Exception:
                    logger.exception("supervision tick failed")

        self._thread = threading.Thread(target=loop, name="supervisor", daemon=True)
        self._thread.start()

    def stop(self) -> None:
        self._stop.set()
        if self._thread is not None:
            self._thread.join(timeout=5)
            self._thread = None


def write_provider_config(path: Path, settings: dict) -> Path:
    """Write a provider settings file for host processes."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(settings, indent=2) + "\n", encoding="utf-8")
    return path
