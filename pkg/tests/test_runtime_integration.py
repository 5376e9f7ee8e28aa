"""Real agent-host processes under the supervisor: spawn, probe, chat, quit."""

from __future__ import annotations

import json
import sys
import time

import httpx
import pytest

from agentmill.construct import (
    ProfileRegistry,
    Registries,
    ToolRegistry,
    construct,
    materialize,
    packaged_template_dir,
)
from agentmill.fixtures import math_tutor_profile
from agentmill.runtime import (
    HostLauncher,
    InstanceState,
    ProcessLaunchFailure,
    Supervisor,
    SupervisorConfig,
    write_provider_config,
)
from agentmill.skills import SkillLibrary

from .fakes import assert_legal_history

HUNG_HOST = str(__import__("pathlib").Path(__file__).with_name("hung_host.py"))


@pytest.fixture(scope="module")
def workspace(tmp_path_factory):
    base = tmp_path_factory.mktemp("runtime")
    registries = Registries(
        skills=SkillLibrary(), tools=ToolRegistry(), profiles=ProfileRegistry()
    )
    plan = construct(math_tutor_profile(), registries)
    return materialize(plan, base / "ws", packaged_template_dir()).root_path


@pytest.fixture(scope="module")
def provider_config(tmp_path_factory):
    path = tmp_path_factory.mktemp("provider") / "provider.json"
    return write_provider_config(path, {"kind": "mock"})


@pytest.fixture()
def supervisor(provider_config):
    sup = Supervisor(
        SupervisorConfig(grace_period=2.0, startup_timeout=20.0),
        launcher=HostLauncher(provider_config=provider_config),
    )
    yield sup
    sup.shutdown_all(mode="forced")


def test_spawn_health_and_chat_round_trip(supervisor, workspace):
    instance = supervisor.spawn(workspace, profile_id="high-school-math-tutor")
    assert instance.state is InstanceState.HEALTHY
    assert instance.port > 0

    health = httpx.get(f"http://127.0.0.1:{instance.port}/health", timeout=5)
    assert health.status_code == 200
    assert health.json() == {"status": "ok", "agent": "high-school-math-tutor"}

    with httpx.stream(
        "POST",
        f"http://127.0.0.1:{instance.port}/chat",
        json={"session": "s-1", "message": "How do I factor x^2 + 5x + 6?"},
        timeout=10,
    ) as response:
        assert response.status_code == 200
        frames = [json.loads(line) for line in response.iter_lines() if line]
    assert frames[-1]["type"] == "done"
    deltas = [f["text"] for f in frames if f["type"] == "delta"]
    assert deltas
    reply = "".join(deltas)
    assert "x^2 + 5x + 6" in reply

    assert_legal_history(instance)


def test_two_spawns_get_distinct_ports(supervisor, workspace):
    first = supervisor.spawn(workspace)
    second = supervisor.spawn(workspace)
    assert first.port != second.port


def test_host_events_stream(supervisor, workspace):
    instance = supervisor.spawn(workspace)
    collected = []
    with httpx.stream(
        "GET", f"http://127.0.0.1:{instance.port}/events", timeout=10
    ) as stream:
        httpx.post(
            f"http://127.0.0.1:{instance.port}/chat",
            json={"session": "s-2", "message": "hello"},
            timeout=10,
        )
        for line in stream.iter_lines():
            collected.append(line)
            if "chat-reply" in line:
                break
    text = "\n".join(collected)
    assert "event: chat-request" in text
    assert "event: chat-reply" in text


def test_killed_process_probes_failing(supervisor, workspace):
    instance = supervisor.spawn(workspace)
    instance.process.kill()
    instance.process.wait(timeout=5)
    time.sleep(0.1)
    result = supervisor.check_health(instance)
    assert not result.passing
    assert "connection" in result.reason or "refused" in result.reason


def test_slow_health_endpoint_times_out(tmp_path, provider_config):
    launcher = HostLauncher(
        provider_config=provider_config,
        command_prefix=(sys.executable, HUNG_HOST, "--health-delay", "2.0"),
    )
    config = SupervisorConfig(probe_timeout=0.3, startup_timeout=20.0)
    supervisor = Supervisor(config, launcher=launcher)
    process = launcher.launch(tmp_path, 0)
    try:
        portfile = tmp_path / ".runtime" / "port"
        deadline = time.monotonic() + 10
        while not portfile.exists() and time.monotonic() < deadline:
            time.sleep(0.05)
        from agentmill.runtime import AgentInstance

        instance = AgentInstance(workspace=tmp_path, port=int(portfile.read_text()))
        result = supervisor.check_health(instance)
        assert not result.passing
        assert result.reason == "timeout"
    finally:
        process.kill()
        process.wait(timeout=5)


def test_graceful_quit_exits_zero(supervisor, workspace):
    instance = supervisor.spawn(workspace)
    supervisor.shutdown(instance, "graceful")
    assert instance.state is InstanceState.TERMINATED_REQUESTED
    assert instance.process.returncode == 0


def test_hung_host_is_force_killed(tmp_path, provider_config):
    launcher = HostLauncher(
        provider_config=provider_config,
        command_prefix=(sys.executable, HUNG_HOST),
    )
    supervisor = Supervisor(
        SupervisorConfig(grace_period=0.5, startup_timeout=20.0), launcher=launcher
    )
    instance = supervisor.spawn(tmp_path)
    supervisor.shutdown(instance, "graceful")
    assert instance.state is InstanceState.TERMINATED_REQUESTED
    assert instance.process.returncode == -9


def test_supervision_loop_restarts_killed_host(workspace, provider_config):
    config = SupervisorConfig(
        health_interval=0.3,
        probe_timeout=1.0,
        failure_threshold=3,
        backoff_base=0.1,
        startup_timeout=20.0,
        grace_period=1.0,
    )
    supervisor = Supervisor(config, launcher=HostLauncher(provider_config=provider_config))
    try:
        instance = supervisor.spawn(workspace, profile_id="restart-me")
        original_pid = instance.process.pid
        supervisor.start()
        instance.process.kill()

        deadline = time.monotonic() + 30
        while time.monotonic() < deadline:
            if instance.restart_count >= 1 and instance.state is InstanceState.HEALTHY:
                break
            time.sleep(0.2)
        assert instance.restart_count >= 1
        assert instance.state is InstanceState.HEALTHY
        assert instance.process.pid != original_pid

        health = httpx.get(f"http://127.0.0.1:{instance.port}/health", timeout=5)
        assert health.status_code == 200
        assert_legal_history(instance)
    finally:
        supervisor.stop()
        supervisor.shutdown_all(mode="forced")


def test_startup_failure_detected(tmp_path, provider_config):
    launcher = HostLauncher(
        provider_config=provider_config,
        command_prefix=(sys.executable, "-c", "import sys; sys.exit(3)"),
    )
    supervisor = Supervisor(SupervisorConfig(startup_timeout=10.0), launcher=launcher)
    with pytest.raises(ProcessLaunchFailure):
        supervisor.spawn(tmp_path)
