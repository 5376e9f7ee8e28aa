"""Port allocation strategies for agent hosts.

The default strategy hands out port 0 and lets the host bind whatever the
OS assigns (the host reports the bound port through its portfile), which is
race-free. The pool strategy serves deployments that must stay inside a
fixed firewalled range.
"""

from __future__ import annotations

import socket
import threading

from agentmill.errors import AgentMillError


class PortUnavailable(AgentMillError):
    code = "port-unavailable"


class OsAssignedPorts:
    """Let the OS pick: acquire yields 0, the host binds and reports."""

    def acquire(self) -> int:
        return 0

    def release(self, port: int) -> None:
        pass


class PortPool:
    """Fixed inclusive range with in-use tracking and a bind probe."""

    def __init__(self, start: int, end: int) -> None:
        if start > end:
            raise ValueError("empty port range")
        self._range = range(start, end + 1)
        self._in_use: set[int] = set()
        self._lock = threading.Lock()

    @staticmethod
    def _bindable(port: int) -> bool:
        try:
            with socket.socket() as probe:
                probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
                probe.bind(("127.0.0.1", port))
            return True
        except OSError:
            return False

    def acquire(self) -> int:
        with self._lock:
            for port in self._range:
                if port in self._in_use or not self._bindable(port):
                    continue
                self._in_use.add(port)
                return port
        raise PortUnavailable(
            f"no free port in pool {self._range.start}-{self._range.stop - 1}"
        )

    def release(self, port: int) -> None:
        with self._lock:
            self._in_use.discard(port)
