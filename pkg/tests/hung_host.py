"""Test double for a misbehaving agent host.

Serves a passing /health (optionally delayed), acknowledges POST /quit but
never exits, and ignores SIGTERM so only SIGKILL stops it. Reports its bound
port through the same portfile protocol as the real host.
"""

from __future__ import annotations

import http.server
import json
import signal
import sys
import time
from pathlib import Path


def _flag(name: str, default: str | None = None) -> str | None:
    if name in sys.argv:
        return sys.argv[sys.argv.index(name) + 1]
    return default


def main() -> None:
    workspace = Path(_flag("--workspace"))
    port = int(_flag("--port", "0"))
    health_delay = float(_flag("--health-delay", "0"))

    signal.signal(signal.SIGTERM, signal.SIG_IGN)

    class Handler(http.server.BaseHTTPRequestHandler):
        def _reply(self, payload: dict) -> None:
            body = json.dumps(payload).encode()
            self.send_response(200)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def do_GET(self):
            if health_delay:
                time.sleep(health_delay)
            self._reply({"status": "ok", "agent": "hung-host"})

        def do_POST(self):
            self._reply({"status": "quitting"})  # a lie: it never exits

        def log_message(self, *args):
            pass

    server = http.server.ThreadingHTTPServer(("127.0.0.1", port), Handler)
    runtime_dir = workspace / ".runtime"
    runtime_dir.mkdir(parents=True, exist_ok=True)
    tmp = runtime_dir / "port.tmp"
    tmp.write_text(str(server.server_address[1]))
    tmp.rename(runtime_dir / "port")
    server.serve_forever()


if __name__ == "__main__":
    main()
