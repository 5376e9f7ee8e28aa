"""Management layer: REST API, session routing, event aggregation."""

from agentmill.gateway.config import GatewayConfig
from agentmill.gateway.core import ApiError, GatewayCore
from agentmill.gateway.events import (
    EventAggregator,
    EventEnvelope,
    GapMarker,
    iter_sse_events,
    parse_last_event_id,
    render_sse,
    sse_stream,
)
from agentmill.gateway.service import create_app
from agentmill.gateway.sessions import Session, SessionTable

__all__ = [
    "ApiError",
    "EventAggregator",
    "EventEnvelope",
    "GapMarker",
    "GatewayConfig",
    "GatewayCore",
    "Session",
    "SessionTable",
    "create_app",
    "iter_sse_events",
    "parse_last_event_id",
    "render_sse",
    "sse_stream",
]
