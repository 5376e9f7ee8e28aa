"""Event aggregation: one multiplexed feed over all agent instances.

Every published event gets a per-agent monotonically increasing sequence
number assigned here (host restarts therefore never reset an agent's
sequence). Subscribers receive every envelope exactly once in publish
order; per-agent order is contractual, cross-agent interleaving is arrival
order. A bounded ring buffer per agent supports reconnect replay via
``Last-Event-ID`` (``<agent_id>:<seq>``); gaps older than the ring surface
as a ``gap`` status event. Slow subscribers drop their oldest queued events
rather than blocking publishers, and see a ``gap`` marker for the loss.
"""

from __future__ import annotations

import threading
import time
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator


@dataclass(frozen=True)
class EventEnvelope:
    agent_id: str
    seq: int
    timestamp: float
    kind: str
    payload: str

    @property
    def event_id(self) -> str:
        return f"{self.agent_id}:{self.seq}"


@dataclass(frozen=True)
class GapMarker:
    agent_id: str
    reason: str


def render_sse(item: EventEnvelope | GapMarker) -> str:
    """Render one item as a server-sent-events block."""
    if isinstance(item, GapMarker):
        return f'event: gap\ndata: {{"agent_id": "{item.agent_id}", "reason": "{item.reason}"}}\n\n'
    data = "".join(f"data: {line}\n" for line in (item.payload.split("\n") or [""]))
    if not data:
        data = "data: \n"
    return f"id: {item.event_id}\nevent: {item.kind}\n{data}\n"


def parse_last_event_id(value: str | None) -> tuple[str, int] | None:
    if not value or ":" not in value:
        return None
    agent_id, _, seq_text = value.rpartition(":")
    try:
        return agent_id, int(seq_text)
    except ValueError:
        return None


class Subscription:
    """Bounded per-subscriber queue; overflow drops oldest and marks a gap."""

    def __init__(self, maxlen: int) -> None:
        self._items: deque[EventEnvelope | GapMarker] = deque()
        self._maxlen = maxlen
        self._lock = threading.Lock()
        self._ready = threading.Condition(self._lock)
        self._overflowed = False

    def push(self, item: EventEnvelope | GapMarker) -> None:
        with self._ready:
            if len(self._items) >= self._maxlen:
                self._items.popleft()
                self._overflowed = True
            self._items.append(item)
            self._ready.notify()

    def pop(self, timeout: float) -> EventEnvelope | GapMarker | None:
        with self._ready:
            if not self._items:
                self._ready.wait(timeout)
            if not self._items:
                return None
            if self._overflowed:
                self._overflowed = False
                return GapMarker(agent_id="*", reason="subscriber lagged; events dropped")
            return self._items.popleft()


class EventAggregator:
    """Fan-in point for host events and gateway lifecycle events."""

    def __init__(self, ring_size: int = 256, queue_size: int = 4096) -> None:
        self._ring_size = ring_size
        self._queue_size = queue_size
        self._lock = threading.Lock()
        self._seqs: dict[str, int] = {}
        self._rings: dict[str, deque[EventEnvelope]] = {}
        self._subscribers: list[Subscription] = []

    def publish(self, agent_id: str, kind: str, payload: str) -> EventEnvelope:
        with self._lock:
            seq = self._seqs.get(agent_id, 0) + 1
            self._seqs[agent_id] = seq
            envelope = EventEnvelope(
                agent_id=agent_id, seq=seq, timestamp=time.time(), kind=kind, payload=payload
            )
            ring = self._rings.setdefault(agent_id, deque(maxlen=self._ring_size))
            ring.append(envelope)
            for subscriber in self._subscribers:
                subscriber.push(envelope)
            return envelope

    def subscribe(self, last_event_id: str | None = None) -> Subscription:
        """Register a subscriber, seeding replay under the publish lock so
        no event between replay and live delivery is lost or duplicated."""
        subscription = Subscription(self._queue_size)
        position = parse_last_event_id(last_event_id)
        with self._lock:
            if position is not None:
                agent_id, seq = position
                ring = self._rings.get(agent_id)
                if ring:
                    oldest = ring[0].seq
                    if oldest > seq + 1:
                        subscription.push(
                            GapMarker(
                                agent_id=agent_id,
                                reason=f"events {seq + 1}..{oldest - 1} aged out of the replay buffer",
                            )
                        )
                    for envelope in ring:
                        if envelope.seq > seq:
                            subscription.push(envelope)
            self._subscribers.append(subscription)
        return subscription

    def unsubscribe(self, subscription: Subscription) -> None:
        with self._lock:
            if subscription in self._subscribers:
                self._subscribers.remove(subscription)

    def ring(self, agent_id: str) -> tuple[EventEnvelope, ...]:
        with self._lock:
            return tuple(self._rings.get(agent_id, ()))


def sse_stream(
    aggregator: EventAggregator,
    last_event_id: str | None,
    keepalive: float,
    stopping: threading.Event,
) -> Iterator[str]:
    """Blocking SSE text generator; emits a keepalive comment when quiet."""
    subscription = aggregator.subscribe(last_event_id)
    try:
        while not stopping.is_set():
            item = subscription.pop(timeout=keepalive)
            if item is None:
                yield ": keepalive\n\n"
            else:
                yield render_sse(item)
    finally:
        aggregator.unsubscribe(subscription)


def iter_sse_events(lines: Iterable[str]) -> Iterator[dict[str, str]]:
    """Parse a server-sent-events line stream into event dicts."""
    event: dict[str, str] = {}
    data_lines: list[str] = []
    for line in lines:
        if line == "":
            if event or data_lines:
                event["data"] = "\n".join(data_lines)
                yield event
            event, data_lines = {}, []
            continue
        if line.startswith(":"):
            continue
        field, _, value = line.partition(":")
        value = value[1:] if value.startswith(" ") else value
        if field == "data":
            data_lines.append(value)
        elif field in ("event", "id", "retry"):
            event[field] = value
