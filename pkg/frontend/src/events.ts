// The live event feed: one SSE connection shared by every tab, resumed
// with Last-Event-ID and de-duplicated by (agent, seq) so interruptions
// never produce repeated or out-of-order sidebar entries.

import { connectSse, FetchLike, SseConnection } from './sse.js';
import { GatewayEvent } from './types.js';

export interface FeedEntry {
  agentId: string;
  seq: number;
  event: string;
  data: string;
}

type Listener = (entry: FeedEntry) => void;
type StatusListener = (status: 'connected' | 'reconnecting' | 'closed') => void;

function splitId(id: string): { agentId: string; seq: number } | null {
  const cut = id.lastIndexOf(':');
  if (cut < 0) return null;
  const seq = Number(id.slice(cut + 1));
  if (!Number.isInteger(seq)) return null;
  return { agentId: id.slice(0, cut), seq };
}

export class EventFeed {
  readonly entries: FeedEntry[] = [];
  private lastEventId: string | null = null;
  private lastSeq = new Map<string, number>();
  private listeners: Listener[] = [];
  private statusListeners: StatusListener[] = [];
  private connection: SseConnection | null = null;
  private reconnectTimer: ReturnType<typeof setTimeout> | null = null;
  private closed = false;

  constructor(
    private readonly url: string,
    private readonly fetchImpl?: FetchLike,
    private readonly reconnectDelayMs = 1000,
  ) {}

  onEntry(listener: Listener): void {
    this.listeners.push(listener);
  }

  onStatus(listener: StatusListener): void {
    this.statusListeners.push(listener);
  }

  start(): void {
    this.closed = false;
    this.connect();
  }

  close(): void {
    this.closed = true;
    this.connection?.close();
    if (this.reconnectTimer !== null) clearTimeout(this.reconnectTimer);
    this.emitStatus('closed');
  }

  private connect(): void {
    this.connection = connectSse(this.url, {
      lastEventId: this.lastEventId,
      fetchImpl: this.fetchImpl,
      onOpen: () => this.emitStatus('connected'),
      onEvent: (event) => this.handle(event),
      onError: () => this.scheduleReconnect(),
    });
  }

  private scheduleReconnect(): void {
    if (this.closed) return;
    this.emitStatus('reconnecting');
    this.reconnectTimer = setTimeout(() => this.connect(), this.reconnectDelayMs);
  }

  private handle(event: GatewayEvent): void {
    if (event.event === 'gap') {
      this.push({ agentId: '*', seq: 0, event: 'gap', data: event.data });
      return;
    }
    const position = splitId(event.id);
    if (!position) return;
    const seen = this.lastSeq.get(position.agentId) ?? 0;
    if (position.seq <= seen) return; // replayed duplicate after reconnect
    this.lastSeq.set(position.agentId, position.seq);
    this.lastEventId = event.id;
    this.push({ agentId: position.agentId, seq: position.seq, event: event.event, data: event.data });
  }

  private push(entry: FeedEntry): void {
    this.entries.push(entry);
    for (const listener of this.listeners) listener(entry);
  }

  private emitStatus(status: 'connected' | 'reconnecting' | 'closed'): void {
    for (const listener of this.statusListeners) listener(status);
  }

  entriesFor(agentId: string): FeedEntry[] {
    return this.entries.filter((entry) => entry.agentId === agentId);
  }
}
