// Thin client for the gateway REST surface. Only documented endpoints are
// used; agent hosts are never contacted directly.

import { createNdjsonParser } from './ndjson.js';
import {
  AgentCard,
  ChatFrame,
  CreatedAgent,
  GatewayError,
  SessionInfo,
} from './types.js';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

async function readError(response: Response): Promise<GatewayError> {
  let body = { code: 'http-error', message: `HTTP ${response.status}`, details: [] as string[] };
  try {
    body = { ...body, ...(await response.json()) };
  } catch {
    // non-JSON error body; keep the generic envelope
  }
  return new GatewayError(response.status, body);
}

export class GatewayClient {
  private readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(base = '', fetchImpl: FetchLike = (...args) => fetch(...args)) {
    this.base = base.replace(/\/$/, '');
    this.fetchImpl = fetchImpl;
  }

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.base + path, init);
    if (!response.ok) throw await readError(response);
    if (response.status === 204) return undefined as T;
    return (await response.json()) as T;
  }

  listAgents(filters: { subject?: string; level?: string } = {}): Promise<AgentCard[]> {
    const params = new URLSearchParams();
    if (filters.subject) params.set('subject', filters.subject);
    if (filters.level) params.set('level', filters.level);
    const query = params.toString();
    return this.json<AgentCard[]>(`/api/agents${query ? `?${query}` : ''}`);
  }

  getAgent(id: string): Promise<AgentCard & { profile: Record<string, unknown> }> {
    return this.json(`/api/agents/${encodeURIComponent(id)}`);
  }

  createAgent(sentence: string): Promise<CreatedAgent> {
    return this.json<CreatedAgent>('/api/agents', {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ sentence }),
    });
  }

  deleteAgent(id: string): Promise<void> {
    return this.json(`/api/agents/${encodeURIComponent(id)}`, { method: 'DELETE' });
  }

  createSession(agentId: string): Promise<SessionInfo> {
    return this.json<SessionInfo>(`/api/agents/${encodeURIComponent(agentId)}/sessions`, {
      method: 'POST',
    });
  }

  listSkills(): Promise<{ id: string; name: string; subject: string; level: string }[]> {
    return this.json('/api/skills');
  }

  stats(): Promise<Record<string, unknown>> {
    return this.json('/api/stats');
  }

  // Streams a chat turn, invoking onFrame per NDJSON frame. Resolves when
  // the stream ends.
  async chat(
    sessionId: string,
    message: string,
    onFrame: (frame: ChatFrame) => void,
  ): Promise<void> {
    const response = await this.fetchImpl(
      `${this.base}/api/sessions/${encodeURIComponent(sessionId)}/chat`,
      {
        method: 'POST',
        headers: { 'Content-Type': 'application/json' },
        body: JSON.stringify({ message }),
      },
    );
    if (!response.ok) throw await readError(response);
    const parser = createNdjsonParser<ChatFrame>(onFrame);
    const reader = response.body?.getReader();
    if (!reader) {
      parser.push(await response.text());
      parser.flush();
      return;
    }
    const decoder = new TextDecoder();
    for (;;) {
      const { done, value } = await reader.read();
      if (done) break;
      parser.push(decoder.decode(value, { stream: true }));
    }
    parser.flush();
  }
}
