// Fetch-based server-sent-events reader with Last-Event-ID resume.
//
// A fetch reader (rather than EventSource) lets reconnects carry the
// Last-Event-ID header explicitly, matching the gateway's replay contract.

import { GatewayEvent } from './types.js';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface SseConnection {
  close(): void;
}

interface SseOptions {
  lastEventId?: string | null;
  onEvent: (event: GatewayEvent) => void;
  onError?: (error: unknown) => void;
  onOpen?: () => void;
  fetchImpl?: FetchLike;
  signal?: AbortSignal;
}

export function parseSseChunks(onEvent: (event: GatewayEvent) => void): (chunk: string) => void {
  let buffer = '';
  let id = '';
  let eventName = 'message';
  let dataLines: string[] = [];

  const dispatch = () => {
    if (dataLines.length || id) {
      onEvent({ id, event: eventName, data: dataLines.join('\n') });
    }
    eventName = 'message';
    dataLines = [];
  };

  const handleLine = (line: string) => {
    if (line === '') {
      dispatch();
      return;
    }
    if (line.startsWith(':')) return;
    const colon = line.indexOf(':');
    const field = colon < 0 ? line : line.slice(0, colon);
    let value = colon < 0 ? '' : line.slice(colon + 1);
    if (value.startsWith(' ')) value = value.slice(1);
    if (field === 'data') dataLines.push(value);
    else if (field === 'event') eventName = value;
    else if (field === 'id') id = value;
  };

  return (chunk: string) => {
    buffer += chunk.replace(/\r\n/g, '\n');
    let index = buffer.indexOf('\n');
    while (index >= 0) {
      handleLine(buffer.slice(0, index));
      buffer = buffer.slice(index + 1);
      index = buffer.indexOf('\n');
    }
  };
}

export function connectSse(url: string, options: SseOptions): SseConnection {
  const controller = new AbortController();
  const fetchImpl = options.fetchImpl ?? ((...args: Parameters<FetchLike>) => fetch(...args));

  (async () => {
    const headers: Record<string, string> = { Accept: 'text/event-stream' };
    if (options.lastEventId) headers['Last-Event-ID'] = options.lastEventId;
    try {
      const response = await fetchImpl(url, { headers, signal: controller.signal });
      if (!response.ok || !response.body) {
        throw new Error(`event stream failed: HTTP ${response.status}`);
      }
      options.onOpen?.();
      const push = parseSseChunks(options.onEvent);
      const reader = response.body.getReader();
      const decoder = new TextDecoder();
      for (;;) {
        const { done, value } = await reader.read();
        if (done) break;
        push(decoder.decode(value, { stream: true }));
      }
      throw new Error('event stream ended');
    } catch (error) {
      if (!controller.signal.aborted) options.onError?.(error);
    }
  })();

  return { close: () => controller.abort() };
}
