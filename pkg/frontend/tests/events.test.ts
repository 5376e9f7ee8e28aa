import { describe, expect, it } from 'vitest';

import { EventFeed } from '../src/events.js';
import { MockGateway, until } from './mock_gateway.js';

function item(agent: string, seq: number, event = 'tick') {
  return { id: `${agent}:${seq}`, event, data: `${agent}/${seq}` };
}

describe('event feed', () => {
  it('collects entries in order with per-agent seq', async () => {
    const gateway = new MockGateway();
    gateway.ssePlanner = () => ({
      items: [item('a', 1), item('b', 1), item('a', 2)],
      then: 'hang',
    });
    const feed = new EventFeed('http://mock/api/events', gateway.fetch, 5);
    feed.start();
    await until(() => feed.entries.length === 3);
    feed.close();
    expect(feed.entriesFor('a').map((e) => e.seq)).toEqual([1, 2]);
    expect(feed.entriesFor('b').map((e) => e.seq)).toEqual([1]);
  });

  it('reconnects with Last-Event-ID and drops replayed duplicates', async () => {
    const gateway = new MockGateway();
    gateway.ssePlanner = (attempt) => {
      if (attempt === 0) {
        return { items: [item('a', 1), item('a', 2), item('a', 3)], then: 'error' };
      }
      // Overlapping replay: starts earlier than requested on purpose.
      return { items: [item('a', 2), item('a', 3), item('a', 4), item('a', 5)], then: 'hang' };
    };
    const feed = new EventFeed('http://mock/api/events', gateway.fetch, 5);
    const statuses: string[] = [];
    feed.onStatus((s) => statuses.push(s));
    feed.start();
    await until(() => feed.entriesFor('a').length === 5);
    feed.close();

    expect(gateway.sseAttempts[1].lastEventId).toBe('a:3');
    expect(feed.entriesFor('a').map((e) => e.seq)).toEqual([1, 2, 3, 4, 5]);
    expect(statuses).toContain('reconnecting');
  });

  it('passes gap events through', async () => {
    const gateway = new MockGateway();
    gateway.ssePlanner = () => ({
      items: [{ id: '', event: 'gap', data: '{"reason":"aged out"}' }, item('a', 9)],
      then: 'hang',
    });
    const feed = new EventFeed('http://mock/api/events', gateway.fetch, 5);
    feed.start();
    await until(() => feed.entries.length === 2);
    feed.close();
    expect(feed.entries[0].event).toBe('gap');
    expect(feed.entries[1].seq).toBe(9);
  });

  it('stops reconnecting after close', async () => {
    const gateway = new MockGateway();
    gateway.ssePlanner = () => ({ items: [], then: 'error' });
    const feed = new EventFeed('http://mock/api/events', gateway.fetch, 5);
    feed.start();
    await until(() => gateway.sseAttempts.length >= 2);
    feed.close();
    const attempts = gateway.sseAttempts.length;
    await new Promise((r) => setTimeout(r, 50));
    expect(gateway.sseAttempts.length).toBe(attempts);
  });
});
