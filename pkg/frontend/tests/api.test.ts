import { describe, expect, it } from 'vitest';

import { GatewayClient } from '../src/api.js';
import { ChatFrame, GatewayError } from '../src/types.js';
import { MockGateway } from './mock_gateway.js';

describe('gateway client', () => {
  it('creates an agent and reports skill tags', async () => {
    const gateway = new MockGateway();
    const client = new GatewayClient('http://mock', gateway.fetch);
    const created = await client.createAgent('middle school algebra coach');
    expect(created.id).toBe('middle-school-algebra-coach');
    expect(created.skills.generated).toHaveLength(3);
  });

  it('lists agents with level filter', async () => {
    const gateway = new MockGateway();
    const client = new GatewayClient('http://mock', gateway.fetch);
    await client.createAgent('middle school algebra coach');
    await client.createAgent('high school physics coach');
    const middle = await client.listAgents({ level: 'middle' });
    expect(middle.map((c) => c.id)).toEqual(['middle-school-algebra-coach']);
  });

  it('raises GatewayError with the envelope code', async () => {
    const gateway = new MockGateway();
    const client = new GatewayClient('http://mock', gateway.fetch);
    try {
      await client.createSession('ghost');
      expect.unreachable('should have thrown');
    } catch (error) {
      expect(error).toBeInstanceOf(GatewayError);
      expect((error as GatewayError).code).toBe('unknown-agent');
      expect((error as GatewayError).status).toBe(404);
    }
  });

  it('streams chat frames incrementally', async () => {
    const gateway = new MockGateway();
    const client = new GatewayClient('http://mock', gateway.fetch);
    const agent = await client.createAgent('test streaming tutor');
    const session = await client.createSession(agent.id);
    const frames: ChatFrame[] = [];
    await client.chat(session.session_id, 'hello there', (f) => frames.push(f));
    expect(frames.at(-1)).toEqual({ type: 'done', session: session.session_id });
    const text = frames
      .filter((f): f is Extract<ChatFrame, { type: 'delta' }> => f.type === 'delta')
      .map((f) => f.text)
      .join('');
    expect(text).toContain('hello there');
    expect(gateway.chatLog).toEqual([
      { sessionId: session.session_id, message: 'hello there' },
    ]);
  });
});
