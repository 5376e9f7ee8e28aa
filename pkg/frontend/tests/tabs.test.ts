import { describe, expect, it } from 'vitest';

import { GatewayClient } from '../src/api.js';
import { ChatTabs } from '../src/tabs.js';
import { MockGateway } from './mock_gateway.js';

async function setup() {
  const gateway = new MockGateway();
  const client = new GatewayClient('http://mock', gateway.fetch);
  const created = await client.createAgent('tab test tutor');
  return { gateway, client, agentId: created.id, tabs: new ChatTabs(client) };
}

describe('chat tabs', () => {
  it('each open tab gets its own session', async () => {
    const { tabs, agentId } = await setup();
    const first = await tabs.openTab(agentId);
    const second = await tabs.openTab(agentId);
    expect(first.sessionId).not.toBe(second.sessionId);
    expect(tabs.tabs).toHaveLength(2);
  });

  it('sending streams the reply into the right transcript', async () => {
    const { tabs, agentId } = await setup();
    const first = await tabs.openTab(agentId);
    const second = await tabs.openTab(agentId);
    await tabs.send(first.tabId, 'question one');
    await tabs.send(second.tabId, 'question two');

    expect(first.transcript).toHaveLength(2);
    expect(first.transcript[0]).toMatchObject({ role: 'user', text: 'question one' });
    expect(first.transcript[1].role).toBe('agent');
    expect(first.transcript[1].text).toContain('question one');
    expect(first.transcript[1].text).toContain(first.sessionId);
    expect(second.transcript[1].text).toContain('question two');
    expect(second.transcript[1].text).toContain(second.sessionId);
  });

  it('marks the tab for re-instantiation when the instance is gone', async () => {
    const { gateway, tabs, agentId } = await setup();
    const tab = await tabs.openTab(agentId);
    gateway.sessions.get(tab.sessionId)!.alive = false;

    await tabs.send(tab.tabId, 'anyone home?');
    expect(tab.needsReinstantiate).toBe(true);
    expect(tab.transcript).toHaveLength(1); // only the user turn

    await tabs.reinstantiate(tab.tabId);
    expect(tab.needsReinstantiate).toBe(false);
    await tabs.send(tab.tabId, 'second try');
    expect(tab.transcript.at(-1)!.text).toContain('second try');
  });

  it('ignores empty messages and concurrent sends', async () => {
    const { tabs, agentId } = await setup();
    const tab = await tabs.openTab(agentId);
    await tabs.send(tab.tabId, '   ');
    expect(tab.transcript).toHaveLength(0);
  });
});
