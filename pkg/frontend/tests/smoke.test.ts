// UI smoke against a scripted gateway double: the construct flow shows
// skill tags, two chat tabs hold independent streamed sessions, and an
// event-stream interruption recovers with no duplicated sidebar entries.

import { afterEach, beforeEach, describe, expect, it } from 'vitest';

import { startApp } from '../src/app.js';
import { AppContext } from '../src/pages.js';
import { MockGateway, until } from './mock_gateway.js';

const SENTENCE = 'middle school geometry tutor';
const AGENT_ID = 'middle-school-geometry-tutor';

let gateway: MockGateway;
let ctx: AppContext;
let root: HTMLElement;

beforeEach(() => {
  gateway = new MockGateway();
  // The app consumes the global fetch; point it at the double.
  (globalThis as { fetch: unknown }).fetch = gateway.fetch;
  document.body.innerHTML = '<div id="app"></div>';
  window.location.hash = '#/';
  root = document.getElementById('app')!;
});

afterEach(() => {
  ctx.dispose();
});

function query<T extends Element>(selector: string): T[] {
  return [...root.querySelectorAll<T>(selector)];
}

describe('ui smoke', () => {
  it('construct flow creates an agent with visible skill tags', async () => {
    ctx = startApp(root, 'http://mock');
    window.location.hash = '#/construct';
    await until(() => query('.sentence').length === 1);

    const input = query<HTMLInputElement>('.sentence')[0];
    const button = query<HTMLButtonElement>('.construct')[0];
    expect(button.hasAttribute('disabled')).toBe(true); // empty sentence: disabled

    input.value = SENTENCE;
    input.dispatchEvent(new Event('input'));
    expect(button.hasAttribute('disabled')).toBe(false);

    button.click();
    await until(() => query('.skill-tag').length > 0);

    const tags = query('.skill-tag').map((tag) => tag.getAttribute('data-skill'));
    expect(tags).toEqual([
      `${AGENT_ID}-foundations`,
      `${AGENT_ID}-guided-practice`,
      `${AGENT_ID}-reflection`,
    ]);
    expect(query('.profile-preview')).toHaveLength(1);
    expect(gateway.agents.has(AGENT_ID)).toBe(true);

    // The new agent shows up as a repository card.
    window.location.hash = '#/';
    await until(() => query('.agent-card').length === 1);
  });

  it('pipeline failures render findings instead of crashing', async () => {
    ctx = startApp(root, 'http://mock');
    window.location.hash = '#/construct';
    await until(() => query('.sentence').length === 1);
    const input = query<HTMLInputElement>('.sentence')[0];
    input.value = '   ';
    input.dispatchEvent(new Event('input'));
    expect(query<HTMLButtonElement>('.construct')[0].hasAttribute('disabled')).toBe(true);
  });

  it('gateway outage shows an error banner with retry', async () => {
    gateway.failListAgents = true;
    ctx = startApp(root, 'http://mock');
    await until(() => query('.banner.error').length === 1);
    expect(query('.agent-card')).toHaveLength(0);
  });

  it('two chat tabs hold independent streamed sessions', async () => {
    gateway.ssePlanner = () => ({ items: [], then: 'hang' });
    ctx = startApp(root, 'http://mock');
    await ctx.client.createAgent(SENTENCE);

    window.location.hash = `#/chat/${AGENT_ID}`;
    await until(() => query('.tab').length >= 2); // first tab + "+" button

    const firstTab = ctx.tabs.tabs[0];
    query<HTMLButtonElement>('.new-tab')[0].click();
    await until(() => ctx.tabs.tabs.length === 2);
    const secondTab = ctx.tabs.tabs[1];
    expect(firstTab.sessionId).not.toBe(secondTab.sessionId);

    // Send in the active (second) tab through the composer.
    const composer = query<HTMLInputElement>('.composer')[0];
    composer.value = 'area of a trapezoid?';
    query<HTMLButtonElement>('.send')[0].click();
    await until(() => secondTab.transcript.length === 2 && !secondTab.streaming);
    expect(secondTab.transcript[1].text).toContain(secondTab.sessionId);
    expect(firstTab.transcript).toHaveLength(0);

    // And independently in the first tab via the store.
    await ctx.tabs.send(firstTab.tabId, 'name two quadrilaterals');
    expect(firstTab.transcript[1].text).toContain(firstTab.sessionId);
    expect(gateway.chatLog.map((c) => c.sessionId)).toEqual([
      secondTab.sessionId,
      firstTab.sessionId,
    ]);

    // The streamed transcript is visible in the DOM of the active tab.
    const turns = query('.turn');
    expect(turns.some((t) => t.textContent?.includes('area of a trapezoid?'))).toBe(true);
  });

  it('sse interruption recovers without duplicated sidebar events', async () => {
    const item = (seq: number) => ({
      id: `${AGENT_ID}:${seq}`,
      event: 'chat-request',
      data: `payload-${seq}`,
    });
    gateway.ssePlanner = (attempt) => {
      if (attempt === 0) return { items: [item(1), item(2), item(3)], then: 'error' };
      // Replay overlaps on purpose; the client must deduplicate.
      return { items: [item(2), item(3), item(4), item(5)], then: 'hang' };
    };

    ctx = startApp(root, 'http://mock');
    await ctx.client.createAgent(SENTENCE);
    window.location.hash = `#/chat/${AGENT_ID}`;

    await until(() => query('.event-list .event').length === 5, 6000);
    const seqs = query('.event-list .event').map((node) => node.getAttribute('data-seq'));
    expect(seqs).toEqual(['1', '2', '3', '4', '5']);
    expect(gateway.sseAttempts.length).toBe(2);
    expect(gateway.sseAttempts[1].lastEventId).toBe(`${AGENT_ID}:3`);
  });
});
