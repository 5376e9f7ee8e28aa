// The three pages: repository browser, one-sentence construction, and
// multi-tab chat with a live event sidebar. Pure DOM, no framework; all
// gateway access goes through GatewayClient and EventFeed.

import { GatewayClient } from './api.js';
import { clear, el } from './dom.js';
import { EventFeed } from './events.js';
import { ChatTabs } from './tabs.js';
import { AgentCard, CreatedAgent, GatewayError } from './types.js';

export interface AppContext {
  client: GatewayClient;
  feed: EventFeed;
  tabs: ChatTabs;
  navigate: (hash: string) => void;
  dispose: () => void;
}

function errorBanner(message: string, retry?: () => void): HTMLElement {
  const banner = el('div', { class: 'banner error', role: 'alert' }, [message]);
  if (retry) {
    const button = el('button', { class: 'retry' }, ['Retry']);
    button.addEventListener('click', retry);
    banner.append(' ', button);
  }
  return banner;
}

function metricsBadge(card: AgentCard): HTMLElement {
  const bands = card.bands ?? {};
  const metrics = card.metrics ?? {};
  const text = `${metrics['dimension_count'] ?? 0} dims · ${card.skills.length} skills · ${
    bands['role_band'] ?? 'unmeasured'
  }`;
  return el('span', { class: 'badge' }, [text]);
}

// -- repository ------------------------------------------------------------

export async function renderRepository(root: HTMLElement, ctx: AppContext): Promise<void> {
  clear(root);
  const subjectFilter = el('select', { class: 'filter-subject' });
  const levelFilter = el('select', { class: 'filter-level' });
  const cardsHolder = el('div', { class: 'cards' });
  root.append(
    el('h1', {}, ['Agent repository']),
    el('div', { class: 'filters' }, [subjectFilter, levelFilter]),
    cardsHolder,
  );

  const levels = ['', 'primary', 'middle', 'high'];
  levelFilter.append(...levels.map((l) => el('option', { value: l }, [l || 'all levels'])));

  let subjectsLoaded = false;

  const refresh = async () => {
    clear(cardsHolder);
    let cards: AgentCard[];
    try {
      cards = await ctx.client.listAgents({
        subject: subjectFilter.value || undefined,
        level: levelFilter.value || undefined,
      });
    } catch (error) {
      cardsHolder.append(
        errorBanner(`Cannot reach the gateway: ${(error as Error).message}`, refresh),
      );
      return;
    }
    if (!subjectsLoaded) {
      const subjects = ['', ...new Set(cards.map((c) => c.subject))];
      subjectFilter.append(
        ...subjects.map((s) => el('option', { value: s }, [s || 'all subjects'])),
      );
      subjectsLoaded = true;
    }
    if (cards.length === 0) {
      cardsHolder.append(el('p', { class: 'empty-state' }, ['No agents yet. Construct one!']));
      return;
    }
    for (const card of cards) {
      const node = el('article', { class: 'card agent-card', 'data-agent': card.id }, [
        el('h3', {}, [card.name]),
        el('p', {}, [card.description]),
        el('p', { class: 'tags' }, [`${card.subject} · ${card.level}`]),
        metricsBadge(card),
      ]);
      const open = el('button', { class: 'open-chat' }, ['Chat']);
      open.addEventListener('click', () => ctx.navigate(`#/chat/${card.id}`));
      node.append(open);
      cardsHolder.append(node);
    }
  };

  subjectFilter.addEventListener('change', refresh);
  levelFilter.addEventListener('change', refresh);
  await refresh();
}

// -- construction ------------------------------------------------------------

export async function renderConstruct(root: HTMLElement, ctx: AppContext): Promise<void> {
  clear(root);
  const input = el('input', {
    class: 'sentence',
    placeholder: 'e.g. high school mathematics tutoring assistant',
  });
  const submit = el('button', { class: 'construct', disabled: '' }, ['Construct agent']);
  const progress = el('div', { class: 'progress' });
  const result = el('div', { class: 'construct-result' });
  root.append(
    el('h1', {}, ['Construct an agent']),
    el('p', {}, ['Describe the agent in one sentence; the pipeline does the rest.']),
    el('div', { class: 'construct-form' }, [input, submit]),
    progress,
    result,
  );

  input.addEventListener('input', () => {
    if (input.value.trim()) submit.removeAttribute('disabled');
    else submit.setAttribute('disabled', '');
  });

  submit.addEventListener('click', async () => {
    clear(progress);
    clear(result);
    submit.setAttribute('disabled', '');
    progress.append(el('p', { class: 'stage' }, ['Generating profile and resolving skills…']));
    let created: CreatedAgent;
    try {
      created = await ctx.client.createAgent(input.value.trim());
    } catch (error) {
      clear(progress);
      const lines =
        error instanceof GatewayError && error.details.length
          ? error.details
          : [(error as Error).message];
      result.append(
        el('div', { class: 'findings' }, [
          el('h3', {}, ['Construction failed']),
          el('ul', {}, lines.map((line) => el('li', {}, [line]))),
        ]),
      );
      submit.removeAttribute('disabled');
      return;
    }
    clear(progress);

    const tagOf = (id: string, kind: string) =>
      el('span', { class: `skill-tag ${kind}`, 'data-skill': id }, [id]);
    const tags = [
      ...created.skills.matched.map((id) => tagOf(id, 'matched')),
      ...created.skills.generated.map((id) => tagOf(id, 'generated')),
    ];
    const preview = el('pre', { class: 'profile-preview' }, [
      JSON.stringify(created.profile, null, 2),
    ]);
    const openChat = el('button', { class: 'open-chat' }, ['Open chat']);
    openChat.addEventListener('click', () => ctx.navigate(`#/chat/${created.id}`));
    result.append(
      el('h3', {}, [`Agent ready: ${created.id}`]),
      el('div', { class: 'skill-tags' }, tags),
      preview,
      openChat,
    );
    submit.removeAttribute('disabled');
  });
}

// -- chat ---------------------------------------------------------------------

export async function renderChat(
  root: HTMLElement,
  ctx: AppContext,
  agentId: string,
): Promise<void> {
  clear(root);
  const tabBar = el('div', { class: 'tab-bar' });
  const transcriptHolder = el('div', { class: 'transcript' });
  const composer = el('input', { class: 'composer', placeholder: 'Ask something…' });
  const send = el('button', { class: 'send' }, ['Send']);
  const reinstantiate = el('button', { class: 'reinstantiate hidden' }, ['Re-instantiate agent']);
  const sidebar = el('aside', { class: 'event-sidebar' }, [el('h3', {}, ['Agent events'])]);
  const eventList = el('ul', { class: 'event-list' });
  sidebar.append(eventList);

  root.append(
    el('h1', {}, [`Chat · ${agentId}`]),
    tabBar,
    el('div', { class: 'chat-layout' }, [
      el('div', { class: 'chat-main' }, [
        transcriptHolder,
        reinstantiate,
        el('div', { class: 'composer-row' }, [composer, send]),
      ]),
      sidebar,
    ]),
  );

  let activeTabId: string | null = null;

  const renderTabs = () => {
    clear(tabBar);
    for (const tab of ctx.tabs.tabs.filter((t) => t.agentId === agentId)) {
      const button = el(
        'button',
        { class: `tab${tab.tabId === activeTabId ? ' active' : ''}`, 'data-tab': tab.tabId },
        [`Tab ${tab.tabId.replace('tab-', '')}`],
      );
      button.addEventListener('click', () => {
        activeTabId = tab.tabId;
        renderAll();
      });
      tabBar.append(button);
    }
    const plus = el('button', { class: 'tab new-tab' }, ['+']);
    plus.addEventListener('click', async () => {
      const tab = await ctx.tabs.openTab(agentId);
      activeTabId = tab.tabId;
      renderAll();
    });
    tabBar.append(plus);
  };

  const renderTranscript = () => {
    clear(transcriptHolder);
    const tab = activeTabId ? ctx.tabs.get(activeTabId) : undefined;
    if (!tab) return;
    for (const turn of tab.transcript) {
      transcriptHolder.append(
        el('div', { class: `turn ${turn.role}${turn.streaming ? ' streaming' : ''}` }, [
          turn.text,
        ]),
      );
    }
    if (tab.error) transcriptHolder.append(errorBanner(tab.error));
    if (tab.needsReinstantiate) reinstantiate.classList.remove('hidden');
    else reinstantiate.classList.add('hidden');
  };

  const renderAll = () => {
    renderTabs();
    renderTranscript();
  };

  ctx.tabs.onChange(renderTranscript);

  send.addEventListener('click', async () => {
    if (!activeTabId || !composer.value.trim()) return;
    const message = composer.value;
    composer.value = '';
    await ctx.tabs.send(activeTabId, message);
  });

  reinstantiate.addEventListener('click', async () => {
    if (activeTabId) {
      await ctx.tabs.reinstantiate(activeTabId);
      renderTranscript();
    }
  });

  const appendEvent = (entry: { agentId: string; seq: number; event: string; data: string }) => {
    if (entry.agentId !== agentId && entry.agentId !== '*') return;
    eventList.append(
      el('li', { class: 'event', 'data-seq': String(entry.seq) }, [
        el('b', {}, [entry.event]),
        ` ${entry.data}`,
      ]),
    );
  };
  // Snapshot then subscribe, in one synchronous block, so no entry is
  // missed or doubled while the page mounts.
  for (const entry of ctx.feed.entries) appendEvent(entry);
  ctx.feed.onEntry(appendEvent);

  const existing = ctx.tabs.tabs.filter((t) => t.agentId === agentId);
  if (existing.length === 0) {
    const tab = await ctx.tabs.openTab(agentId);
    activeTabId = tab.tabId;
  } else {
    activeTabId = existing[0].tabId;
  }
  renderAll();
}
