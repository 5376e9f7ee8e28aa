// Application shell: hash router over the three pages, one shared event
// feed, one shared tab store.

import { GatewayClient } from './api.js';
import { el, clear } from './dom.js';
import { EventFeed } from './events.js';
import { renderChat, renderConstruct, renderRepository, AppContext } from './pages.js';
import { ChatTabs } from './tabs.js';

export function startApp(root: HTMLElement, base = ''): AppContext {
  const client = new GatewayClient(base);
  const feed = new EventFeed(`${base}/api/events`);
  const tabs = new ChatTabs(client);

  const nav = el('nav', { class: 'topnav' });
  const outlet = el('main', { class: 'outlet' });
  root.append(nav, outlet);

  for (const [label, hash] of [
    ['Repository', '#/'],
    ['Construct', '#/construct'],
  ] as const) {
    const link = el('a', { href: hash }, [label]);
    nav.append(link);
  }
  const status = el('span', { class: 'feed-status' }, ['connecting…']);
  nav.append(status);
  feed.onStatus((state) => {
    status.textContent = state;
    status.className = `feed-status ${state}`;
  });

  const ctx: AppContext = {
    client,
    feed,
    tabs,
    navigate: (hash) => {
      window.location.hash = hash;
    },
    dispose: () => {
      window.removeEventListener('hashchange', route);
      feed.close();
    },
  };

  async function route(): Promise<void> {
    const hash = window.location.hash || '#/';
    clear(outlet);
    if (hash.startsWith('#/chat/')) {
      await renderChat(outlet, ctx, decodeURIComponent(hash.slice('#/chat/'.length)));
    } else if (hash === '#/construct') {
      await renderConstruct(outlet, ctx);
    } else {
      await renderRepository(outlet, ctx);
    }
  }

  window.addEventListener('hashchange', route);
  feed.start();
  void route();
  return ctx;
}
