// Multi-tab chat state: one gateway session per open tab, transcripts kept
// client-side, streaming turns appended incrementally.

import { GatewayClient } from './api.js';
import { GatewayError } from './types.js';

export interface Turn {
  role: 'user' | 'agent';
  text: string;
  streaming?: boolean;
}

export interface ChatTab {
  tabId: string;
  agentId: string;
  sessionId: string;
  transcript: Turn[];
  streaming: boolean;
  error: string | null;
  needsReinstantiate: boolean;
}

let tabCounter = 0;

export class ChatTabs {
  readonly tabs: ChatTab[] = [];
  private listeners: (() => void)[] = [];

  constructor(private readonly client: GatewayClient) {}

  onChange(listener: () => void): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener();
  }

  get(tabId: string): ChatTab | undefined {
    return this.tabs.find((tab) => tab.tabId === tabId);
  }

  async openTab(agentId: string): Promise<ChatTab> {
    const session = await this.client.createSession(agentId);
    const tab: ChatTab = {
      tabId: `tab-${++tabCounter}`,
      agentId,
      sessionId: session.session_id,
      transcript: [],
      streaming: false,
      error: null,
      needsReinstantiate: false,
    };
    this.tabs.push(tab);
    this.notify();
    return tab;
  }

  closeTab(tabId: string): void {
    const index = this.tabs.findIndex((tab) => tab.tabId === tabId);
    if (index >= 0) {
      this.tabs.splice(index, 1);
      this.notify();
    }
  }

  // Rebind a tab whose instance went away (idle-terminated or failed).
  async reinstantiate(tabId: string): Promise<void> {
    const tab = this.get(tabId);
    if (!tab) return;
    const session = await this.client.createSession(tab.agentId);
    tab.sessionId = session.session_id;
    tab.needsReinstantiate = false;
    tab.error = null;
    this.notify();
  }

  async send(tabId: string, message: string): Promise<void> {
    const tab = this.get(tabId);
    if (!tab || tab.streaming || !message.trim()) return;
    tab.error = null;
    tab.transcript.push({ role: 'user', text: message });
    const reply: Turn = { role: 'agent', text: '', streaming: true };
    tab.transcript.push(reply);
    tab.streaming = true;
    this.notify();
    try {
      await this.client.chat(tab.sessionId, message, (frame) => {
        if (frame.type === 'delta') {
          reply.text += frame.text;
          this.notify();
        }
      });
    } catch (error) {
      tab.transcript.pop(); // drop the empty reply shell
      if (error instanceof GatewayError && error.code === 'instance-unavailable') {
        tab.needsReinstantiate = true;
        tab.error = 'The agent was shut down while idle. Re-instantiate to continue.';
      } else {
        tab.error = error instanceof Error ? error.message : String(error);
      }
    } finally {
      reply.streaming = false;
      tab.streaming = false;
      this.notify();
    }
  }
}
