// Shared types mirroring the gateway's REST and SSE payloads.

export interface AgentCard {
  id: string;
  name: string;
  description: string;
  subject: string;
  level: string;
  skills: string[];
  metrics: Record<string, number> | null;
  bands: Record<string, string | boolean> | null;
}

export interface CreatedAgent {
  id: string;
  profile: Record<string, unknown> & { name: string; description: string };
  skills: { matched: string[]; generated: string[] };
  warnings: string[];
}

export interface SessionInfo {
  session_id: string;
  agent_id: string;
  instance_id: string;
}

export type ChatFrame =
  | { type: 'delta'; text: string }
  | { type: 'done'; session: string };

export interface GatewayEvent {
  id: string; // "<agent_id>:<seq>"
  event: string;
  data: string;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  details: string[];
}

export class GatewayError extends Error {
  readonly code: string;
  readonly status: number;
  readonly details: string[];

  constructor(status: number, body: ApiErrorBody) {
    super(body.message);
    this.status = status;
    this.code = body.code;
    this.details = body.details ?? [];
  }
}
