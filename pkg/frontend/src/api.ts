// Thin typed client for the serve protocol. All server interaction goes
// through this module; nothing else touches the network.

import type {
  AnimationDocument,
  ClickReply,
  PromptReply,
  SessionState,
} from './types.js';

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(path, init);
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      detail = ((await resp.json()) as { error?: string }).error ?? detail;
    } catch {
      // non-JSON error body: keep the status text
    }
    throw new ApiError(resp.status, detail);
  }
  return (await resp.json()) as T;
}

function post(payload: unknown): RequestInit {
  return {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify(payload),
  };
}

export interface SessionApi {
  createSession(scenePath: string): Promise<string>;
  sessionState(id: string): Promise<SessionState>;
  sendPrompt(id: string, text: string): Promise<PromptReply>;
  sendClick(id: string, x: number, y: number): Promise<ClickReply>;
  synthesize(id: string): Promise<AnimationDocument>;
  artworkUrl(id: string): string;
}

export const httpApi: SessionApi = {
  async createSession(scenePath: string): Promise<string> {
    const reply = await request<{ id: string }>('/session', post({ scene_path: scenePath }));
    return reply.id;
  },
  sessionState(id: string): Promise<SessionState> {
    return request<SessionState>(`/session/${id}`);
  },
  sendPrompt(id: string, text: string): Promise<PromptReply> {
    return request<PromptReply>(`/session/${id}/prompt`, post({ text }));
  },
  sendClick(id: string, x: number, y: number): Promise<ClickReply> {
    return request<ClickReply>(`/session/${id}/click`, post({ x, y }));
  },
  synthesize(id: string): Promise<AnimationDocument> {
    return request<AnimationDocument>(`/session/${id}/synthesize`, post({}));
  },
  artworkUrl(id: string): string {
    return `/session/${id}/artwork.png`;
  },
};
