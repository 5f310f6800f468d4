// Client session state machine. Phases mirror the server's session states;
// every transition happens through a documented endpoint call.

import type { SessionApi } from './api.js';
import type { AnimationDocument, CandidatePayload, SessionState } from './types.js';

export type Phase = 'idle' | 'prompting' | 'awaiting_click' | 'previewing' | 'error';

export class UiSession {
  phase: Phase = 'idle';
  sessionId: string | null = null;
  scene: SessionState | null = null;
  candidates: CandidatePayload[] = [];
  resolved: number | null = null;
  animation: AnimationDocument | null = null;
  warnings: string[] = [];
  errorMessage: string | null = null;
  onChange: (() => void) | null = null;

  private lastAction: (() => Promise<void>) | null = null;

  constructor(private api: SessionApi) {}

  private emit(): void {
    this.onChange?.();
  }

  private fail(err: unknown): void {
    this.phase = 'error';
    this.errorMessage = err instanceof Error ? err.message : String(err);
    this.emit();
  }

  async start(scenePath: string): Promise<void> {
    this.lastAction = () => this.start(scenePath);
    try {
      this.sessionId = await this.api.createSession(scenePath);
      this.scene = await this.api.sessionState(this.sessionId);
      this.phase = 'idle';
      this.candidates = [];
      this.animation = null;
      this.errorMessage = null;
      this.emit();
    } catch (err) {
      this.fail(err);
    }
  }

  async submitPrompt(text: string): Promise<void> {
    if (!this.sessionId) return this.fail(new Error('no session'));
    this.lastAction = () => this.submitPrompt(text);
    this.phase = 'prompting';
    this.emit();
    try {
      const reply = await this.api.sendPrompt(this.sessionId, text);
      this.candidates = reply.candidates;
      this.resolved = reply.resolved;
      this.warnings = reply.warnings;
      if (reply.state === 'awaiting_click') {
        this.phase = 'awaiting_click';
        this.emit();
        return;
      }
      await this.finishSynthesis();
    } catch (err) {
      this.fail(err);
    }
  }

  async clickAt(x: number, y: number): Promise<void> {
    if (!this.sessionId || this.phase !== 'awaiting_click') return;
    this.lastAction = () => this.clickAt(x, y);
    try {
      const reply = await this.api.sendClick(this.sessionId, x, y);
      this.resolved = reply.resolved;
      await this.finishSynthesis();
    } catch (err) {
      this.fail(err);
    }
  }

  private async finishSynthesis(): Promise<void> {
    this.animation = await this.api.synthesize(this.sessionId as string);
    this.phase = 'previewing';
    this.emit();
  }

  async retry(): Promise<void> {
    if (this.phase !== 'error' || !this.lastAction) return;
    this.errorMessage = null;
    await this.lastAction();
  }
}
