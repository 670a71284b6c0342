import { ApiClient, ProtocolRejection, TransportError } from "./api.js";
import { bankMatchesExpected } from "./bank.js";
import { render, type Handlers } from "./render.js";
import {
  attemptSubmit,
  backToHome,
  beginSurvey,
  initialState,
  recordAnswer,
  recordSample,
  submitRejected,
  submitSucceeded,
  transportFailed,
  type SessionState,
} from "./session.js";
import type { AnswerValue, ServerConfig, SessionKind } from "./types.js";

const SNAPSHOT_POLL_MS = 2000;

/**
 * One participant session in a browser tab. Snapshot polling runs on a
 * timer and never blocks answer entry; submission retries reuse the exact
 * pending envelope.
 */
export class App {
  state: SessionState = initialState();
  private api: ApiClient | null = null;
  private pollTimer: ReturnType<typeof setInterval> | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly fetchImpl: typeof fetch = fetch,
    private readonly newKey: () => string = () => crypto.randomUUID(),
    private readonly now: () => number = () => Date.now(),
  ) {}

  configure(config: ServerConfig) {
    this.state = { ...this.state, config };
    this.api = new ApiClient(config, this.fetchImpl);
    this.redraw();
  }

  startPolling() {
    this.stopPolling();
    void this.pollSnapshot();
    this.pollTimer = setInterval(() => void this.pollSnapshot(), SNAPSHOT_POLL_MS);
  }

  stopPolling() {
    if (this.pollTimer !== null) {
      clearInterval(this.pollTimer);
      this.pollTimer = null;
    }
  }

  async pollSnapshot(): Promise<void> {
    if (!this.api) return;
    try {
      const snapshot = await this.api.snapshot();
      this.state = {
        ...this.state,
        connection: { status: "connected", snapshot },
      };
      // surveys capture the readings observed while answering
      if (this.state.phase === "in_survey") {
        this.state = recordSample(this.state, {
          ...snapshot,
          seq: this.state.capturedSamples.length + 1,
          timestamp_ms: this.now(),
        });
      }
    } catch {
      this.state = {
        ...this.state,
        connection: { status: "disconnected", snapshot: this.state.connection.snapshot },
      };
    }
    this.redraw();
  }

  async startSurvey(): Promise<void> {
    if (!this.api) return;
    const bank = await this.api.questions(this.state.sessionKind);
    this.state = {
      ...this.state,
      bank,
      bankTrusted: bankMatchesExpected(bank),
    };
    const snapshot = this.state.connection.snapshot;
    this.state = beginSurvey(this.state, bank.questions, this.state.sessionKind, this.now());
    if (snapshot) {
      this.state = recordSample(this.state, {
        ...snapshot,
        seq: 1,
        timestamp_ms: this.now(),
      });
    }
    this.redraw();
  }

  answer(questionId: string, value: AnswerValue): string | null {
    const { state, error } = recordAnswer(this.state, questionId, value);
    this.state = state;
    this.redraw();
    return error;
  }

  async submit(): Promise<void> {
    const { state, envelope } = attemptSubmit(this.state, this.now(), this.newKey);
    this.state = state;
    this.redraw();
    if (!envelope || !this.api) return; // blocked: missing items highlighted
    try {
      const result = await this.api.submit(envelope);
      this.state = submitSucceeded(this.state, result.submission_id);
    } catch (error) {
      if (error instanceof TransportError) {
        this.state = transportFailed(this.state);
      } else if (error instanceof ProtocolRejection) {
        this.state = submitRejected(this.state, error.reason, error.detail);
      } else {
        throw error;
      }
    }
    this.redraw();
  }

  async retry(): Promise<void> {
    // back through the same gate: the pending envelope is reused verbatim
    await this.submit();
  }

  goHome() {
    this.state = backToHome(this.state);
    this.redraw();
  }

  setSessionKind(kind: SessionKind) {
    this.state = { ...this.state, sessionKind: kind };
    this.redraw();
  }

  redraw() {
    const handlers: Handlers = {
      onStartSurvey: () => void this.startSurvey(),
      onSessionKindChange: (kind) => this.setSessionKind(kind),
      onAnswer: (id, value) => this.answer(id, value),
      onSubmit: () => void this.submit(),
      onRetry: () => void this.retry(),
      onBackHome: () => this.goHome(),
    };
    render(this.root, this.state, handlers);
  }
}
