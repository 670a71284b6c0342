import type {
  AnswerValue,
  Envelope,
  Question,
  QuestionBank,
  SampleRecord,
  ServerConfig,
  SessionKind,
  Snapshot,
} from "./types.js";
import { SENSOR_VARIABLES } from "./types.js";

export type Phase = "home" | "in_survey" | "submitting" | "done" | "retry_prompt";

export interface ConnectionState {
  status: "disconnected" | "connected";
  snapshot: Snapshot | null;
}

export interface SubmissionOutcome {
  kind: "accepted" | "rejected";
  submissionId?: string;
  reason?: string;
  detail?: string;
}

export interface SessionState {
  phase: Phase;
  config: ServerConfig | null;
  connection: ConnectionState;
  bank: QuestionBank | null;
  bankTrusted: boolean;
  sessionKind: SessionKind;
  questions: Question[];
  answers: Record<string, AnswerValue>;
  /** ids highlighted after a blocked submit attempt */
  highlighted: string[];
  /** the in-flight envelope; retries must reuse it untouched */
  pendingEnvelope: Envelope | null;
  capturedSamples: SampleRecord[];
  sessionStartMs: number | null;
  outcome: SubmissionOutcome | null;
  /** session-end times of submissions this client saw accepted */
  acceptedEndsMs: number[];
  minGapHours: number;
}

export function initialState(): SessionState {
  return {
    phase: "home",
    config: null,
    connection: { status: "disconnected", snapshot: null },
    bank: null,
    bankTrusted: false,
    sessionKind: "first_of_day",
    questions: [],
    answers: {},
    highlighted: [],
    pendingEnvelope: null,
    capturedSamples: [],
    sessionStartMs: null,
    outcome: null,
    acceptedEndsMs: [],
    minGapHours: 2,
  };
}

export function isRegistered(state: SessionState): boolean {
  return state.config !== null && state.config.token.length > 0;
}

export function canStartSurvey(state: SessionState): boolean {
  return (
    state.phase === "home" &&
    isRegistered(state) &&
    state.connection.status === "connected"
  );
}

/** Variables reading exactly zero: the dying-battery warning trigger. */
export function zeroReadingVariables(snapshot: Snapshot | null): string[] {
  if (!snapshot) return [];
  return SENSOR_VARIABLES.filter((name) => snapshot[name] === 0);
}

/** Earliest next time a submission is allowed, or null when unconstrained. */
export function nextAllowedMs(state: SessionState): number | null {
  if (state.acceptedEndsMs.length === 0) return null;
  const latest = Math.max(...state.acceptedEndsMs);
  return latest + state.minGapHours * 3_600_000;
}

export function validateAnswer(
  bank: QuestionBank,
  question: Question,
  value: AnswerValue,
): string | null {
  switch (question.answer_kind) {
    case "yes_no":
      return value === "Yes" || value === "No" ? null : "answer Yes or No";
    case "time_slot":
      return isIndex(value, bank.time_slot_labels.length)
        ? null
        : "pick a time slot";
    case "hour_bin":
      return isIndex(value, bank.hour_bin_labels.length)
        ? null
        : "pick an hour range";
    case "rating":
      return typeof value === "number" && Number.isInteger(value) && value >= 1 && value <= 5
        ? null
        : "rate from 1 to 5";
    case "non_negative_int":
      return typeof value === "number" && Number.isInteger(value) && value >= 0
        ? null
        : "enter a whole number of people (0 or more)";
  }
}

function isIndex(value: AnswerValue, length: number): boolean {
  return (
    typeof value === "number" && Number.isInteger(value) && value >= 0 && value < length
  );
}

/** Ids still missing a well-typed answer, in question order. */
export function missingAnswers(state: SessionState): string[] {
  if (!state.bank) return state.questions.map((q) => q.id);
  const bank = state.bank;
  return state.questions
    .filter((question) => {
      const value = state.answers[question.id];
      return value === undefined || validateAnswer(bank, question, value) !== null;
    })
    .map((question) => question.id);
}

export function isComplete(state: SessionState): boolean {
  return state.questions.length > 0 && missingAnswers(state).length === 0;
}

export function beginSurvey(
  state: SessionState,
  questions: Question[],
  sessionKind: SessionKind,
  nowMs: number,
): SessionState {
  return {
    ...state,
    phase: "in_survey",
    sessionKind,
    questions,
    answers: {},
    highlighted: [],
    pendingEnvelope: null,
    capturedSamples: [],
    sessionStartMs: nowMs,
    outcome: null,
  };
}

/**
 * Record one answer. Ill-typed values are rejected at entry and leave the
 * state untouched apart from the returned message.
 */
export function recordAnswer(
  state: SessionState,
  questionId: string,
  value: AnswerValue,
): { state: SessionState; error: string | null } {
  const question = state.questions.find((q) => q.id === questionId);
  if (!question || !state.bank) {
    return { state, error: "unknown question" };
  }
  const error = validateAnswer(state.bank, question, value);
  if (error) {
    return { state, error };
  }
  const answers = { ...state.answers, [questionId]: value };
  const highlighted = state.highlighted.filter((id) => id !== questionId);
  return { state: { ...state, answers, highlighted }, error: null };
}

export function recordSample(state: SessionState, sample: SampleRecord): SessionState {
  return { ...state, capturedSamples: [...state.capturedSamples, sample] };
}

/**
 * Attempt to move to submission. When incomplete, the submit stays blocked
 * and every unanswered item is highlighted; no envelope is built, so the
 * server can never see an incomplete survey from this client.
 */
export function attemptSubmit(
  state: SessionState,
  nowMs: number,
  newKey: () => string,
): { state: SessionState; envelope: Envelope | null } {
  const missing = missingAnswers(state);
  if (missing.length > 0) {
    return { state: { ...state, highlighted: missing }, envelope: null };
  }
  // a retry after transport failure reuses the envelope untouched,
  // idempotency key included
  const envelope: Envelope = state.pendingEnvelope ?? {
    idempotency_key: newKey(),
    response: {
      session_kind: state.sessionKind,
      answers: { ...state.answers },
    },
    samples: state.capturedSamples,
    client_session_start_ms: state.sessionStartMs ?? nowMs - 1,
    client_session_end_ms: nowMs,
  };
  return {
    state: { ...state, phase: "submitting", pendingEnvelope: envelope },
    envelope,
  };
}

export function submitSucceeded(
  state: SessionState,
  submissionId: string,
): SessionState {
  const endMs = state.pendingEnvelope?.client_session_end_ms;
  return {
    ...state,
    phase: "done",
    outcome: { kind: "accepted", submissionId },
    pendingEnvelope: null,
    acceptedEndsMs:
      endMs === undefined ? state.acceptedEndsMs : [...state.acceptedEndsMs, endMs],
  };
}

/** Transport failure: keep the envelope for an identical resend. */
export function transportFailed(state: SessionState): SessionState {
  return { ...state, phase: "retry_prompt" };
}

/** Protocol rejection (4xx): terminal explanation, nothing to retry. */
export function submitRejected(
  state: SessionState,
  reason: string,
  detail: string,
): SessionState {
  return {
    ...state,
    phase: "done",
    outcome: { kind: "rejected", reason, detail },
    pendingEnvelope: null,
  };
}

export function backToHome(state: SessionState): SessionState {
  return {
    ...state,
    phase: "home",
    questions: [],
    answers: {},
    highlighted: [],
    pendingEnvelope: null,
    capturedSamples: [],
    sessionStartMs: null,
  };
}
