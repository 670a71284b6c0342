import { answerOptions } from "./bank.js";
import type { SessionState } from "./session.js";
import {
  canStartSurvey,
  isComplete,
  isRegistered,
  missingAnswers,
  nextAllowedMs,
  zeroReadingVariables,
} from "./session.js";
import type { AnswerValue, Question } from "./types.js";
import { SENSOR_VARIABLES } from "./types.js";

export interface Handlers {
  onStartSurvey(): void;
  onSessionKindChange(kind: "first_of_day" | "subsequent"): void;
  onAnswer(questionId: string, value: AnswerValue): string | null;
  onSubmit(): void;
  onRetry(): void;
  onBackHome(): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  if (text !== undefined) node.textContent = text;
  return node;
}

export function render(root: HTMLElement, state: SessionState, handlers: Handlers) {
  const doc = root.ownerDocument;
  root.textContent = "";
  switch (state.phase) {
    case "home":
      root.appendChild(renderHome(doc, state, handlers));
      break;
    case "in_survey":
      root.appendChild(renderSurvey(doc, state, handlers));
      break;
    case "submitting":
      root.appendChild(el(doc, "p", { id: "submitting" }, "Sending your answers..."));
      break;
    case "retry_prompt":
      root.appendChild(renderRetryPrompt(doc, handlers));
      break;
    case "done":
      root.appendChild(renderDone(doc, state, handlers));
      break;
  }
}

function renderHome(doc: Document, state: SessionState, handlers: Handlers): HTMLElement {
  const home = el(doc, "section", { id: "home" });
  home.appendChild(el(doc, "h1", {}, "Wellness check-in"));

  const readings = el(doc, "dl", { id: "sensor-readings" });
  const snapshot = state.connection.snapshot;
  for (const name of SENSOR_VARIABLES) {
    readings.appendChild(el(doc, "dt", {}, name));
    readings.appendChild(
      el(
        doc,
        "dd",
        { id: `snap-${name}` },
        snapshot ? snapshot[name].toFixed(2) : "-",
      ),
    );
  }
  home.appendChild(readings);

  const zeroed = zeroReadingVariables(snapshot);
  if (zeroed.length > 0) {
    home.appendChild(
      el(
        doc,
        "p",
        { id: "zero-warning", class: "warning" },
        `Warning: ${zeroed.join(", ")} reading exactly zero - the sensor ` +
          "battery may be running low. Contact the researcher for a replacement.",
      ),
    );
  }
  if (state.connection.status !== "connected") {
    home.appendChild(
      el(doc, "p", { id: "reconnect-prompt" },
         "Sensor not connected - check the board and the service address."),
    );
  }
  if (!isRegistered(state)) {
    home.appendChild(
      el(doc, "p", { id: "register-prompt" },
         "Enter the server address and your access token in settings first."),
    );
  }
  if (state.bank && !state.bankTrusted) {
    home.appendChild(
      el(doc, "p", { id: "bank-mismatch", class: "warning" },
         "The server's questionnaire differs from the one this client was " +
           "verified against."),
    );
  }

  const allowedAt = nextAllowedMs(state);
  if (allowedAt !== null) {
    home.appendChild(
      el(doc, "p", { id: "next-allowed" },
         `Next submission allowed after ${new Date(allowedAt).toLocaleString()}.`),
    );
  }

  const kindRow = el(doc, "div", { id: "session-kind" });
  for (const kind of ["first_of_day", "subsequent"] as const) {
    const label = el(doc, "label");
    const radio = el(doc, "input", {
      type: "radio",
      name: "session-kind",
      value: kind,
      id: `kind-${kind}`,
    }) as HTMLInputElement;
    radio.checked = state.sessionKind === kind;
    radio.addEventListener("change", () => handlers.onSessionKindChange(kind));
    label.appendChild(radio);
    label.appendChild(
      doc.createTextNode(
        kind === "first_of_day" ? " First check-in today" : " Later check-in",
      ),
    );
    kindRow.appendChild(label);
  }
  home.appendChild(kindRow);

  const start = el(doc, "button", { id: "start-survey" }, "Start Survey") as HTMLButtonElement;
  start.disabled = !canStartSurvey(state);
  start.addEventListener("click", () => handlers.onStartSurvey());
  home.appendChild(start);
  return home;
}

function renderSurvey(doc: Document, state: SessionState, handlers: Handlers): HTMLElement {
  const form = el(doc, "form", { id: "survey-form" });
  form.addEventListener("submit", (event) => event.preventDefault());
  const missing = new Set(missingAnswers(state));

  for (const question of state.questions) {
    form.appendChild(renderQuestion(doc, state, question, missing, handlers));
  }

  const status = el(
    doc,
    "p",
    { id: "completeness" },
    `${state.questions.length - missing.size} of ${state.questions.length} answered`,
  );
  form.appendChild(status);

  const submit = el(doc, "button", { id: "submit", type: "button" }, "Submit") as HTMLButtonElement;
  submit.addEventListener("click", () => handlers.onSubmit());
  form.appendChild(submit);
  return form;
}

function renderQuestion(
  doc: Document,
  state: SessionState,
  question: Question,
  missing: Set<string>,
  handlers: Handlers,
): HTMLElement {
  const answered = !missing.has(question.id);
  const highlighted = state.highlighted.includes(question.id);
  const block = el(doc, "fieldset", {
    id: `q-${question.id}`,
    class: ["question", answered ? "answered" : "unanswered",
            highlighted ? "highlight-missing" : ""].join(" ").trim(),
    "data-survey": question.survey,
  });
  const legend = el(doc, "legend");
  legend.appendChild(el(doc, "span", { class: "question-text" }, question.text));
  legend.appendChild(
    el(doc, "span", { class: "badge" }, answered ? "answered" : "unanswered"),
  );
  block.appendChild(legend);

  const errorSlot = el(doc, "span", { class: "inline-error" });
  const bank = state.bank!;
  if (question.answer_kind === "non_negative_int") {
    const input = el(doc, "input", {
      type: "number", min: "0", step: "1",
      name: question.id,
    }) as HTMLInputElement;
    const current = state.answers[question.id];
    if (current !== undefined) input.value = String(current);
    input.addEventListener("change", () => {
      const parsed = Number(input.value);
      const error = handlers.onAnswer(question.id, parsed);
      errorSlot.textContent = error ?? "";
    });
    block.appendChild(input);
  } else {
    for (const [value, label] of answerOptions(bank, question)) {
      const wrapper = el(doc, "label");
      const radio = el(doc, "input", {
        type: "radio",
        name: question.id,
        value: String(value),
      }) as HTMLInputElement;
      radio.checked = state.answers[question.id] === value;
      radio.addEventListener("change", () => {
        const error = handlers.onAnswer(question.id, value);
        errorSlot.textContent = error ?? "";
      });
      wrapper.appendChild(radio);
      wrapper.appendChild(doc.createTextNode(" " + label));
      block.appendChild(wrapper);
    }
  }
  block.appendChild(errorSlot);
  return block;
}

function renderRetryPrompt(doc: Document, handlers: Handlers): HTMLElement {
  const section = el(doc, "section", { id: "retry-prompt" });
  section.appendChild(
    el(doc, "p", {},
       "Could not reach the server. Connect to WiFi, then try again - your " +
         "answers are kept and will not be submitted twice."),
  );
  const retry = el(doc, "button", { id: "retry" }, "Retry submission");
  retry.addEventListener("click", () => handlers.onRetry());
  section.appendChild(retry);
  return section;
}

function renderDone(doc: Document, state: SessionState, handlers: Handlers): HTMLElement {
  const section = el(doc, "section", { id: "done" });
  const outcome = state.outcome;
  if (outcome?.kind === "accepted") {
    section.appendChild(
      el(doc, "p", { id: "confirmation" },
         `Submission received - reference ${outcome.submissionId}. Thank you!`),
    );
  } else if (outcome?.kind === "rejected") {
    section.appendChild(
      el(doc, "p", { id: "rejection", "data-reason": outcome.reason ?? "" },
         rejectionMessage(state, outcome.reason ?? "", outcome.detail ?? "")),
    );
  }
  const back = el(doc, "button", { id: "back-home" }, "Back to home");
  back.addEventListener("click", () => handlers.onBackHome());
  section.appendChild(back);
  return section;
}

function rejectionMessage(state: SessionState, reason: string, detail: string): string {
  switch (reason) {
    case "too_many_today":
      return "Daily limit reached - three submissions per day. See you tomorrow!";
    case "too_soon": {
      const allowedAt = nextAllowedMs(state);
      const when = allowedAt ? ` after ${new Date(allowedAt).toLocaleString()}` : "";
      return `Too soon since your last submission - try again${when}.`;
    }
    case "wrong_session_kind":
      return "Wrong check-in type for this time of day: " + detail;
    default:
      return `The server rejected the submission (${reason}): ${detail}`;
  }
}
