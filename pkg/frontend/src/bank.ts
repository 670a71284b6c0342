import type { Question, QuestionBank } from "./types.js";

/**
 * SHA-256 of the question bank data file this client was built and tested
 * against. The server reports its bank's content hash; a mismatch means the
 * wording on screen may not be what the study expects, and the client warns
 * before starting a survey.
 */
export const EXPECTED_BANK_HASH =
  "8dee149bcd5dee8fec50d309f95d2bb0b4ef4d60fca5203562be83424ac3434e";

export function bankMatchesExpected(bank: QuestionBank): boolean {
  return bank.content_hash === EXPECTED_BANK_HASH;
}

/** Answer options for one question, as [value, label] pairs. */
export function answerOptions(
  bank: QuestionBank,
  question: Question,
): Array<[string | number, string]> {
  switch (question.answer_kind) {
    case "yes_no":
      return [
        ["Yes", "Yes"],
        ["No", "No"],
      ];
    case "time_slot":
      return bank.time_slot_labels.map((label, index) => [index, label]);
    case "hour_bin":
      return bank.hour_bin_labels.map((label, index) => [index, label]);
    case "rating":
      return [1, 2, 3, 4, 5].map((v) => [v, String(v)]);
    case "non_negative_int":
      return [];
  }
}
