export type SessionKind = "first_of_day" | "subsequent";

export type AnswerKind =
  | "yes_no"
  | "time_slot"
  | "hour_bin"
  | "rating"
  | "non_negative_int";

export type AnswerValue = string | number;

export interface Question {
  id: string;
  survey: "psqi" | "pss" | "k10" | "people";
  text: string;
  answer_kind: AnswerKind;
  order: number;
}

export interface QuestionBank {
  version: number;
  content_hash: string;
  time_slot_labels: string[];
  hour_bin_labels: string[];
  questions: Question[];
}

export interface Snapshot {
  seq: number;
  timestamp_ms: number;
  temperature: number;
  humidity: number;
  pressure: number;
  luminosity: number;
  audio: number;
}

export interface SampleRecord {
  seq: number;
  timestamp_ms: number;
  temperature: number;
  humidity: number;
  pressure: number;
  luminosity: number;
  audio: number;
}

export interface Envelope {
  idempotency_key: string;
  response: {
    session_kind: SessionKind;
    answers: Record<string, AnswerValue>;
  };
  samples: SampleRecord[];
  client_session_start_ms: number;
  client_session_end_ms: number;
}

export interface ServerConfig {
  baseUrl: string;
  token: string;
}

export const SENSOR_VARIABLES = [
  "temperature",
  "humidity",
  "pressure",
  "luminosity",
  "audio",
] as const;

export type SensorVariable = (typeof SENSOR_VARIABLES)[number];
