/**
 * Wire types for the local keypad service.
 *
 * The service speaks plain JSON over localhost; these guards keep a
 * malformed or half-upgraded server from silently corrupting UI state.
 */

export type KeyEventKind = "letter" | "word_boundary" | "sentence_end" | "error";

export interface SessionInfo {
  session_id: string;
  language: string;
  grade: number;
  text: string;
}

export interface KeyResult {
  event: KeyEventKind;
  emitted: string;
  text: string;
}

export class ProtocolError extends Error {}

const EVENT_KINDS: ReadonlySet<string> = new Set([
  "letter",
  "word_boundary",
  "sentence_end",
  "error",
]);

function asRecord(x: unknown, what: string): Record<string, unknown> {
  if (typeof x !== "object" || x === null || Array.isArray(x)) {
    throw new ProtocolError(`${what}: expected a JSON object`);
  }
  return x as Record<string, unknown>;
}

function str(rec: Record<string, unknown>, field: string, what: string): string {
  const v = rec[field];
  if (typeof v !== "string") {
    throw new ProtocolError(`${what}: field "${field}" must be a string`);
  }
  return v;
}

export function parseSessionInfo(x: unknown): SessionInfo {
  const rec = asRecord(x, "session");
  const grade = rec["grade"];
  if (typeof grade !== "number") {
    throw new ProtocolError('session: field "grade" must be a number');
  }
  return {
    session_id: str(rec, "session_id", "session"),
    language: str(rec, "language", "session"),
    grade,
    text: str(rec, "text", "session"),
  };
}

export function parseKeyResult(x: unknown): KeyResult {
  const rec = asRecord(x, "key result");
  const event = str(rec, "event", "key result");
  if (!EVENT_KINDS.has(event)) {
    throw new ProtocolError(`key result: unknown event "${event}"`);
  }
  return {
    event: event as KeyEventKind,
    emitted: str(rec, "emitted", "key result"),
    text: str(rec, "text", "key result"),
  };
}
