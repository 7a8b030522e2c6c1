/**
 * UI state and its pure transitions.
 *
 * The state mirrors the service, it never decodes anything itself: the
 * transcript is whatever the last acknowledged response (or reconcile
 * read) said, and the dot preview tracks which dot keys were pressed
 * since the last committed cell.  Keeping the transitions pure makes
 * them trivially testable without a DOM.
 */

import { KeyEventKind, KeyResult } from "./protocol.js";

/** Numpad key -> braille dot number (left column 1-3, right column 4-6). */
export const DOT_FOR_KEY: ReadonlyMap<number, number> = new Map([
  [7, 1],
  [4, 2],
  [1, 3],
  [8, 4],
  [5, 5],
  [2, 6],
]);

export const FLUSH_KEY = 0;
export const WORD_KEY = 3;
export const SENTENCE_KEY = 6;

export const KEYPAD_KEYS: readonly number[] = [7, 8, 9, 4, 5, 6, 1, 2, 3, 0];

export interface UiState {
  /** dot preview, index 0..5 for dots 1..6 */
  pending: readonly boolean[];
  transcript: string;
  lastEvent: KeyEventKind | null;
  connected: boolean;
}

export function initialState(): UiState {
  return { pending: [false, false, false, false, false, false], transcript: "", lastEvent: null, connected: true };
}

/** Preview change at key-press time, before the service answers. */
export function applyKeyPress(state: UiState, key: number): UiState {
  const dot = DOT_FOR_KEY.get(key);
  if (dot === undefined) {
    return state;
  }
  const pending = state.pending.slice();
  pending[dot - 1] = !pending[dot - 1];
  return { ...state, pending };
}

/** Fold an acknowledged service response into the state. */
export function applyKeyResult(state: UiState, key: number, result: KeyResult): UiState {
  const committed =
    result.event === "error" || key === FLUSH_KEY || key === WORD_KEY || key === SENTENCE_KEY;
  return {
    pending: committed ? initialState().pending : state.pending,
    transcript: result.text,
    lastEvent: result.event,
    connected: state.connected,
  };
}

/** Overwrite the transcript from a reconcile read of the session. */
export function applyReconcile(state: UiState, text: string): UiState {
  return text === state.transcript ? state : { ...state, transcript: text };
}

export function applyDisconnect(state: UiState): UiState {
  return { ...state, connected: false };
}
