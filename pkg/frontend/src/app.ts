/**
 * DOM wiring for the keypad page.
 *
 * One mounted app owns one service session.  Key handling is strictly
 * serialized: a key is POSTed only after the previous key's response
 * (and the follow-up reconcile read) settled, so responses can never be
 * applied out of order and an unacknowledged request is never resent —
 * on any network failure the app drops into a disconnected state
 * (banner shown, input disabled) instead of guessing.
 */

import { Feedback } from "./audio.js";
import { KeypadService } from "./client.js";
import {
  DOT_FOR_KEY,
  FLUSH_KEY,
  KEYPAD_KEYS,
  SENTENCE_KEY,
  UiState,
  WORD_KEY,
  applyDisconnect,
  applyKeyPress,
  applyKeyResult,
  applyReconcile,
  initialState,
} from "./state.js";

export interface KeypadAppOptions {
  language?: string;
  grade?: number;
}

const KEY_ROLE: ReadonlyMap<number, string> = new Map([
  [FLUSH_KEY, "letter"],
  [WORD_KEY, "word"],
  [SENTENCE_KEY, "sentence"],
]);

function buildDom(root: HTMLElement): void {
  const doc = root.ownerDocument;
  root.classList.add("keypad-app");

  const banner = doc.createElement("div");
  banner.className = "banner hidden";
  banner.dataset.role = "banner";
  banner.textContent = "Connection to the keypad service lost. Restart it and reload this page.";
  root.appendChild(banner);

  const panel = doc.createElement("div");
  panel.className = "panel";
  root.appendChild(panel);

  const cell = doc.createElement("div");
  cell.className = "cell";
  cell.dataset.role = "cell";
  for (let dot = 1; dot <= 6; dot++) {
    const span = doc.createElement("span");
    span.className = "dot";
    span.dataset.dot = String(dot);
    cell.appendChild(span);
  }
  panel.appendChild(cell);

  const pad = doc.createElement("div");
  pad.className = "keypad";
  pad.dataset.role = "keypad";
  for (const key of KEYPAD_KEYS) {
    const btn = doc.createElement("button");
    btn.type = "button";
    btn.dataset.key = String(key);
    const dot = DOT_FOR_KEY.get(key);
    const role = dot !== undefined ? `dot ${dot}` : KEY_ROLE.get(key) ?? "";
    btn.innerHTML = `<b>${key}</b><small>${role}</small>`;
    pad.appendChild(btn);
  }
  panel.appendChild(pad);

  const transcript = doc.createElement("div");
  transcript.className = "transcript";
  transcript.dataset.role = "transcript";
  transcript.setAttribute("aria-live", "polite");
  root.appendChild(transcript);

  const status = doc.createElement("div");
  status.className = "status";
  status.dataset.role = "status";
  root.appendChild(status);
}

export class KeypadApp {
  private state: UiState = initialState();
  private chain: Promise<void> = Promise.resolve();
  private sessionId = "";

  constructor(
    private readonly root: HTMLElement,
    private readonly service: KeypadService,
    private readonly feedback: Feedback,
  ) {}

  async start(options: KeypadAppOptions): Promise<void> {
    buildDom(this.root);
    this.render();
    try {
      const info = await this.service.createSession(options.language ?? "en", options.grade ?? 1);
      this.sessionId = info.session_id;
      this.state = applyReconcile(this.state, info.text);
    } catch {
      this.state = applyDisconnect(this.state);
    }
    this.render();

    this.root.querySelectorAll<HTMLButtonElement>("button[data-key]").forEach((btn) => {
      btn.addEventListener("click", () => {
        void this.pressKey(Number(btn.dataset.key));
      });
    });
    this.root.ownerDocument.addEventListener("keydown", (ev: KeyboardEvent) => {
      if (/^[0-9]$/.test(ev.key)) {
        void this.pressKey(Number(ev.key));
      }
    });
  }

  /** Queue one key press; resolves after its response is fully applied. */
  pressKey(key: number): Promise<void> {
    this.chain = this.chain.then(() => this.handleKey(key));
    return this.chain;
  }

  /** Resolves once every queued key has been processed. */
  idle(): Promise<void> {
    return this.chain;
  }

  get session(): string {
    return this.sessionId;
  }

  getState(): UiState {
    return { ...this.state, pending: this.state.pending.slice() };
  }

  private async handleKey(key: number): Promise<void> {
    if (!this.state.connected || this.sessionId === "") {
      return;
    }
    this.state = applyKeyPress(this.state, key);
    this.render();

    let result;
    try {
      result = await this.service.sendKey(this.sessionId, key);
    } catch {
      this.state = applyDisconnect(this.state);
      this.render();
      return;
    }

    this.state = applyKeyResult(this.state, key, result);
    if (result.event === "error") {
      this.feedback.beep();
    } else if (result.event === "letter" && result.emitted.trim() !== "") {
      this.feedback.say(result.emitted);
    }
    this.render();

    // the transcript shown must match the session after every key
    try {
      const text = await this.service.getText(this.sessionId);
      this.state = applyReconcile(this.state, text);
    } catch {
      this.state = applyDisconnect(this.state);
    }
    this.render();
  }

  private render(): void {
    const q = (sel: string) => this.root.querySelector<HTMLElement>(sel);
    this.root
      .querySelectorAll<HTMLElement>(".dot")
      .forEach((dot) =>
        dot.classList.toggle("filled", this.state.pending[Number(dot.dataset.dot) - 1]),
      );
    const transcript = q('[data-role="transcript"]');
    if (transcript) transcript.textContent = this.state.transcript;
    const banner = q('[data-role="banner"]');
    if (banner) banner.classList.toggle("hidden", this.state.connected);
    const status = q('[data-role="status"]');
    if (status) status.textContent = this.state.lastEvent ?? "";
    this.root
      .querySelectorAll<HTMLButtonElement>("button[data-key]")
      .forEach((btn) => (btn.disabled = !this.state.connected));
  }
}

export async function mountKeypad(
  root: HTMLElement,
  service: KeypadService,
  feedback: Feedback,
  options: KeypadAppOptions = {},
): Promise<KeypadApp> {
  const app = new KeypadApp(root, service, feedback);
  await app.start(options);
  return app;
}
