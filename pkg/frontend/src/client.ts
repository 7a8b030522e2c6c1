/**
 * HTTP client for the keypad service.
 *
 * One method per endpoint, no state: session handling, ordering and
 * retry policy live in the app layer.  Requests carry an abort timeout
 * so a dead server surfaces as an error instead of a hang.
 */

import { KeyResult, SessionInfo, parseKeyResult, parseSessionInfo } from "./protocol.js";

export interface KeypadService {
  createSession(language: string, grade: number): Promise<SessionInfo>;
  sendKey(sessionId: string, key: number): Promise<KeyResult>;
  getText(sessionId: string): Promise<string>;
}

export type FetchFn = typeof fetch;

export class ServiceError extends Error {
  constructor(message: string, readonly status?: number) {
    super(message);
  }
}

export class HttpKeypadService implements KeypadService {
  constructor(
    private readonly baseUrl: string = "",
    private readonly timeoutMs: number = 5000,
    private readonly fetchFn: FetchFn = (...args) => fetch(...args),
  ) {}

  private async request(path: string, init?: RequestInit): Promise<unknown> {
    const resp = await this.fetchFn(this.baseUrl + path, {
      ...init,
      // timeoutMs <= 0 disables the abort timer (used by tests whose
      // fetch lives in a different realm than the page's AbortSignal)
      signal: this.timeoutMs > 0 ? AbortSignal.timeout(this.timeoutMs) : undefined,
    });
    if (!resp.ok) {
      throw new ServiceError(`${path}: HTTP ${resp.status}`, resp.status);
    }
    return resp.json();
  }

  async createSession(language: string, grade: number): Promise<SessionInfo> {
    const body = await this.request("/session", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ language, grade }),
    });
    return parseSessionInfo(body);
  }

  async sendKey(sessionId: string, key: number): Promise<KeyResult> {
    const body = await this.request(`/session/${encodeURIComponent(sessionId)}/key`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ key }),
    });
    return parseKeyResult(body);
  }

  async getText(sessionId: string): Promise<string> {
    const body = await this.request(`/session/${encodeURIComponent(sessionId)}`);
    return parseSessionInfo(body).text;
  }
}
