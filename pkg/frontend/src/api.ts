/** Thin fetch client for the suggestion service. Error bodies pass through verbatim. */

import type { ApplyResponse, Session, SuggestRequest } from "./types.js";

/** Non-2xx response. `message` is the server's error string, unedited. */
export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

/** fetch itself failed: server down, connection refused, DNS. */
export class ConnectionError extends Error {
  constructor(cause: unknown) {
    super("cannot reach the suggestion service");
    this.name = "ConnectionError";
    this.cause = cause;
  }
}

async function errorMessage(res: Response): Promise<string> {
  const text = await res.text();
  try {
    const body = JSON.parse(text);
    if (body && typeof body.error === "string") return body.error;
  } catch {
    /* not JSON: fall through to the raw text */
  }
  return text || `HTTP ${res.status}`;
}

async function request(path: string, init?: RequestInit): Promise<Response> {
  let res: Response;
  try {
    res = await fetch(path, init);
  } catch (cause) {
    throw new ConnectionError(cause);
  }
  if (!res.ok) throw new ApiError(res.status, await errorMessage(res));
  return res;
}

async function postJson(path: string, payload: unknown): Promise<Response> {
  return request(path, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(payload),
  });
}

export async function suggest(req: SuggestRequest): Promise<Session> {
  const res = await postJson("/suggest", req);
  return (await res.json()) as Session;
}

export async function apply(session: string, group: number): Promise<ApplyResponse> {
  const res = await postJson("/apply", { session, group });
  return (await res.json()) as ApplyResponse;
}

export async function source(path: string): Promise<string> {
  const res = await request(`/source?path=${encodeURIComponent(path)}`);
  return res.text();
}
