/** Thin typed client for the mutation service; no logic beyond HTTP. */

import type { ErrorBody, SearchRequest, SearchResponse, SessionState } from "./types.js";

export class ApiError extends Error {
  readonly code: string;
  readonly status: number;

  constructor(status: number, code: string, message: string) {
    super(message);
    this.name = "ApiError";
    this.status = status;
    this.code = code;
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(url, init);
  } catch (err) {
    throw new ApiError(0, "network", `cannot reach the service: ${String(err)}`);
  }
  let body: unknown = null;
  try {
    body = await response.json();
  } catch {
    // fall through: non-JSON body handled below
  }
  if (!response.ok) {
    const error = (body as ErrorBody | null)?.error;
    throw new ApiError(response.status,
      error?.code ?? "http-error",
      error?.message ?? `service returned ${response.status}`);
  }
  return body as T;
}

function post(body: unknown): RequestInit {
  return {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  };
}

export class Client {
  constructor(private readonly baseUrl: string = "") {}

  health(): Promise<{ status: string }> {
    return request(`${this.baseUrl}/api/health`);
  }

  createSession(document: unknown): Promise<SessionState> {
    return request(`${this.baseUrl}/api/session`, post(document));
  }

  getState(id: string): Promise<SessionState> {
    return request(`${this.baseUrl}/api/session/${encodeURIComponent(id)}`);
  }

  mutate(id: string, vertex: number): Promise<SessionState> {
    return request(`${this.baseUrl}/api/session/${encodeURIComponent(id)}/mutate`,
      post({ vertex }));
  }

  undo(id: string): Promise<SessionState> {
    return request(`${this.baseUrl}/api/session/${encodeURIComponent(id)}/undo`,
      post({}));
  }

  search(id: string, body: SearchRequest): Promise<SearchResponse> {
    return request(`${this.baseUrl}/api/session/${encodeURIComponent(id)}/search`,
      post(body));
  }
}
