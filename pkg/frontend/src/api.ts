/**
 * Thin typed client for the review service.
 *
 * Every failure surfaces as an ApiError. HTTP errors carry the server's
 * status code and detail message; transport failures use status 0 so
 * callers can tell "server said no" apart from "server unreachable".
 */

import type {
  Candidate,
  CandidatePage,
  CandidateStatus,
  Decision,
  Progress,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  readonly status: number;
  readonly item: Candidate | null;

  constructor(status: number, detail: string, item: Candidate | null = null) {
    super(detail);
    this.name = "ApiError";
    this.status = status;
    this.item = item;
  }
}

export interface ReviewApi {
  fetchPage(
    status: CandidateStatus | "all",
    offset: number,
    limit: number,
  ): Promise<CandidatePage>;
  sendDecision(
    subject: string,
    object: string,
    decision: Decision,
    annotator: string,
  ): Promise<Candidate>;
  fetchProgress(): Promise<Progress>;
}

async function errorFrom(response: Response): Promise<ApiError> {
  let detail = `request failed with status ${response.status}`;
  let item: Candidate | null = null;
  try {
    const body = await response.json();
    if (body && typeof body.detail === "string") {
      detail = body.detail;
    }
    if (body && typeof body.item === "object" && body.item !== null) {
      item = body.item as Candidate;
    }
  } catch {
    // not a JSON body; keep the generic detail
  }
  return new ApiError(response.status, detail, item);
}

export function createApi(baseUrl = "", fetchFn?: FetchLike): ReviewApi {
  // bind lazily so a stubbed globalThis.fetch is picked up per call
  const doFetch: FetchLike = fetchFn ?? ((input, init) => globalThis.fetch(input, init));

  async function request(path: string, init?: RequestInit): Promise<Response> {
    let response: Response;
    try {
      response = await doFetch(baseUrl + path, init);
    } catch (error) {
      const reason = error instanceof Error ? error.message : String(error);
      throw new ApiError(0, reason);
    }
    if (!response.ok) {
      throw await errorFrom(response);
    }
    return response;
  }

  return {
    async fetchPage(status, offset, limit) {
      const query = new URLSearchParams({
        status,
        offset: String(offset),
        limit: String(limit),
      });
      const response = await request(`/api/candidates?${query.toString()}`);
      return (await response.json()) as CandidatePage;
    },

    async sendDecision(subject, object, decision, annotator) {
      const response = await request("/api/candidates/decision", {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ subject, object, decision, annotator }),
      });
      return (await response.json()) as Candidate;
    },

    async fetchProgress() {
      const response = await request("/api/progress");
      return (await response.json()) as Progress;
    },
  };
}
