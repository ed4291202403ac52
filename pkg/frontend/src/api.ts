/** Thin typed client for the review service. fetch is injectable for tests. */

import type {
  AbAggregate,
  AbItemView,
  Preview,
  PreviewOverrides,
  Task,
  TaskPage,
  Verdict,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    public detail: string,
    public reasons: string[] = []
  ) {
    super(`${code}: ${detail}`);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function parseError(resp: Response): Promise<ApiError> {
  let code = "http_error";
  let detail = resp.statusText;
  let reasons: string[] = [];
  try {
    const body = await resp.json();
    code = body.error ?? code;
    detail = body.detail ?? detail;
    reasons = body.reasons ?? [];
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(resp.status, code, detail, reasons);
}

export class ApiClient {
  constructor(
    private baseUrl = "",
    private fetchFn: FetchLike = (input, init) => fetch(input, init)
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(this.baseUrl + path, init);
    if (!resp.ok) {
      throw await parseError(resp);
    }
    return (await resp.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  listTasks(status?: string, limit?: number, cursor?: string): Promise<TaskPage> {
    const params = new URLSearchParams();
    if (status) params.set("status", status);
    if (limit !== undefined) params.set("limit", String(limit));
    if (cursor) params.set("cursor", cursor);
    const query = params.toString();
    return this.request<TaskPage>(`/api/tasks${query ? "?" + query : ""}`);
  }

  getTask(id: string): Promise<Task> {
    return this.request<Task>(`/api/tasks/${encodeURIComponent(id)}`);
  }

  resolveTask(id: string, correctedText: string, annotatorId: string): Promise<Task> {
    return this.post<Task>(`/api/tasks/${encodeURIComponent(id)}/resolve`, {
      corrected_text: correctedText,
      annotator_id: annotatorId,
    });
  }

  skipTask(id: string, annotatorId: string): Promise<Task> {
    return this.post<Task>(`/api/tasks/${encodeURIComponent(id)}/skip`, {
      annotator_id: annotatorId,
    });
  }

  preview(text: string, overrides: PreviewOverrides = {}): Promise<Preview> {
    return this.post<Preview>("/api/normalize/preview", { text, ...overrides });
  }

  nextAbItem(annotatorId: string): Promise<AbItemView | null> {
    return this.request<{ item: AbItemView | null }>(
      `/api/abtests/next?annotator_id=${encodeURIComponent(annotatorId)}`
    ).then((body) => body.item);
  }

  judge(itemId: string, annotatorId: string, verdict: Verdict): Promise<number> {
    return this.post<{ recorded: number }>(
      `/api/abtests/${encodeURIComponent(itemId)}/judgment`,
      { annotator_id: annotatorId, verdict }
    ).then((body) => body.recorded);
  }

  abAggregate(reference: string): Promise<AbAggregate> {
    return this.request<AbAggregate>(
      `/api/abtests/aggregate?reference=${encodeURIComponent(reference)}`
    );
  }

  audioUrl(id: string): string {
    return `${this.baseUrl}/api/audio/${encodeURIComponent(id)}`;
  }
}
