/** Thin REST client over the documented contract. The fetch function
 * is injectable so contract tests can replay recorded responses. */

import {
  CheckResponse,
  Diagnostic,
  FileEntry,
  InferenceResponse,
  ShareCreated,
  TutorialBundle,
  TutorialIndexEntry,
} from "./protocol.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
    readonly diagnostics: Diagnostic[] = [],
  ) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "content-type": "application/json" } };
    if (body !== undefined) init.body = JSON.stringify(body);
    const response = await this.fetchFn(this.base + path, init);
    const doc = await response.json().catch(() => ({}));
    if (!response.ok) {
      const detail =
        typeof doc?.detail === "string" ? doc.detail : `request failed (${response.status})`;
      throw new ApiError(response.status, detail, doc?.diagnostics ?? []);
    }
    return doc as T;
  }

  listFiles(): Promise<{ files: string[] }> {
    return this.request("GET", "/api/files");
  }

  readFile(path: string): Promise<{ path: string; content: string }> {
    return this.request("GET", `/api/file?path=${encodeURIComponent(path)}`);
  }

  writeFile(path: string, content: string): Promise<{ ok: boolean }> {
    return this.request("PUT", "/api/file", { path, content });
  }

  check(files: FileEntry[]): Promise<CheckResponse> {
    return this.request("POST", "/api/check", { files });
  }

  inference(
    files: FileEntry[],
    kind: "modelexpand" | "propagate" | "unsatcore",
    theory: string,
    structure: string,
    maxModels?: number,
  ): Promise<InferenceResponse> {
    const body: Record<string, unknown> = { files, kind, theory, structure };
    if (maxModels !== undefined) body.max_models = maxModels;
    return this.request("POST", "/api/inference", body);
  }

  tutorials(): Promise<{ tutorials: TutorialIndexEntry[] }> {
    return this.request("GET", "/api/tutorials");
  }

  tutorial(id: string): Promise<TutorialBundle> {
    return this.request("GET", `/api/tutorials/${encodeURIComponent(id)}`);
  }

  share(files: FileEntry[]): Promise<ShareCreated> {
    return this.request("POST", "/api/share", { files });
  }

  fetchShare(id: string): Promise<{ files: FileEntry[] }> {
    return this.request("GET", `/api/share/${encodeURIComponent(id)}`);
  }
}

/** The share id in a "#share=<id>" location fragment, if any. */
export function shareIdFromFragment(fragment: string): string | null {
  const match = /^share=([0-9a-z]{8})$/.exec(fragment.replace(/^#/, ""));
  return match ? match[1] : null;
}
