import type { BrushesResponse, JobView, StrokeRequest } from "./types.js";

export class ApiError extends Error {
  code: string;
  field?: string;
  status: number;

  constructor(status: number, code: string, message: string, field?: string) {
    super(message);
    this.status = status;
    this.code = code;
    this.field = field;
  }
}

async function raiseFor(reply: Response): Promise<never> {
  let code = "error";
  let message = `${reply.status} ${reply.statusText}`;
  let field: string | undefined;
  try {
    const body = await reply.json();
    code = body.code ?? code;
    message = body.message ?? message;
    field = body.field;
  } catch {
    /* non-JSON error body */
  }
  throw new ApiError(reply.status, code, message, field);
}

/** Thin typed client for the engine API; performs no image processing. */
export class EngineApi {
  constructor(readonly base: string = "") {}

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const reply = await fetch(this.base + path, init);
    if (!reply.ok) await raiseFor(reply);
    return (await reply.json()) as T;
  }

  private async bytes(path: string): Promise<Uint8Array> {
    const reply = await fetch(this.base + path);
    if (!reply.ok) await raiseFor(reply);
    return new Uint8Array(await reply.arrayBuffer());
  }

  getBrushes(): Promise<BrushesResponse> {
    return this.json("/api/brushes");
  }

  async uploadCanvas(png: Uint8Array): Promise<{ width: number; height: number }> {
    const body = new Uint8Array(png).buffer as ArrayBuffer;
    return this.json("/api/canvas", {
      method: "POST",
      headers: { "Content-Type": "image/png" },
      body,
    });
  }

  /** Raw PNG bytes exactly as the server rendered them. */
  fetchCanvas(): Promise<Uint8Array> {
    return this.bytes("/api/canvas");
  }

  submitStroke(request: StrokeRequest): Promise<{ job_id: string }> {
    return this.json("/api/strokes", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
    });
  }

  listJobs(): Promise<{ jobs: JobView[] }> {
    return this.json("/api/jobs");
  }

  getJob(jobId: string): Promise<JobView> {
    return this.json(`/api/jobs/${jobId}`);
  }

  runJob(jobId: string, seed?: number): Promise<JobView> {
    const init: RequestInit = { method: "POST" };
    if (seed !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify({ seed });
    }
    return this.json(`/api/jobs/${jobId}/run`, init);
  }

  pasteJob(jobId: string): Promise<JobView> {
    return this.json(`/api/jobs/${jobId}/paste`, { method: "POST" });
  }

  deleteJob(jobId: string): Promise<{ deleted: string }> {
    return this.json(`/api/jobs/${jobId}`, { method: "DELETE" });
  }

  fetchPreview(jobId: string): Promise<Uint8Array> {
    return this.bytes(`/api/jobs/${jobId}/preview`);
  }
}
