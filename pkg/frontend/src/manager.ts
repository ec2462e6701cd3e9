import { EngineApi } from "./api.js";
import { buildRequest, validateDraft } from "./state.js";
import type {
  BrushDescriptor,
  JobView,
  StrokeDraft,
  Violation,
} from "./types.js";

export class DraftInvalidError extends Error {
  constructor(readonly violations: Violation[]) {
    super(violations.map((v) => `${v.field}: ${v.message}`).join("; "));
  }
}

/** DOM-free studio controller: holds exactly what the view should display.
 * Every canvas or preview byte comes verbatim from the server. */
export class StudioController {
  readonly api: EngineApi;
  jobs: JobView[] = [];
  canvasBytes: Uint8Array | null = null;
  canvasSize: { width: number; height: number } | null = null;
  onJobsChanged: (jobs: JobView[]) => void = () => {};
  onCanvasChanged: (bytes: Uint8Array) => void = () => {};
  private pollTimer: ReturnType<typeof setInterval> | null = null;

  constructor(api: EngineApi) {
    this.api = api;
  }

  async uploadCanvas(png: Uint8Array): Promise<void> {
    this.canvasSize = await this.api.uploadCanvas(png);
    await this.refreshCanvas();
  }

  async refreshCanvas(): Promise<void> {
    this.canvasBytes = await this.api.fetchCanvas();
    this.onCanvasChanged(this.canvasBytes);
  }

  /** Validate client-side, then submit; returns the new job id. */
  async submit(draft: StrokeDraft, descriptor: BrushDescriptor): Promise<string> {
    const violations = validateDraft(draft, descriptor);
    if (violations.length > 0) throw new DraftInvalidError(violations);
    const { job_id } = await this.api.submitStroke(buildRequest(draft, descriptor));
    await this.pollOnce();
    return job_id;
  }

  async pollOnce(): Promise<JobView[]> {
    const { jobs } = await this.api.listJobs();
    this.jobs = jobs;
    this.onJobsChanged(jobs);
    return jobs;
  }

  startPolling(intervalMs = 1000): void {
    this.stopPolling();
    this.pollTimer = setInterval(() => {
      void this.pollOnce().catch(() => {});
    }, intervalMs);
  }

  stopPolling(): void {
    if (this.pollTimer !== null) {
      clearInterval(this.pollTimer);
      this.pollTimer = null;
    }
  }

  job(jobId: string): JobView | undefined {
    return this.jobs.find((j) => j.job_id === jobId);
  }

  async run(jobId: string, seed?: number): Promise<void> {
    await this.api.runJob(jobId, seed);
    await this.pollOnce();
  }

  async paste(jobId: string): Promise<void> {
    await this.api.pasteJob(jobId);
    await this.pollOnce();
    await this.refreshCanvas();
  }

  async remove(jobId: string): Promise<void> {
    await this.api.deleteJob(jobId);
    await this.pollOnce();
  }

  preview(jobId: string): Promise<Uint8Array> {
    return this.api.fetchPreview(jobId);
  }

  /** Poll until the job leaves queued/running (test and scripting helper). */
  async waitForJob(jobId: string, timeoutMs = 30000, stepMs = 50): Promise<JobView> {
    const deadline = Date.now() + timeoutMs;
    while (Date.now() < deadline) {
      await this.pollOnce();
      const job = this.job(jobId);
      if (job && job.status !== "queued" && job.status !== "running") {
        return job;
      }
      await new Promise((resolve) => setTimeout(resolve, stepMs));
    }
    throw new Error(`job ${jobId} did not settle within ${timeoutMs} ms`);
  }
}
