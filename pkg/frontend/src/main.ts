import { ApiError, EngineApi } from "./api.js";
import { DraftInvalidError, StudioController } from "./manager.js";
import { actionsFor } from "./state.js";
import { downsample } from "./stroke.js";
import type {
  BrushDescriptor,
  BrushKind,
  JobView,
  Point,
  StrokeDraft,
} from "./types.js";

const api = new EngineApi("");
const studio = new StudioController(api);

const el = {
  upload: document.getElementById("upload") as HTMLInputElement,
  brushSelect: document.getElementById("brush-select") as HTMLSelectElement,
  paramPanel: document.getElementById("param-panel") as HTMLDivElement,
  radius: document.getElementById("radius") as HTMLInputElement,
  backend: document.getElementById("backend-select") as HTMLSelectElement,
  shots: document.getElementById("shots") as HTMLInputElement,
  seed: document.getElementById("seed") as HTMLInputElement,
  clearDraft: document.getElementById("clear-draft") as HTMLButtonElement,
  submit: document.getElementById("submit") as HTMLButtonElement,
  draftInfo: document.getElementById("draft-info") as HTMLDivElement,
  canvasImg: document.getElementById("canvas-img") as HTMLImageElement,
  overlay: document.getElementById("overlay") as HTMLCanvasElement,
  previewImg: document.getElementById("preview-img") as HTMLImageElement,
  previewLabel: document.getElementById("preview-label") as HTMLDivElement,
  jobList: document.getElementById("job-list") as HTMLDivElement,
  statusLine: document.getElementById("status-line") as HTMLDivElement,
};

let descriptors: BrushDescriptor[] = [];
let currentBrush: BrushDescriptor | null = null;
let paths: Point[][] = [];
let capture: Point[] = [];
let pasteOrigin: Point | null = null;
let pickingPasteOrigin = false;
let drawing = false;
let canvasUrl: string | null = null;
let previewUrl: string | null = null;

function status(text: string, isError = false) {
  el.statusLine.textContent = text;
  el.statusLine.className = isError ? "error" : "";
}

function blobUrl(bytes: Uint8Array, old: string | null): string {
  if (old) URL.revokeObjectURL(old);
  const buffer = new Uint8Array(bytes).buffer as ArrayBuffer;
  return URL.createObjectURL(new Blob([buffer], { type: "image/png" }));
}

function clearFieldErrors() {
  el.paramPanel.querySelectorAll(".field-error").forEach((n) => n.remove());
  el.paramPanel
    .querySelectorAll(".invalid")
    .forEach((n) => n.classList.remove("invalid"));
}

function showFieldError(field: string, message: string) {
  const input = el.paramPanel.querySelector(
    `[data-field="${field}"], [data-field="${field.split(".")[0]}"]`,
  );
  if (!input) {
    status(`${field}: ${message}`, true);
    return;
  }
  input.classList.add("invalid");
  const note = document.createElement("span");
  note.className = "field-error";
  note.textContent = message;
  input.parentElement?.appendChild(note);
}

function paramInputs(brush: BrushDescriptor) {
  el.paramPanel.innerHTML = "";
  for (const p of brush.params) {
    const row = document.createElement("label");
    row.className = "param-row";
    row.textContent = p.name;
    if (p.type === "hsl") {
      for (const channel of ["h", "s", "l"]) {
        const input = document.createElement("input");
        input.type = "number";
        input.step = "0.01";
        input.min = "0";
        input.max = "1";
        input.value = channel === "l" ? "0.5" : "0.6";
        input.dataset.field = p.name;
        input.dataset.channel = channel;
        input.title = `${p.name}.${channel}`;
        row.appendChild(input);
      }
    } else if (p.type === "point") {
      const button = document.createElement("button");
      button.type = "button";
      button.dataset.field = p.name;
      button.textContent = "pick on canvas";
      button.addEventListener("click", () => {
        pickingPasteOrigin = true;
        status("click the canvas to set the paste origin");
      });
      row.appendChild(button);
    } else {
      const input = document.createElement("input");
      input.type = "number";
      input.step = p.type === "integer" ? "1" : "0.01";
      if (p.min !== undefined) input.min = String(p.min);
      if (p.max !== undefined) input.max = String(p.max);
      input.value = String(p.default ?? p.min ?? 0);
      input.dataset.field = p.name;
      row.appendChild(input);
    }
    el.paramPanel.appendChild(row);
  }
}

function collectParams(): Record<string, unknown> {
  const params: Record<string, unknown> = {};
  if (!currentBrush) return params;
  for (const p of currentBrush.params) {
    if (p.type === "hsl") {
      const color: Record<string, number> = {};
      el.paramPanel
        .querySelectorAll<HTMLInputElement>(`[data-field="${p.name}"]`)
        .forEach((input) => {
          color[input.dataset.channel!] = Number(input.value);
        });
      params[p.name] = color;
    } else if (p.type === "point") {
      // paste origin is tracked separately via canvas clicks
    } else {
      const input = el.paramPanel.querySelector<HTMLInputElement>(
        `[data-field="${p.name}"]`,
      );
      if (input && input.value !== "") {
        params[p.name] =
          p.type === "integer" ? Math.round(Number(input.value)) : Number(input.value);
      }
    }
  }
  return params;
}

function drawOverlay() {
  const ctx = el.overlay.getContext("2d")!;
  ctx.clearRect(0, 0, el.overlay.width, el.overlay.height);
  ctx.strokeStyle = "rgba(40, 40, 40, 0.65)";
  ctx.lineWidth = 1.5;
  const all = drawing ? [...paths, capture] : paths;
  for (const path of all) {
    if (path.length < 2) continue;
    ctx.beginPath();
    ctx.moveTo(path[0].x, path[0].y);
    for (const p of path.slice(1)) ctx.lineTo(p.x, p.y);
    if (currentBrush?.stroke_input === "lasso") ctx.closePath();
    ctx.stroke();
  }
  if (pasteOrigin) {
    ctx.beginPath();
    ctx.arc(pasteOrigin.x, pasteOrigin.y, 4, 0, 2 * Math.PI);
    ctx.stroke();
  }
  el.draftInfo.textContent =
    `${paths.length} stroke(s) drafted` +
    (pasteOrigin ? `, paste at (${pasteOrigin.x}, ${pasteOrigin.y})` : "");
}

function resetDraft() {
  paths = [];
  capture = [];
  pasteOrigin = null;
  pickingPasteOrigin = false;
  drawOverlay();
}

function pointerPos(event: PointerEvent): Point {
  const rect = el.overlay.getBoundingClientRect();
  return {
    x: Math.round(event.clientX - rect.left),
    y: Math.round(event.clientY - rect.top),
  };
}

function wireDrawing() {
  el.overlay.addEventListener("pointerdown", (event) => {
    const pos = pointerPos(event);
    if (pickingPasteOrigin) {
      pasteOrigin = pos;
      pickingPasteOrigin = false;
      drawOverlay();
      return;
    }
    drawing = true;
    capture = [pos];
    el.overlay.setPointerCapture(event.pointerId);
  });
  el.overlay.addEventListener("pointermove", (event) => {
    if (!drawing) return;
    capture.push(pointerPos(event));
    drawOverlay();
  });
  el.overlay.addEventListener("pointerup", () => {
    if (!drawing) return;
    drawing = false;
    const path = downsample(capture);
    capture = [];
    if (path.length > 0) {
      if (currentBrush?.stroke_input === "path" || currentBrush?.stroke_input === "lasso") {
        paths = [path]; // single-path brushes replace the draft
      } else {
        paths.push(path);
      }
    }
    drawOverlay();
  });
}

function jobCard(job: JobView): HTMLDivElement {
  const card = document.createElement("div");
  card.className = `job-card ${job.status}`;
  const title = document.createElement("div");
  title.className = "job-title";
  title.textContent = `${job.job_id} · ${job.brush_kind} · ${job.status}` +
    ` · seed ${job.seed}`;
  card.appendChild(title);
  if (job.error) {
    const err = document.createElement("div");
    err.className = "error";
    err.textContent = job.error;
    card.appendChild(err);
  }
  const actions = document.createElement("div");
  actions.className = "job-actions";
  for (const action of actionsFor(job.status)) {
    const button = document.createElement("button");
    button.textContent = action;
    button.addEventListener("click", () => void doAction(job, action));
    actions.appendChild(button);
  }
  if (job.status === "done" || job.status === "pasted") {
    const show = document.createElement("button");
    show.textContent = "preview";
    show.addEventListener("click", () => void showPreview(job.job_id));
    actions.appendChild(show);
  }
  card.appendChild(actions);
  return card;
}

async function doAction(job: JobView, action: string) {
  try {
    if (action === "run") {
      await studio.run(job.job_id);
    } else if (action === "rerun") {
      const answer = window.prompt(
        "seed (empty keeps the current seed, 'new' rolls a random one)", "",
      );
      if (answer === null) return;
      let seed: number | undefined;
      if (answer.trim() === "new") {
        seed = Math.floor(Math.random() * 2 ** 31);
      } else if (answer.trim() !== "") {
        seed = Number(answer.trim());
      }
      await studio.run(job.job_id, seed);
    } else if (action === "paste") {
      await studio.paste(job.job_id);
      status(`pasted ${job.job_id}`);
    } else if (action === "delete") {
      await studio.remove(job.job_id);
      if (el.previewLabel.dataset.jobId === job.job_id) clearPreview();
    }
  } catch (error) {
    status(error instanceof Error ? error.message : String(error), true);
  }
}

async function showPreview(jobId: string) {
  try {
    const bytes = await studio.preview(jobId);
    previewUrl = blobUrl(bytes, previewUrl);
    el.previewImg.src = previewUrl;
    el.previewImg.classList.remove("hidden");
    el.previewLabel.textContent = `preview: ${jobId}`;
    el.previewLabel.dataset.jobId = jobId;
  } catch (error) {
    status(error instanceof Error ? error.message : String(error), true);
  }
}

function clearPreview() {
  el.previewImg.classList.add("hidden");
  el.previewLabel.textContent = "no preview selected";
  delete el.previewLabel.dataset.jobId;
}

async function submitDraft() {
  if (!currentBrush) return;
  clearFieldErrors();
  const draft: StrokeDraft = {
    brushKind: currentBrush.kind as BrushKind,
    params: collectParams(),
    paths,
    radius: Number(el.radius.value),
    backend:
      el.backend.value === "exact"
        ? { kind: "exact" }
        : { kind: el.backend.value, shots: Math.round(Number(el.shots.value)) },
    pasteOrigin: pasteOrigin ?? undefined,
  };
  if (el.seed.value.trim() !== "") draft.seed = Number(el.seed.value);
  try {
    const jobId = await studio.submit(draft, currentBrush);
    status(`submitted ${jobId}`);
    resetDraft();
  } catch (error) {
    if (error instanceof DraftInvalidError) {
      for (const v of error.violations) showFieldError(v.field, v.message);
    } else if (error instanceof ApiError && error.field) {
      showFieldError(error.field, error.message);
    } else {
      status(error instanceof Error ? error.message : String(error), true);
    }
  }
}

function renderJobs(jobs: JobView[]) {
  el.jobList.innerHTML = "";
  for (const job of [...jobs].reverse()) el.jobList.appendChild(jobCard(job));
}

function renderCanvas(bytes: Uint8Array) {
  canvasUrl = blobUrl(bytes, canvasUrl);
  el.canvasImg.src = canvasUrl;
}

async function boot() {
  studio.onJobsChanged = renderJobs;
  studio.onCanvasChanged = renderCanvas;
  const { brushes } = await api.getBrushes();
  descriptors = brushes;
  el.brushSelect.innerHTML = "";
  for (const b of brushes) {
    const option = document.createElement("option");
    option.value = b.kind;
    option.textContent = b.label;
    el.brushSelect.appendChild(option);
  }
  const selectBrush = (kind: string) => {
    currentBrush = descriptors.find((b) => b.kind === kind) ?? null;
    if (currentBrush) paramInputs(currentBrush);
    resetDraft();
  };
  el.brushSelect.addEventListener("change", () => selectBrush(el.brushSelect.value));
  selectBrush(brushes[0].kind);

  el.canvasImg.addEventListener("load", () => {
    el.overlay.width = el.canvasImg.naturalWidth;
    el.overlay.height = el.canvasImg.naturalHeight;
    drawOverlay();
  });

  el.upload.addEventListener("change", async () => {
    const file = el.upload.files?.[0];
    if (!file) return;
    try {
      await studio.uploadCanvas(new Uint8Array(await file.arrayBuffer()));
      status(`canvas ${studio.canvasSize!.width}x${studio.canvasSize!.height} loaded`);
    } catch (error) {
      status(error instanceof Error ? error.message : String(error), true);
    }
  });
  el.clearDraft.addEventListener("click", resetDraft);
  el.submit.addEventListener("click", () => void submitDraft());
  el.backend.addEventListener("change", () => {
    el.shots.disabled = el.backend.value === "exact";
  });
  el.shots.disabled = true;

  wireDrawing();
  studio.startPolling(1000);
  try {
    await studio.refreshCanvas();
  } catch {
    status("upload a PNG to start painting");
  }
}

void boot();
