import type {
  BrushDescriptor,
  JobStatus,
  StrokeDraft,
  StrokeRequest,
  Violation,
  WirePoint,
} from "./types.js";

export type JobAction = "run" | "rerun" | "paste" | "delete";

/** Mirror of the server job state machine: never offer a rejectable action. */
export function actionsFor(status: JobStatus): JobAction[] {
  switch (status) {
    case "queued":
      return ["run", "delete"];
    case "running":
      return [];
    case "done":
      return ["rerun", "paste", "delete"];
    case "failed":
      return ["rerun", "delete"];
    case "pasted":
      return ["delete"];
  }
}

function checkRange(
  violations: Violation[],
  descriptor: BrushDescriptor,
  params: Record<string, unknown>,
): void {
  for (const p of descriptor.params) {
    const value = params[p.name];
    if (value === undefined || value === null) {
      if (!p.optional) violations.push({ field: p.name, message: "required" });
      continue;
    }
    if (p.type === "number" || p.type === "integer") {
      const v = Number(value);
      if (!Number.isFinite(v)) {
        violations.push({ field: p.name, message: "must be a number" });
        continue;
      }
      if (p.type === "integer" && !Number.isInteger(v)) {
        violations.push({ field: p.name, message: "must be an integer" });
      }
      if (p.min !== undefined && v < p.min) {
        violations.push({ field: p.name, message: `must be >= ${p.min}` });
      }
      if (p.max !== undefined && v > p.max) {
        violations.push({ field: p.name, message: `must be <= ${p.max}` });
      }
    }
    if (p.type === "hsl") {
      const c = value as Record<string, unknown>;
      for (const channel of ["h", "s", "l"]) {
        const v = Number(c?.[channel]);
        if (!Number.isFinite(v) || v < 0 || v > 1) {
          violations.push({
            field: `${p.name}.${channel}`,
            message: "must be in [0, 1]",
          });
        }
      }
    }
  }
}

/** Client-side validation against the server's brush descriptor. */
export function validateDraft(
  draft: StrokeDraft,
  descriptor: BrushDescriptor,
): Violation[] {
  const violations: Violation[] = [];
  checkRange(violations, descriptor, draft.params);
  if (draft.radius < 0.5) {
    violations.push({ field: "radius", message: "must be >= 0.5" });
  }
  const paths = draft.paths.filter((p) => p.length > 0);
  if (descriptor.stroke_input === "lasso") {
    const lasso = paths[0] ?? [];
    if (lasso.length < 3) {
      violations.push({
        field: "points",
        message: "lasso needs at least 3 points",
      });
    }
    if (!draft.pasteOrigin) {
      violations.push({
        field: "paste_origin",
        message: "pick a paste location",
      });
    }
  } else if (paths.length === 0) {
    violations.push({ field: "points", message: "draw a stroke first" });
  } else if (descriptor.stroke_input === "path" && paths.length > 1) {
    violations.push({ field: "points", message: "this brush takes one stroke" });
  } else if (
    descriptor.max_paths !== undefined &&
    paths.length > descriptor.max_paths
  ) {
    violations.push({
      field: "points",
      message: `at most ${descriptor.max_paths} strokes`,
    });
  }
  return violations;
}

/** Flatten a validated draft into the wire request. */
export function buildRequest(
  draft: StrokeDraft,
  descriptor: BrushDescriptor,
): StrokeRequest {
  const params: Record<string, unknown> = { ...draft.params };
  let points: WirePoint[] = [];
  const paths = draft.paths.filter((p) => p.length > 0);
  if (descriptor.stroke_input === "lasso") {
    points = paths[0].map((p) => ({ x: p.x, y: p.y }));
    params.paste_origin = {
      x: Math.round(draft.pasteOrigin!.x),
      y: Math.round(draft.pasteOrigin!.y),
    };
  } else if (paths.length === 1) {
    points = paths[0].map((p) => ({ x: p.x, y: p.y }));
  } else {
    paths.forEach((path, index) => {
      for (const p of path) points.push({ x: p.x, y: p.y, path: index });
    });
  }
  const request: StrokeRequest = {
    brush_kind: draft.brushKind,
    params,
    points,
    radius: draft.radius,
    backend: draft.backend,
  };
  if (draft.seed !== undefined) request.seed = draft.seed;
  return request;
}
