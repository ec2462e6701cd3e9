import { describe, expect, it } from "vitest";

import { actionsFor, buildRequest, validateDraft } from "../src/state.js";
import type { BrushDescriptor, StrokeDraft } from "../src/types.js";

const aquarela: BrushDescriptor = {
  kind: "aquarela",
  label: "Aquarela",
  stroke_input: "path",
  params: [
    { name: "color", type: "hsl" },
    { name: "gamma", type: "number", min: 0, max: 1 },
    { name: "n_segments", type: "integer", min: 1, max: 11 },
  ],
};

const smudge: BrushDescriptor = {
  kind: "smudge",
  label: "Smudge",
  stroke_input: "multi_path",
  max_paths: 11,
  params: [
    { name: "control", type: "integer", min: 0, max: 1 },
    { name: "gamma", type: "number", min: 0, max: Math.PI },
  ],
};

const collage: BrushDescriptor = {
  kind: "collage",
  label: "Collage",
  stroke_input: "lasso",
  params: [
    { name: "s0", type: "number", min: 1e-6, max: 1 },
    { name: "paste_origin", type: "point" },
  ],
};

function draft(overrides: Partial<StrokeDraft> = {}): StrokeDraft {
  return {
    brushKind: "aquarela",
    params: { color: { h: 0.2, s: 0.5, l: 0.5 }, gamma: 0.5, n_segments: 3 },
    paths: [[{ x: 0, y: 0 }, { x: 20, y: 20 }]],
    radius: 3,
    backend: { kind: "exact" },
    ...overrides,
  };
}

describe("job state machine mirror", () => {
  it("matches the server's allowed transitions", () => {
    expect(actionsFor("queued")).toEqual(["run", "delete"]);
    expect(actionsFor("running")).toEqual([]);
    expect(actionsFor("done")).toEqual(["rerun", "paste", "delete"]);
    expect(actionsFor("failed")).toEqual(["rerun", "delete"]);
    expect(actionsFor("pasted")).toEqual(["delete"]);
  });
});

describe("draft validation", () => {
  it("accepts a well-formed aquarela draft", () => {
    expect(validateDraft(draft(), aquarela)).toEqual([]);
  });

  it("rejects out-of-range gamma before any network call", () => {
    const bad = draft({ params: { ...draft().params, gamma: 1.5 } });
    const violations = validateDraft(bad, aquarela);
    expect(violations.some((v) => v.field === "gamma")).toBe(true);
  });

  it("rejects out-of-range hsl channels", () => {
    const bad = draft({
      params: { color: { h: 0.2, s: 2.0, l: 0.5 }, gamma: 0.5, n_segments: 3 },
    });
    const violations = validateDraft(bad, aquarela);
    expect(violations.some((v) => v.field === "color.s")).toBe(true);
  });

  it("requires a drawn stroke", () => {
    const violations = validateDraft(draft({ paths: [] }), aquarela);
    expect(violations.some((v) => v.field === "points")).toBe(true);
  });

  it("caps multi-path brushes at the descriptor limit", () => {
    const paths = Array.from({ length: 12 }, (_, i) => [
      { x: i, y: 0 },
      { x: i, y: 10 },
    ]);
    const bad = draft({
      brushKind: "smudge",
      params: { control: 0, gamma: 1 },
      paths,
    });
    const violations = validateDraft(bad, smudge);
    expect(violations.some((v) => v.field === "points")).toBe(true);
  });

  it("mirrors the server's region-too-small lasso rule", () => {
    const bad = draft({
      brushKind: "collage",
      params: { s0: 0.7 },
      paths: [[{ x: 0, y: 0 }, { x: 5, y: 5 }]],
      pasteOrigin: { x: 30, y: 30 },
    });
    const violations = validateDraft(bad, collage);
    expect(violations.some((v) => v.field === "points")).toBe(true);
  });

  it("requires a paste origin for collage", () => {
    const bad = draft({
      brushKind: "collage",
      params: { s0: 0.7 },
      paths: [[{ x: 0, y: 0 }, { x: 10, y: 0 }, { x: 10, y: 10 }]],
    });
    const violations = validateDraft(bad, collage);
    expect(violations.some((v) => v.field === "paste_origin")).toBe(true);
  });
});

describe("wire request building", () => {
  it("sends a bare point list for single-path brushes", () => {
    const request = buildRequest(draft(), aquarela);
    expect(request.points).toEqual([
      { x: 0, y: 0 },
      { x: 20, y: 20 },
    ]);
    expect(request.brush_kind).toBe("aquarela");
  });

  it("tags points with path indices for multi-stroke brushes", () => {
    const multi = draft({
      brushKind: "smudge",
      params: { control: 0, gamma: 1 },
      paths: [
        [{ x: 0, y: 0 }, { x: 10, y: 0 }],
        [{ x: 0, y: 5 }, { x: 10, y: 5 }],
      ],
    });
    const request = buildRequest(multi, smudge);
    expect(request.points.map((p) => p.path)).toEqual([0, 0, 1, 1]);
  });

  it("sends the lasso polygon plus a rounded paste origin", () => {
    const lasso = draft({
      brushKind: "collage",
      params: { s0: 0.7 },
      paths: [[{ x: 1, y: 1 }, { x: 12, y: 1 }, { x: 12, y: 9 }]],
      pasteOrigin: { x: 30.4, y: 29.6 },
    });
    const request = buildRequest(lasso, collage);
    expect(request.points).toHaveLength(3);
    expect(request.params.paste_origin).toEqual({ x: 30, y: 30 });
  });

  it("passes seed and backend through untouched", () => {
    const request = buildRequest(
      draft({ seed: 42, backend: { kind: "sampling", shots: 256 } }),
      aquarela,
    );
    expect(request.seed).toBe(42);
    expect(request.backend).toEqual({ kind: "sampling", shots: 256 });
  });
});
