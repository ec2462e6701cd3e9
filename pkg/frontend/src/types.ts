export type BrushKind =
  | "aquarela"
  | "heisen_continuous"
  | "heisen_discrete"
  | "smudge"
  | "collage";

export type JobStatus = "queued" | "running" | "done" | "failed" | "pasted";

export type StrokeInput = "path" | "multi_path" | "lasso";

export interface ParamDescriptor {
  name: string;
  type: string;
  min?: number;
  max?: number;
  default?: number;
  optional?: boolean;
}

export interface BrushDescriptor {
  kind: BrushKind;
  label: string;
  stroke_input: StrokeInput;
  max_paths?: number;
  params: ParamDescriptor[];
}

export interface BrushesResponse {
  brushes: BrushDescriptor[];
  backends: { kinds: string[]; default: string; shots_default: number };
}

export interface JobView {
  job_id: string;
  snapshot_id: string;
  brush_kind: string;
  status: JobStatus;
  seed: number;
  backend: string;
  error?: string;
}

export interface Point {
  x: number;
  y: number;
}

export interface WirePoint extends Point {
  path?: number;
}

export interface BackendChoice {
  kind: string;
  shots?: number;
}

export interface StrokeRequest {
  brush_kind: BrushKind;
  params: Record<string, unknown>;
  points: WirePoint[];
  radius: number;
  backend?: BackendChoice;
  seed?: number;
}

/** A stroke being assembled in the UI before submission. */
export interface StrokeDraft {
  brushKind: BrushKind;
  params: Record<string, unknown>;
  paths: Point[][];
  radius: number;
  backend: BackendChoice;
  seed?: number;
  pasteOrigin?: Point;
}

export interface Violation {
  field: string;
  message: string;
}
