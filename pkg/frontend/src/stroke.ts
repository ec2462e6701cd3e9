import type { Point } from "./types.js";

export const MIN_POINT_DISTANCE = 2;

/** Drop captured pointer points closer than minDist to the last kept one;
 * the final point is always kept so the gesture's end is preserved. */
export function downsample(points: Point[], minDist = MIN_POINT_DISTANCE): Point[] {
  if (points.length === 0) return [];
  const kept: Point[] = [points[0]];
  for (let i = 1; i < points.length; i++) {
    const last = kept[kept.length - 1];
    const p = points[i];
    if (Math.hypot(p.x - last.x, p.y - last.y) >= minDist) {
      kept.push(p);
    }
  }
  const tail = points[points.length - 1];
  const lastKept = kept[kept.length - 1];
  if (
    kept.length > 0 &&
    (lastKept.x !== tail.x || lastKept.y !== tail.y) &&
    Math.hypot(tail.x - lastKept.x, tail.y - lastKept.y) > 1e-9
  ) {
    kept.push(tail);
  }
  return kept;
}
