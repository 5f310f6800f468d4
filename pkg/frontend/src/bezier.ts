// Cubic Bezier point evaluation (de Casteljau) — the only geometry the
// client duplicates from the engine.

import type { MotionPath } from './types.js';

export type Point = [number, number];

export function cubicPoint(cp: Point[], t: number): Point {
  const lerp = (a: Point, b: Point, u: number): Point => [
    a[0] + (b[0] - a[0]) * u,
    a[1] + (b[1] - a[1]) * u,
  ];
  const p01 = lerp(cp[0], cp[1], t);
  const p12 = lerp(cp[1], cp[2], t);
  const p23 = lerp(cp[2], cp[3], t);
  const p012 = lerp(p01, p12, t);
  const p123 = lerp(p12, p23, t);
  return lerp(p012, p123, t);
}

/** Flatten a motion path into a polyline for drawing. */
export function pathPolyline(path: MotionPath, perSegment = 48): Point[] {
  const out: Point[] = [];
  for (const seg of path.segments) {
    for (let i = 0; i < perSegment; i++) {
      out.push(cubicPoint(seg as Point[], i / perSegment));
    }
  }
  const last = path.segments[path.segments.length - 1];
  out.push([last[3][0], last[3][1]]);
  return out;
}
