/** Tiny 2D helpers: pose application and point-in-polygon hit testing. */

import type { Pose } from "./types.js";

export function applyPose(pose: Pose, points: [number, number][]): [number, number][] {
  const c = Math.cos(pose.theta);
  const s = Math.sin(pose.theta);
  return points.map(([x, y]) => [
    c * x - s * y + pose.tx,
    s * x + c * y + pose.ty,
  ]);
}

/** Ray-cast point-in-polygon; points on an edge may land either way. */
export function pointInPolygon(
  x: number,
  y: number,
  polygon: [number, number][],
): boolean {
  let inside = false;
  const n = polygon.length;
  for (let i = 0, j = n - 1; i < n; j = i++) {
    const [xi, yi] = polygon[i]!;
    const [xj, yj] = polygon[j]!;
    const crosses = yi > y !== yj > y;
    if (crosses && x < ((xj - xi) * (y - yi)) / (yj - yi) + xi) {
      inside = !inside;
    }
  }
  return inside;
}

export function polygonCentroid(points: [number, number][]): [number, number] {
  let area = 0;
  let cx = 0;
  let cy = 0;
  const n = points.length;
  for (let i = 0; i < n; i++) {
    const [x0, y0] = points[i]!;
    const [x1, y1] = points[(i + 1) % n]!;
    const cross = x0 * y1 - x1 * y0;
    area += cross;
    cx += (x0 + x1) * cross;
    cy += (y0 + y1) * cross;
  }
  if (Math.abs(area) < 1e-12) {
    let sx = 0;
    let sy = 0;
    for (const [x, y] of points) {
      sx += x;
      sy += y;
    }
    return [sx / n, sy / n];
  }
  area *= 0.5;
  return [cx / (6 * area), cy / (6 * area)];
}
