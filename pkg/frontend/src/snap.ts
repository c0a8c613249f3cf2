import type { EdgeDoc, Pt } from "./types.js";

export interface Snap {
  point: Pt;
  key: string;
  seg: number;
  distance: number;
}

function segNearest(p: Pt, a: Pt, b: Pt): Pt {
  const abx = b[0] - a[0];
  const aby = b[1] - a[1];
  const denom = abx * abx + aby * aby;
  if (denom === 0) return a;
  let t = ((p[0] - a[0]) * abx + (p[1] - a[1]) * aby) / denom;
  t = Math.max(0, Math.min(1, t));
  return [a[0] + abx * t, a[1] + aby * t];
}

function dist(p: Pt, q: Pt): number {
  return Math.hypot(p[0] - q[0], p[1] - q[1]);
}

/** Nearest point on any Pareto stratum within the radius, or null. */
export function snapToStrata(
  p: Pt,
  edges: EdgeDoc[],
  radius: number,
): Snap | null {
  let best: Snap | null = null;
  for (const e of edges) {
    if (e.key === "frame") continue;
    for (let i = 0; i + 1 < e.points.length; i++) {
      const q = segNearest(p, e.points[i], e.points[i + 1]);
      const d = dist(p, q);
      if (d <= radius && (best === null || d < best.distance)) {
        best = { point: q, key: e.key, seg: e.seg, distance: d };
      }
    }
  }
  return best;
}
