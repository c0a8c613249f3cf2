import type { Pt } from "./types.js";

export type ClickVerdict =
  | { ok: true }
  | { ok: false; reason: string };

/** A new waypoint must not sit down-left of any earlier one. */
export function checkMonotone(existing: Pt[], next: Pt): ClickVerdict {
  if (existing.length === 0) return { ok: true };
  const last = existing[existing.length - 1];
  if (next[0] < last[0] && next[1] < last[1]) {
    return { ok: false, reason: "click is down-left of the previous waypoint" };
  }
  if (next[0] < last[0] || next[1] < last[1]) {
    return {
      ok: false,
      reason: "waypoints must be non-decreasing in both coordinates",
    };
  }
  return { ok: true };
}
