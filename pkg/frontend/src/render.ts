import type { ArrangementDoc, LabelingDoc, PathDoc, Pt } from "./types.js";
import type { View } from "./view.js";
import { DIM_COLORS, layoutBarcode } from "./barcode.js";
import type { BarcodeDoc } from "./types.js";

const ARC_COLORS = ["#1f4e9c", "#c02020", "#0e7c66", "#c06a00", "#6a2ca0", "#a01570"];

export function faceFill(label: string): string {
  let h = 0;
  for (const ch of label) h = (h * 131 + ch.charCodeAt(0)) % 0xffffff;
  const r = (205 + (h & 0x1f)) % 256;
  const g = (205 + ((h >> 8) & 0x1f)) % 256;
  const b = (205 + ((h >> 16) & 0x1f)) % 256;
  return `rgb(${r},${g},${b})`;
}

function tracePoly(ctx: CanvasRenderingContext2D, view: View, pts: Pt[]): void {
  pts.forEach((p, i) => {
    const [x, y] = view.toScreen(p);
    if (i === 0) ctx.moveTo(x, y);
    else ctx.lineTo(x, y);
  });
}

export function renderArrangement(
  ctx: CanvasRenderingContext2D,
  view: View,
  arr: ArrangementDoc,
  labeling: LabelingDoc | null,
  hoverFace: string | null,
): void {
  ctx.clearRect(0, 0, view.width, view.height);
  for (const face of arr.faces) {
    const label = labeling?.labels[face.id] ?? "";
    ctx.beginPath();
    tracePoly(ctx, view, face.cycle);
    ctx.closePath();
    for (const hole of face.holes) {
      tracePoly(ctx, view, hole);
      ctx.closePath();
    }
    ctx.fillStyle = face.id === hoverFace ? "#fff3c4" : faceFill(label);
    ctx.fill("evenodd");
  }
  const colorOf = new Map<string, string>();
  for (const e of arr.edges) {
    if (e.key === "frame") continue;
    const src = e.key.split(":")[1] ?? e.key;
    if (!colorOf.has(src)) {
      colorOf.set(src, ARC_COLORS[colorOf.size % ARC_COLORS.length]);
    }
    ctx.beginPath();
    tracePoly(ctx, view, e.points);
    ctx.strokeStyle = colorOf.get(src)!;
    ctx.lineWidth = 2;
    ctx.setLineDash(e.key.startsWith("vtail") || e.key.startsWith("htail") ? [7, 5] : []);
    ctx.stroke();
  }
  ctx.setLineDash([]);
  if (labeling) {
    ctx.font = "13px sans-serif";
    ctx.fillStyle = "#333";
    ctx.textAlign = "center";
    for (const face of arr.faces) {
      const [x, y] = view.toScreen(face.sample);
      ctx.fillText(labeling.labels[face.id] ?? "", x, y);
    }
  }
}

export function renderCusps(
  ctx: CanvasRenderingContext2D,
  view: View,
  cusps: { point: Pt }[],
): void {
  ctx.fillStyle = "#111";
  for (const c of cusps) {
    const [x, y] = view.toScreen(c.point);
    ctx.beginPath();
    ctx.arc(x, y, 3.5, 0, 2 * Math.PI);
    ctx.fill();
  }
}

export function renderDraft(
  ctx: CanvasRenderingContext2D,
  view: View,
  waypoints: Pt[],
): void {
  ctx.fillStyle = "#d81b60";
  for (const w of waypoints) {
    const [x, y] = view.toScreen(w);
    ctx.beginPath();
    ctx.arc(x, y, 4, 0, 2 * Math.PI);
    ctx.fill();
  }
}

export function renderPath(
  ctx: CanvasRenderingContext2D,
  view: View,
  path: PathDoc,
  color = "#d81b60",
): void {
  ctx.beginPath();
  tracePoly(ctx, view, path.realization);
  ctx.strokeStyle = color;
  ctx.lineWidth = 2.5;
  ctx.stroke();
  for (const c of path.crossings) {
    // crossing markers at the waypoints, colored by handle dimension
    ctx.fillStyle = DIM_COLORS[c.cell_dim] ?? "#202020";
  }
  renderDraft(ctx, view, path.waypoints);
}

export function renderBarcodeStrip(
  ctx: CanvasRenderingContext2D,
  doc: BarcodeDoc,
  width: number,
  height: number,
): void {
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "white";
  ctx.fillRect(0, 0, width, height);
  const rects = layoutBarcode(doc, width);
  for (const bar of rects) {
    ctx.strokeStyle = bar.color;
    ctx.lineWidth = 5;
    ctx.beginPath();
    ctx.moveTo(bar.x0, bar.y + 6);
    ctx.lineTo(bar.x1, bar.y + 6);
    ctx.stroke();
    if (bar.infinite) {
      ctx.fillStyle = bar.color;
      ctx.beginPath();
      ctx.moveTo(bar.x1, bar.y + 2);
      ctx.lineTo(bar.x1 + 7, bar.y + 6);
      ctx.lineTo(bar.x1, bar.y + 10);
      ctx.fill();
    }
    ctx.fillStyle = "#333";
    ctx.font = "10px sans-serif";
    ctx.fillText(`H${bar.dim}`, 4, bar.y + 9);
  }
}
