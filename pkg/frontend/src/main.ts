import { ApiClient, ApiError } from "./api.js";
import { Gallery } from "./gallery.js";
import { checkMonotone } from "./monotone.js";
import { renderArrangement, renderBarcodeStrip, renderCusps, renderDraft, renderPath } from "./render.js";
import { snapToStrata } from "./snap.js";
import type { ArrangementDoc, DiagramDoc, LabelingDoc, PathResponse, Pt } from "./types.js";
import { View } from "./view.js";

const SNAP_PIXELS = 8;

interface AppState {
  diagram: DiagramDoc;
  arr: ArrangementDoc;
  labeling: LabelingDoc;
  view: View;
  draft: Pt[];
  submitted: PathResponse | null;
  busy: boolean;
}

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function reportText(r: PathResponse["report"]): string {
  const q = r.Q_failure ? `FAIL (${r.Q_failure})` : JSON.stringify(r.Q);
  const rows = r.c.map(
    (cj, j) =>
      `c_${j}=${cj} weak:${r.weak[j] ? "ok" : "FAIL"} strong:${r.strong[j] ? "ok" : "FAIL"}`,
  );
  return [
    `handles c = (${r.c.join(", ")})`,
    ...rows,
    `chi = ${r.chi} euler:${r.euler_ok ? "ok" : "FAIL"}`,
    `Q = ${q}`,
  ].join("\n");
}

async function boot(): Promise<void> {
  const base = (document.body.dataset.server ?? "http://127.0.0.1:8642").replace(/\/$/, "");
  const api = new ApiClient(base);
  const canvas = el<HTMLCanvasElement>("plane");
  const strip = el<HTMLCanvasElement>("strip");
  const status = el<HTMLDivElement>("status");
  const reportBox = el<HTMLPreElement>("report");
  const galleryBox = el<HTMLUListElement>("gallery");

  const [diagram, arr, labeling] = await Promise.all([
    api.diagram(),
    api.arrangement(),
    api.labeling(),
  ]);
  const view = new View(arr.frame, canvas.width, canvas.height);
  const state: AppState = {
    diagram, arr, labeling, view,
    draft: [], submitted: null, busy: false,
  };
  const gallery = new Gallery((a, b) => api.equivalent(a, b));

  function redraw(hover: string | null = null): void {
    const ctx = canvas.getContext("2d")!;
    renderArrangement(ctx, view, arr, labeling, hover);
    renderCusps(ctx, view, diagram.cusps);
    if (state.submitted) renderPath(ctx, view, state.submitted.path);
    renderDraft(ctx, view, state.draft);
  }

  function refreshGallery(): void {
    galleryBox.innerHTML = "";
    const sizes = gallery.classSizes();
    for (const entry of gallery.entries) {
      const li = document.createElement("li");
      const n = entry.response.path.crossings.length;
      const cls = String.fromCharCode(65 + (entry.classId % 26));
      li.textContent =
        `path ${entry.id}: ${n} crossings, class ${cls}` +
        (sizes.get(entry.classId)! > 1 ? ` (equivalent to ${sizes.get(entry.classId)! - 1} other)` : "");
      li.onclick = () => {
        state.submitted = entry.response;
        renderBarcodeStrip(strip.getContext("2d")!, entry.response.barcode, strip.width, strip.height);
        reportBox.textContent = reportText(entry.response.report);
        redraw();
      };
      galleryBox.appendChild(li);
    }
  }

  canvas.addEventListener("mousemove", (ev) => {
    const rect = canvas.getBoundingClientRect();
    const world = view.toWorld([ev.clientX - rect.left, ev.clientY - rect.top]);
    let hover: string | null = null;
    for (const f of arr.faces) {
      if (pointInFace(world, f.cycle, f.holes)) {
        hover = f.id;
        break;
      }
    }
    status.textContent = hover
      ? `face ${hover}: P = ${labeling.labels[hover]}`
      : "";
    redraw(hover);
  });

  canvas.addEventListener("click", (ev) => {
    if (state.busy) return;
    const rect = canvas.getBoundingClientRect();
    const world = view.toWorld([ev.clientX - rect.left, ev.clientY - rect.top]);
    const snap = snapToStrata(world, arr.edges, view.worldRadius(SNAP_PIXELS));
    if (!snap) {
      status.textContent = "no Pareto arc within snapping range";
      return;
    }
    const verdict = checkMonotone(state.draft, snap.point);
    if (!verdict.ok) {
      status.textContent = `rejected: ${verdict.reason}`;
      return;
    }
    state.draft.push(snap.point);
    status.textContent = `waypoint on ${snap.key} (${state.draft.length} so far)`;
    redraw();
  });

  el<HTMLButtonElement>("submit").onclick = async () => {
    if (state.busy || state.draft.length === 0) return;
    state.busy = true;
    status.textContent = "submitting...";
    try {
      const resp = await api.submitPath(
        state.draft,
        view.worldRadius(SNAP_PIXELS),
      );
      // path submitted = path rendered: echo check before display
      if (resp.path.waypoints.length !== state.draft.length) {
        throw new ApiError("echo-mismatch", "server echoed a different waypoint count", 500);
      }
      state.submitted = resp;
      state.draft = [];
      renderBarcodeStrip(strip.getContext("2d")!, resp.barcode, strip.width, strip.height);
      reportBox.textContent = reportText(resp.report);
      const entry = await gallery.add(resp);
      refreshGallery();
      status.textContent = `accepted: ${resp.path.crossings.length} crossings, class ` +
        String.fromCharCode(65 + (entry.classId % 26));
    } catch (err) {
      status.textContent = err instanceof ApiError
        ? `rejected [${err.code}]: ${err.message}`
        : String(err);
    } finally {
      state.busy = false;
      redraw();
    }
  };

  el<HTMLButtonElement>("clear").onclick = () => {
    state.draft = [];
    state.submitted = null;
    status.textContent = "";
    redraw();
  };

  redraw();
}

export function pointInFace(p: Pt, cycle: Pt[], holes: Pt[][]): boolean {
  const inside = (poly: Pt[]): boolean => {
    let odd = false;
    for (let i = 0, j = poly.length - 1; i < poly.length; j = i++) {
      const [xi, yi] = poly[i];
      const [xj, yj] = poly[j];
      if (yi > p[1] !== yj > p[1]) {
        const x = xi + ((p[1] - yi) * (xj - xi)) / (yj - yi);
        if (p[0] < x) odd = !odd;
      }
    }
    return odd;
  };
  if (!inside(cycle)) return false;
  return holes.every((h) => !inside(h));
}

if (typeof document !== "undefined" && document.getElementById("plane")) {
  boot().catch((err) => {
    const status = document.getElementById("status");
    if (status) status.textContent = `failed to load session: ${err}`;
  });
}
