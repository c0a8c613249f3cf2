// Wire formats of the paretopaths session server.

export type Pt = [number, number];

export interface DiagramDoc {
  n: number;
  frame: { x0: number; y0: number; x1: number; y1: number };
  arcs: { id: string; points: Pt[] }[];
  cusps: { id: string; point: Pt; arcs: [string, string]; tangent: Pt }[];
  total_poly: number[] | null;
  field: string;
}

export interface EdgeDoc {
  key: string;
  seg: number;
  cell_dim: number | null;
  points: Pt[];
  ll_face: string;
  ur_face: string;
}

export interface FaceDoc {
  id: string;
  sample: Pt;
  cycle: Pt[];
  holes: Pt[][];
}

export interface ArrangementDoc {
  frame: { x0: number; y0: number; x1: number; y1: number };
  vertices: Pt[];
  edges: EdgeDoc[];
  faces: FaceDoc[];
  bottom_face: string;
  top_face: string;
}

export interface LabelingDoc {
  faces: Record<string, number[]>;
  labels: Record<string, string>;
  effects: Record<string, string>;
}

export interface CrossingDoc {
  s: number;
  key: string;
  seg: number;
  cell_dim: number;
  effect: "create" | "kill";
}

export interface PathDoc {
  waypoints: Pt[];
  realization: Pt[];
  crossings: CrossingDoc[];
}

export interface BarcodeDoc {
  // dimension -> [birth, death|null, birth_key, death_key|null]
  dims: Record<string, [number, number | null, string, string | null][]>;
}

export interface ReportDoc {
  c: number[];
  Q: number[] | null;
  Q_failure: string | null;
  chi: number;
  euler_ok: boolean;
  weak: boolean[];
  strong: boolean[];
}

export interface PathResponse {
  path: PathDoc;
  barcode: BarcodeDoc;
  report: ReportDoc;
}

export interface ErrorDoc {
  error: { code: string; message?: string };
}
