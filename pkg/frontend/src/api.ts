import type {
  ArrangementDoc,
  BarcodeDoc,
  DiagramDoc,
  LabelingDoc,
  PathResponse,
  Pt,
} from "./types.js";

export class ApiError extends Error {
  constructor(public code: string, message: string, public status: number) {
    super(message);
  }
}

async function asJson(resp: Response): Promise<any> {
  const text = await resp.text();
  let doc: any = null;
  try {
    doc = JSON.parse(text);
  } catch {
    /* fall through */
  }
  if (!resp.ok) {
    const code = doc?.error?.code ?? `http-${resp.status}`;
    throw new ApiError(code, doc?.error?.message ?? text, resp.status);
  }
  return doc;
}

/** Thin client over the session server; all numbers shown in the UI
 *  originate from these responses. */
export class ApiClient {
  constructor(private base: string, private fetchFn: typeof fetch = fetch) {}

  private get(path: string): Promise<any> {
    return this.fetchFn(this.base + path).then(asJson);
  }

  private post(path: string, body: unknown): Promise<any> {
    return this.fetchFn(this.base + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    }).then(asJson);
  }

  diagram(): Promise<DiagramDoc> {
    return this.get("/diagram");
  }

  arrangement(): Promise<ArrangementDoc> {
    return this.get("/arrangement");
  }

  labeling(): Promise<LabelingDoc> {
    return this.get("/labeling");
  }

  submitPath(waypoints: Pt[], snapRadius?: number): Promise<PathResponse> {
    const body: Record<string, unknown> = { waypoints };
    if (snapRadius !== undefined) body.snap_radius = snapRadius;
    return this.post("/path", body);
  }

  /** Raw response text of POST /path, for byte-level comparisons. */
  async submitPathRaw(waypoints: Pt[]): Promise<string> {
    const resp = await this.fetchFn(this.base + "/path", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ waypoints }),
    });
    const text = await resp.text();
    if (!resp.ok) throw new ApiError(`http-${resp.status}`, text, resp.status);
    return text;
  }

  equivalent(a: BarcodeDoc, b: BarcodeDoc): Promise<boolean> {
    return this.post("/equivalent", { a, b }).then((d) => d.equivalent === true);
  }
}
