import type { BarcodeDoc } from "./types.js";

export const DIM_COLORS: Record<number, string> = {
  0: "#2e8b2e", // green
  1: "#8b4513", // brown
  2: "#00a0a0", // cyan
  3: "#7d3c98",
};

export interface BarRect {
  dim: number;
  x0: number;
  x1: number;
  y: number;
  infinite: boolean;
  color: string;
}

/** Lay the bars out as horizontal strips in [0, width] x [0, rows*rowH]. */
export function layoutBarcode(
  doc: BarcodeDoc,
  width: number,
  rowH = 16,
  pad = 24,
): BarRect[] {
  const dims = Object.keys(doc.dims)
    .map(Number)
    .sort((a, b) => a - b);
  const out: BarRect[] = [];
  let row = 0;
  const span = width - 2 * pad;
  for (const dim of dims) {
    const bars = [...doc.dims[String(dim)]].sort((a, b) => a[0] - b[0]);
    for (const [birth, death] of bars) {
      out.push({
        dim,
        x0: pad + birth * span,
        x1: death === null ? width - pad : pad + death * span,
        y: rowH / 2 + row * rowH,
        infinite: death === null,
        color: DIM_COLORS[dim] ?? "#202020",
      });
      row += 1;
    }
  }
  return out;
}

export function barCounts(doc: BarcodeDoc): Record<number, number> {
  const out: Record<number, number> = {};
  for (const [dim, bars] of Object.entries(doc.dims)) {
    out[Number(dim)] = bars.length;
  }
  return out;
}
