import type { BarcodeDoc, PathResponse } from "./types.js";

export interface GalleryEntry {
  id: number;
  response: PathResponse;
  /** Equivalence-class id within the gallery, assigned by the server's
   *  barcodes_equivalent answers. */
  classId: number;
}

type EquivFn = (a: BarcodeDoc, b: BarcodeDoc) => Promise<boolean>;

/** Submitted-path gallery for side-by-side what-if comparison. */
export class Gallery {
  entries: GalleryEntry[] = [];
  private nextId = 0;
  private nextClass = 0;

  constructor(private equivalent: EquivFn) {}

  async add(response: PathResponse): Promise<GalleryEntry> {
    let classId: number | null = null;
    for (const cls of this.classRepresentatives()) {
      if (await this.equivalent(cls.response.barcode, response.barcode)) {
        classId = cls.classId;
        break;
      }
    }
    if (classId === null) classId = this.nextClass++;
    const entry = { id: this.nextId++, response, classId };
    this.entries.push(entry);
    return entry;
  }

  classRepresentatives(): GalleryEntry[] {
    const seen = new Set<number>();
    const out: GalleryEntry[] = [];
    for (const e of this.entries) {
      if (!seen.has(e.classId)) {
        seen.add(e.classId);
        out.push(e);
      }
    }
    return out;
  }

  classSizes(): Map<number, number> {
    const out = new Map<number, number>();
    for (const e of this.entries) {
      out.set(e.classId, (out.get(e.classId) ?? 0) + 1);
    }
    return out;
  }
}
