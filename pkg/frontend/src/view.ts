import type { Pt } from "./types.js";

/** Frame-to-canvas transform; y flips so the poset grows up-right on screen. */
export class View {
  constructor(
    public frame: { x0: number; y0: number; x1: number; y1: number },
    public width: number,
    public height: number,
  ) {}

  get scale(): number {
    return Math.min(
      this.width / (this.frame.x1 - this.frame.x0),
      this.height / (this.frame.y1 - this.frame.y0),
    );
  }

  toScreen(p: Pt): Pt {
    return [
      (p[0] - this.frame.x0) * this.scale,
      this.height - (p[1] - this.frame.y0) * this.scale,
    ];
  }

  toWorld(p: Pt): Pt {
    return [
      p[0] / this.scale + this.frame.x0,
      (this.height - p[1]) / this.scale + this.frame.y0,
    ];
  }

  /** Pixel radius converted to frame units at the current zoom. */
  worldRadius(pixels: number): number {
    return pixels / this.scale;
  }
}
