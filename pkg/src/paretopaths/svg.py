"""SVG rendering of arrangements and barcodes.

Colors follow the figure conventions: dimension 0 green, 1 brown,
2 cyan; corner arcs solid, tail rays dashed.
"""
from __future__ import annotations

from .arrangement import Arrangement
from .barcodes import Barcode
from .labeling import RegionLabeling

DIM_COLORS = {0: "#2e8b2e", 1: "#8b4513", 2: "#00a0a0", 3: "#7d3c98"}
ARC_COLORS = ["#1f4e9c", "#c02020", "#0e7c66", "#c06a00", "#6a2ca0", "#a01570"]


def _face_fill(label: str) -> str:
    h = 0
    for ch in label:
        h = (h * 131 + ord(ch)) % 0xFFFFFF
    r = 205 + (h & 0x1F)
    g = 205 + ((h >> 8) & 0x1F)
    b = 205 + ((h >> 16) & 0x1F)
    return f"rgb({r % 256},{g % 256},{b % 256})"


def svg_arrangement(arr: Arrangement, labeling: RegionLabeling | None = None,
                    width: int = 720) -> str:
    fr = arr.frame
    scale = width / (fr.x1 - fr.x0)
    height = (fr.y1 - fr.y0) * scale

    def xy(p):
        return ((p[0] - fr.x0) * scale, (fr.y1 - p[1]) * scale)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<rect width="{width:.0f}" height="{height:.0f}" fill="white"/>',
    ]
    for f in arr.faces:
        label = str(labeling.poly(f.id)) if labeling else ""
        d = "M " + " L ".join(f"{x:.2f} {y:.2f}" for x, y in map(xy, f.cycle)) + " Z"
        for hole in f.holes:
            d += " M " + " L ".join(f"{x:.2f} {y:.2f}" for x, y in map(xy, hole)) + " Z"
        fill = _face_fill(label) if labeling else "#f4f4f4"
        out.append(f'<path d="{d}" fill="{fill}" fill-rule="evenodd" stroke="none"/>')
    arc_color: dict[str, str] = {}
    for e in sorted(arr.edges, key=lambda e: (e.key, e.seg_index)):
        if e.key == "frame":
            continue
        src = e.key.split(":")[1] if ":" in e.key else e.key
        if src not in arc_color:
            arc_color[src] = ARC_COLORS[len(arc_color) % len(ARC_COLORS)]
        dash = ' stroke-dasharray="7 5"' if e.key.split(":")[0].endswith("tail") else ""
        pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in map(xy, e.points))
        out.append(f'<polyline points="{pts}" fill="none" '
                   f'stroke="{arc_color[src]}" stroke-width="2"{dash}/>')
    if labeling:
        for f in arr.faces:
            x, y = xy(f.sample)
            out.append(f'<text x="{x:.2f}" y="{y:.2f}" font-size="13" '
                       f'text-anchor="middle" fill="#333">{labeling.poly(f.id)}</text>')
    out.append("</svg>")
    return "\n".join(out)


def svg_barcode(bc: Barcode, width: int = 720) -> str:
    rows = []
    for q in bc.dims():
        for bar in bc.bars_in_dim(q):
            rows.append((q, bar))
    row_h = 18
    height = max(1, len(rows)) * row_h + 30
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="20" y1="{height - 18}" x2="{width - 20}" y2="{height - 18}" '
        'stroke="#aaa"/>',
    ]
    span = width - 40
    for i, (q, bar) in enumerate(rows):
        y = 12 + i * row_h
        x1 = 20 + bar.birth * span
        x2 = width - 20 if bar.death is None else 20 + bar.death * span
        color = DIM_COLORS.get(q, "#202020")
        cap = "" if bar.death is not None else f'<polygon points="{x2:.1f},{y - 4} {x2 + 7:.1f},{y} {x2:.1f},{y + 4}" fill="{color}"/>'
        out.append(f'<line x1="{x1:.1f}" y1="{y}" x2="{x2:.1f}" y2="{y}" '
                   f'stroke="{color}" stroke-width="5"/>{cap}')
        out.append(f'<text x="4" y="{y + 4}" font-size="10" fill="#333">H{q}</text>')
    out.append("</svg>")
    return "\n".join(out)
