"""Planar subdivision of the frame by Pareto arcs.

Desk-scale construction: O(k^2) pairwise segment intersection, vertex
snapping, half-edge face tracing, hole assignment for island strata, and
grouping of raw segments into maximal arrangement edges per stratum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import AmbiguousLocationError, DegeneracyError, Frame
from .criticality import ParetoArc
from .geometry import (
    Point,
    Tolerance,
    dist,
    point_in_polygon,
    polygon_signed_area,
    seg_point_dist,
    segment_intersection,
)

FRAME_KEY = "frame"


@dataclass(frozen=True)
class ArrangementEdge:
    """Maximal sub-arc between arrangement vertices."""

    id: int
    key: str  # pareto key or "frame"
    seg_index: int
    cell_dim: int | None
    points: tuple[Point, ...]
    ll_face: str
    ur_face: str
    u: Point  # increasing-crossing direction

    @property
    def effective_key(self) -> str:
        return f"{self.key}#{self.seg_index}"

    def midpoint(self) -> Point:
        pts = self.points
        best, acc = pts[0], 0.0
        total = sum(dist(pts[i], pts[i + 1]) for i in range(len(pts) - 1))
        target = total / 2.0
        for i in range(len(pts) - 1):
            step = dist(pts[i], pts[i + 1])
            if acc + step >= target and step > 0:
                t = (target - acc) / step
                a, b = pts[i], pts[i + 1]
                return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)
            acc += step
        return best


@dataclass(frozen=True)
class Face:
    id: str
    cycle: tuple[Point, ...]
    holes: tuple[tuple[Point, ...], ...]
    sample: Point
    area: float

    def contains(self, p: Point) -> bool:
        if not point_in_polygon(p, list(self.cycle)):
            return False
        return all(not point_in_polygon(p, list(h)) for h in self.holes)


@dataclass
class Arrangement:
    frame: Frame
    tol: Tolerance
    vertices: list[Point]
    edges: list[ArrangementEdge]
    faces: list[Face]
    outer_face_id: str = "outer"
    edge_count_raw: int = 0
    vertex_count: int = 0
    component_count: int = 1
    _face_by_id: dict[str, Face] = field(default_factory=dict, repr=False)
    _face_edges: dict[str, list[ArrangementEdge]] = field(default_factory=dict, repr=False)

    def face(self, face_id: str) -> Face:
        return self._face_by_id[face_id]

    def significant_vertices(self) -> list[Point]:
        """Endpoints of arrangement edges (not polyline discretization joints)."""
        if not hasattr(self, "_sig_verts"):
            out: set[Point] = set()
            for e in self.edges:
                out.add(e.points[0])
                out.add(e.points[-1])
            object.__setattr__(self, "_sig_verts", sorted(out))
        return self._sig_verts

    def non_frame_edges(self) -> list[ArrangementEdge]:
        return [e for e in self.edges if e.key != FRAME_KEY]

    def edges_of_face(self, face_id: str) -> list[ArrangementEdge]:
        return self._face_edges.get(face_id, [])

    def euler_check(self) -> bool:
        """V - E + F = 1 + C, counting the outer face (= 2 when connected)."""
        return (self.vertex_count - self.edge_count_raw + (len(self.faces) + 1)
                == 1 + self.component_count)

    # -- queries ------------------------------------------------------------

    def boundary_distance(self, p: Point) -> float:
        best = math.inf
        for e in self.edges:
            pts = e.points
            for i in range(len(pts) - 1):
                best = min(best, seg_point_dist(p, pts[i], pts[i + 1]))
        return best

    def locate(self, p: Point) -> str:
        """Face containing p; p must be inside the frame and off every edge."""
        if not self.frame.contains(p):
            raise AmbiguousLocationError(f"point {p} outside the frame")
        if self.boundary_distance(p) <= self.tol.abs_tol * 4.0:
            raise AmbiguousLocationError(f"point {p} lies on an arrangement edge")
        for f in sorted(self.faces, key=lambda f: f.area):
            if f.contains(p):
                return f.id
        raise AmbiguousLocationError(f"no face contains {p}")

    def bottom_face(self) -> str:
        m = self.frame.diagonal * 1e-6
        return self.locate((self.frame.x0 + m, self.frame.y0 + m))

    def top_face(self) -> str:
        m = self.frame.diagonal * 1e-6
        return self.locate((self.frame.x1 - m, self.frame.y1 - m))

    def to_json(self) -> dict:
        return {
            "frame": {"x0": self.frame.x0, "y0": self.frame.y0,
                      "x1": self.frame.x1, "y1": self.frame.y1},
            "vertices": [[x, y] for x, y in sorted(self.vertices,
                                                   key=lambda p: (p[1], p[0]))],
            "edges": [
                {"key": e.key, "seg": e.seg_index, "cell_dim": e.cell_dim,
                 "points": [[x, y] for x, y in e.points],
                 "ll_face": e.ll_face, "ur_face": e.ur_face}
                for e in sorted(self.edges, key=lambda e: (e.key, e.seg_index))
            ],
            "faces": [
                {"id": f.id, "sample": [f.sample[0], f.sample[1]],
                 "cycle": [[x, y] for x, y in f.cycle],
                 "holes": [[[x, y] for x, y in h] for h in f.holes]}
                for f in self.faces
            ],
            "bottom_face": self.bottom_face(),
            "top_face": self.top_face(),
        }


# ---------------------------------------------------------------------------
# construction internals

class _RawSeg:
    __slots__ = ("a", "b", "key", "ord", "cuts")

    def __init__(self, a: Point, b: Point, key: str, order: int):
        self.a = a
        self.b = b
        self.key = key
        self.ord = order
        self.cuts: list[float] = []


class _Mini:
    __slots__ = ("va", "vb", "key", "ord", "tmid")

    def __init__(self, va: int, vb: int, key: str, order: int, tmid: float):
        self.va = va
        self.vb = vb
        self.key = key
        self.ord = order
        self.tmid = tmid


class _VertexRegistry:
    def __init__(self, tol: Tolerance):
        self.tol = tol
        self.cell = max(tol.abs_tol * 16.0, 1e-12)
        self.grid: dict[tuple[int, int], list[int]] = {}
        self.points: list[Point] = []

    def intern(self, p: Point) -> int:
        cx = math.floor(p[0] / self.cell)
        cy = math.floor(p[1] / self.cell)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for idx in self.grid.get((cx + dx, cy + dy), ()):
                    if dist(self.points[idx], p) <= self.tol.abs_tol * 4.0:
                        return idx
        idx = len(self.points)
        self.points.append(p)
        self.grid.setdefault((cx, cy), []).append(idx)
        return idx


def _bbox_overlap(s: _RawSeg, t: _RawSeg, pad: float) -> bool:
    return not (max(s.a[0], s.b[0]) + pad < min(t.a[0], t.b[0])
                or max(t.a[0], t.b[0]) + pad < min(s.a[0], s.b[0])
                or max(s.a[1], s.b[1]) + pad < min(t.a[1], t.b[1])
                or max(t.a[1], t.b[1]) + pad < min(s.a[1], s.b[1]))


def build_arrangement(pareto: list[ParetoArc], frame: Frame,
                      tol: Tolerance | None = None) -> Arrangement:
    tol = tol or Tolerance(scale=frame.diagonal)
    by_key = {pa.key: pa for pa in pareto}
    segs: list[_RawSeg] = []
    for pa in pareto:
        pts = pa.geometry_points()
        for k in range(len(pts) - 1):
            segs.append(_RawSeg(pts[k], pts[k + 1], pa.key, k))
    corners = [(frame.x0, frame.y0), (frame.x1, frame.y0),
               (frame.x1, frame.y1), (frame.x0, frame.y1)]
    for k in range(4):
        segs.append(_RawSeg(corners[k], corners[(k + 1) % 4], FRAME_KEY, k))

    pad = tol.abs_tol * 4.0
    for i in range(len(segs)):
        si = segs[i]
        for j in range(i + 1, len(segs)):
            sj = segs[j]
            if si.key == sj.key and (abs(si.ord - sj.ord) <= 1 or si.key == FRAME_KEY):
                continue
            if not _bbox_overlap(si, sj, pad):
                continue
            hit = segment_intersection(si.a, si.b, sj.a, sj.b, tol)
            if hit.kind == hit.NONE:
                continue
            if hit.kind == hit.OVERLAP:
                if si.key == sj.key:
                    continue
                raise DegeneracyError(
                    f"collinear overlap between {si.key} and {sj.key}")
            if hit.kind == hit.PROPER and si.key == sj.key:
                raise DegeneracyError(f"stratum {si.key} self-intersects")
            li, lj = dist(si.a, si.b), dist(sj.a, sj.b)
            ti = min(1.0, max(0.0, hit.t))
            tj = min(1.0, max(0.0, hit.u))
            if ti * li > pad and (1.0 - ti) * li > pad:
                si.cuts.append(ti)
            if tj * lj > pad and (1.0 - tj) * lj > pad:
                sj.cuts.append(tj)

    registry = _VertexRegistry(tol)
    mini: list[_Mini] = []
    for s in segs:
        ts = sorted({0.0, 1.0, *s.cuts})
        pts = [(s.a[0] + (s.b[0] - s.a[0]) * t, s.a[1] + (s.b[1] - s.a[1]) * t)
               for t in ts]
        ids = [registry.intern(p) for p in pts]
        for k in range(len(ids) - 1):
            if ids[k] != ids[k + 1]:
                mini.append(_Mini(ids[k], ids[k + 1], s.key, s.ord,
                                  (ts[k] + ts[k + 1]) / 2.0))

    verts = registry.points
    owners_at: dict[int, set[str]] = {}
    for m in mini:
        if m.key == FRAME_KEY:
            continue
        owners_at.setdefault(m.va, set()).add(m.key)
        owners_at.setdefault(m.vb, set()).add(m.key)
    for v, owners in owners_at.items():
        if len(owners) > 2:
            raise DegeneracyError(
                f"more than two strata meet at {verts[v]}: {sorted(owners)}")

    cycles, cycle_of = _trace_faces(verts, mini)
    faces, cycle_face = _assemble_faces(verts, mini, cycles, frame, tol)
    edges = _build_edges(verts, mini, cycle_of, cycle_face, by_key)

    parent = list(range(len(verts)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m in mini:
        parent[find(m.va)] = find(m.vb)
    components = len({find(v) for v in range(len(verts))})

    arr = Arrangement(frame=frame, tol=tol, vertices=list(verts), edges=edges,
                      faces=faces, edge_count_raw=len(mini), vertex_count=len(verts),
                      component_count=components)
    arr._face_by_id = {f.id: f for f in faces}
    face_edges: dict[str, list[ArrangementEdge]] = {}
    for e in edges:
        for fid in {e.ll_face, e.ur_face}:
            face_edges.setdefault(fid, []).append(e)
    arr._face_edges = face_edges
    return arr


def _trace_faces(verts: list[Point], mini: list[_Mini]):
    """Half-edge tracing; interiors lie to the left of traversal.

    Half-edge 2k runs mini[k] forward, 2k+1 backward.  Returns the list of
    cycles (each a list of half-edge ids) and the cycle id per half-edge.
    """
    out_at: dict[int, list[int]] = {}
    for k, m in enumerate(mini):
        out_at.setdefault(m.va, []).append(2 * k)
        out_at.setdefault(m.vb, []).append(2 * k + 1)

    def origin(h: int) -> int:
        k, back = divmod(h, 2)
        return mini[k].vb if back else mini[k].va

    def target(h: int) -> int:
        k, back = divmod(h, 2)
        return mini[k].va if back else mini[k].vb

    order_at: dict[int, list[int]] = {}
    pos_at: dict[int, dict[int, int]] = {}
    for v, hs in out_at.items():
        def angle(h):
            o, t = verts[origin(h)], verts[target(h)]
            return math.atan2(t[1] - o[1], t[0] - o[0])
        ring = sorted(hs, key=angle)
        order_at[v] = ring
        pos_at[v] = {h: i for i, h in enumerate(ring)}

    def next_half(h: int) -> int:
        tw = h ^ 1
        v = origin(tw)
        ring = order_at[v]
        return ring[(pos_at[v][tw] - 1) % len(ring)]

    cycles: list[list[int]] = []
    cycle_of: dict[int, int] = {}
    for h0 in range(2 * len(mini)):
        if h0 in cycle_of:
            continue
        cyc = []
        h = h0
        while h not in cycle_of:
            cycle_of[h] = len(cycles)
            cyc.append(h)
            h = next_half(h)
        cycles.append(cyc)
    return cycles, cycle_of


def _cycle_polygon(verts: list[Point], mini: list[_Mini], cyc: list[int]) -> list[Point]:
    pts = []
    for h in cyc:
        k, back = divmod(h, 2)
        pts.append(verts[mini[k].vb if back else mini[k].va])
    return pts


def _face_sample(cycle: list[Point], holes: list[list[Point]], tol: Tolerance) -> Point:
    """Deterministic interior point with generous clearance from the boundary."""
    xs = [p[0] for p in cycle]
    ys = [p[1] for p in cycle]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)

    def boundary_dist(p: Point) -> float:
        best = math.inf
        for poly in [cycle, *holes]:
            n = len(poly)
            for i in range(n):
                best = min(best, seg_point_dist(p, poly[i], poly[(i + 1) % n]))
        return best

    best_pt, best_d = None, -1.0
    for res in (16, 48, 120):
        for iy in range(1, res):
            y = y0 + (y1 - y0) * iy / res
            for ix in range(1, res):
                x = x0 + (x1 - x0) * ix / res
                p = (x, y)
                if not point_in_polygon(p, cycle):
                    continue
                if any(point_in_polygon(p, h) for h in holes):
                    continue
                d = boundary_dist(p)
                if d > best_d:
                    best_d, best_pt = d, p
        if best_pt is not None and best_d > tol.abs_tol * 100:
            break
    if best_pt is None:
        raise DegeneracyError("could not find an interior sample point for a face")
    return best_pt


def _assemble_faces(verts, mini, cycles, frame: Frame, tol: Tolerance):
    polys = [_cycle_polygon(verts, mini, c) for c in cycles]
    areas = [polygon_signed_area(p) for p in polys]

    ccw = [i for i, a in enumerate(areas) if a > 0.0]
    cw = [i for i, a in enumerate(areas) if a <= 0.0]
    outer_cycle = min(cw, key=lambda i: areas[i])  # most negative = unbounded side

    holes_of: dict[int, list[int]] = {i: [] for i in ccw}
    for h in cw:
        if h == outer_cycle:
            continue
        probe = polys[h][0]
        parent, parent_area = None, math.inf
        for i in ccw:
            if areas[i] < parent_area and point_in_polygon(probe, polys[i]):
                parent, parent_area = i, areas[i]
        if parent is None:
            raise DegeneracyError("hole cycle not contained in any face")
        holes_of[parent].append(h)

    drafts = []
    for i in ccw:
        hole_polys = [polys[h] for h in holes_of[i]]
        sample = _face_sample(polys[i], hole_polys, tol)
        drafts.append((i, sample, hole_polys))
    drafts.sort(key=lambda d: (d[1][1], d[1][0]))

    faces: list[Face] = []
    cycle_face: dict[int, str] = {outer_cycle: "outer"}
    for rank, (i, sample, hole_polys) in enumerate(drafts):
        fid = f"f{rank}"
        faces.append(Face(id=fid, cycle=tuple(polys[i]),
                          holes=tuple(tuple(h) for h in hole_polys),
                          sample=sample, area=areas[i]))
        cycle_face[i] = fid
        for h in holes_of[i]:
            cycle_face[h] = fid
    return faces, cycle_face


def _build_edges(verts, mini: list[_Mini], cycle_of, cycle_face, by_key):
    """Group raw mini-segments into maximal edges between significant vertices."""
    minis_by_key: dict[str, list[int]] = {}
    for k, m in enumerate(mini):
        minis_by_key.setdefault(m.key, []).append(k)
    incident_keys: dict[int, set[str]] = {}
    for m in mini:
        incident_keys.setdefault(m.va, set()).add(m.key)
        incident_keys.setdefault(m.vb, set()).add(m.key)

    edges: list[ArrangementEdge] = []
    eid = 0
    for key in sorted(minis_by_key):
        idxs = sorted(minis_by_key[key], key=lambda k: (mini[k].ord, mini[k].tmid))
        degree: dict[int, int] = {}
        for k in idxs:
            degree[mini[k].va] = degree.get(mini[k].va, 0) + 1
            degree[mini[k].vb] = degree.get(mini[k].vb, 0) + 1

        def significant(v: int) -> bool:
            return degree.get(v, 0) != 2 or len(incident_keys.get(v, set())) > 1

        chains: list[list[int]] = []
        chain: list[int] = []
        prev_end = None
        for k in idxs:
            m = mini[k]
            if chain and (prev_end != m.va or significant(m.va)):
                chains.append(chain)
                chain = []
            chain.append(k)
            prev_end = m.vb
        if chain:
            chains.append(chain)

        for seg_index, ch in enumerate(chains):
            pts = [verts[mini[ch[0]].va]]
            pts.extend(verts[mini[k].vb] for k in ch)
            rep = ch[0]
            f_fwd = cycle_face[cycle_of[2 * rep]]       # left of forward traversal
            f_bwd = cycle_face[cycle_of[2 * rep + 1]]   # left of backward traversal
            pa = by_key.get(key)
            if pa is None:  # frame
                u = (0.0, 0.0)
                ll, ur = f_bwd, f_fwd
            else:
                if pa.kind == "tail-vertical":
                    u = (1.0, 0.0)
                elif pa.kind == "tail-horizontal":
                    u = (0.0, 1.0)
                else:
                    a, b = verts[mini[rep].va], verts[mini[rep].vb]
                    d = (b[0] - a[0], b[1] - a[1])
                    u = (-d[1], d[0])
                    if u[0] < 0.0 or u[1] < 0.0:
                        u = (-u[0], -u[1])
                # left normal of forward traversal vs u decides the sides
                a, b = verts[mini[rep].va], verts[mini[rep].vb]
                ln = (-(b[1] - a[1]), b[0] - a[0])
                if ln[0] * u[0] + ln[1] * u[1] > 0.0:
                    ur, ll = f_fwd, f_bwd
                else:
                    ur, ll = f_bwd, f_fwd
            edges.append(ArrangementEdge(
                id=eid, key=key, seg_index=seg_index,
                cell_dim=None if pa is None else pa.cell_dim,
                points=tuple(pts), ll_face=ll, ur_face=ur, u=u))
            eid += 1
    return edges
