"""Critical set of the bi-filtration.

Splits fold arcs into descending (corner-critical) and ascending
(regular) pieces, spawns tail rays at axis tangencies, and assigns each
stratum the dimension of its cell attachment.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import (
    FoldArc,
    GeometryError,
    GenericityError,
    SingularValueDiagram,
    TransverseIndex,
    arc_rep_on_segment,
    arc_tangency_vertices,
)
from .geometry import Point, Tolerance, unit

# Index-convention switches, frozen by the oracle calibration test
# (tests/test_acceptance.py).  corner: take the j-component of the
# representative aligned with the crossing direction; tail: interior
# kisses attach one dimension above the base.
CORNER_TAKES_ALIGNED_J = True
TAIL_INTERIOR_BUMP = 1


@dataclass(frozen=True)
class Ray:
    base: Point
    axis: str  # "v" (points +y) or "h" (points +x)
    end: Point  # clipped to the frame


@dataclass(frozen=True)
class ParetoArc:
    """One critical stratum: a descending corner piece or a tail ray."""

    key: str
    kind: str  # "corner" | "tail-vertical" | "tail-horizontal"
    cell_dim: int
    source: str
    polyline: tuple[Point, ...] = ()  # corner only, oriented x-increasing
    ray: Ray | None = None
    kiss: str | None = None  # tail only: "exterior" | "interior"

    def geometry_points(self) -> list[Point]:
        if self.kind == "corner":
            return list(self.polyline)
        return [self.ray.base, self.ray.end]


@dataclass(frozen=True)
class SplitPiece:
    points: tuple[Point, ...]
    classification: str  # "descending" | "ascending"
    first_seg: int  # index into the arc's segment list


def monotone_split(arc: FoldArc, tol: Tolerance) -> tuple[list[SplitPiece], list[tuple[int, str]]]:
    """Partition an arc at axis tangencies (and cusp ends) into monotone pieces.

    Returns the pieces plus the tangency vertices as (vertex index, 'v'|'h').
    A piece is descending iff y strictly decreases as x increases along it.
    """
    tangencies = [(k, kind) for k, kind in arc_tangency_vertices(arc, tol) if kind != "x"]
    pts = arc.points
    n_seg = len(pts) - 1
    cut_set = sorted(k for k, _ in tangencies)

    pieces: list[SplitPiece] = []
    if arc.closed:
        if not cut_set:
            cut_set = [0]
        order = cut_set + [cut_set[0] + n_seg]
        ring = list(pts[:-1])
        for a, b in zip(order, order[1:]):
            seg_pts = [ring[i % n_seg] for i in range(a, b + 1)]
            pieces.append(_classify_piece(seg_pts, a % n_seg, tol))
    else:
        bounds = [0] + cut_set + [n_seg]
        for a, b in zip(bounds, bounds[1:]):
            if a == b:
                continue
            pieces.append(_classify_piece(list(pts[a:b + 1]), a, tol))
    return pieces, tangencies


def _classify_piece(seg_pts: list[Point], first_seg: int, tol: Tolerance) -> SplitPiece:
    dx = seg_pts[1][0] - seg_pts[0][0]
    dy = seg_pts[1][1] - seg_pts[0][1]
    desc = dx * dy < 0.0
    return SplitPiece(tuple(seg_pts), "descending" if desc else "ascending", first_seg)


def corner_cell_dim(piece: SplitPiece, index_rep: TransverseIndex, n: int) -> int:
    """Cell dimension attached when the quadrant corner crosses a descending piece.

    `index_rep` is the transported representative on the piece's first
    segment; the crossing direction u is the normal with both components
    positive.
    """
    if piece.classification != "descending":
        raise GeometryError("corner_cell_dim expects a descending piece")
    p0, p1 = piece.points[0], piece.points[1]
    t = unit((p1[0] - p0[0], p1[1] - p0[1]))
    u = (-t[1], t[0])
    if u[0] < 0.0:
        u = (-u[0], -u[1])
    rep = index_rep.aligned_with(u)
    dim = rep.j if CORNER_TAKES_ALIGNED_J else rep.i
    if not 0 <= dim <= n:
        raise GeometryError(f"corner cell dimension {dim} outside [0, {n}]")
    return dim


def tail_cell_dim(rep_at_tangency: TransverseIndex, axis: str, kiss: str, n: int) -> int:
    u = (1.0, 0.0) if axis == "v" else (0.0, 1.0)
    rep = rep_at_tangency.aligned_with(u)
    base = rep.j if CORNER_TAKES_ALIGNED_J else rep.i
    dim = base + (TAIL_INTERIOR_BUMP if kiss == "interior" else 0)
    if not 0 <= dim <= n:
        raise GeometryError(f"tail cell dimension {dim} outside [0, {n}]")
    return dim


def _tangency_kiss(arc: FoldArc, vertex: int, kind: str, tol: Tolerance) -> str:
    """Kiss side from the local second difference at the tangency vertex.

    Vertical tangency: neighbours to the right of the vertical line mean
    the fold lies outside the quadrant (exterior kiss); horizontal
    tangency: neighbours above mean exterior.
    """
    pts = list(arc.points[:-1]) if arc.closed else list(arc.points)
    m = len(pts)
    p = pts[vertex % m]
    q_prev = pts[(vertex - 1) % m] if (arc.closed or vertex > 0) else None
    q_next = pts[(vertex + 1) % m] if (arc.closed or vertex < m - 1) else None
    probes = [q for q in (q_prev, q_next) if q is not None]
    coord = 0 if kind == "v" else 1
    diffs = [q[coord] - p[coord] for q in probes]
    if any(d > tol.abs_tol for d in diffs) and all(d > -tol.abs_tol for d in diffs):
        return "exterior"
    if any(d < -tol.abs_tol for d in diffs) and all(d < tol.abs_tol for d in diffs):
        return "interior"
    raise GenericityError(f"unclassifiable tangency at {p} on arc {arc.id}")


def tail_rays(diagram: SingularValueDiagram,
              splits: dict[str, tuple[list[SplitPiece], list[tuple[int, str]]]]) -> list[ParetoArc]:
    """One ray per axis tangency: vertical tangencies shoot +y, horizontal +x."""
    tol = diagram.tolerance()
    out: list[ParetoArc] = []
    for arc in diagram.arcs:
        _, tangencies = splits[arc.id]
        for tang_no, (k, kind) in enumerate(tangencies):
            p = arc.points[k]
            for c in diagram.cusps:
                if tol.point_eq(p, c.point):
                    raise GenericityError(f"axis tangency at cusp {c.id}")
            seg = k if k < len(arc.points) - 1 else k - 1
            rep = arc_rep_on_segment(arc, seg % (len(arc.points) - 1))
            kiss = _tangency_kiss(arc, k, kind, tol)
            dim = tail_cell_dim(rep, kind, kiss, diagram.n)
            if kind == "v":
                ray = Ray(p, "v", (p[0], diagram.frame.y1))
                arc_kind = "tail-vertical"
                key = f"vtail:{arc.id}:{tang_no}"
            else:
                ray = Ray(p, "h", (diagram.frame.x1, p[1]))
                arc_kind = "tail-horizontal"
                key = f"htail:{arc.id}:{tang_no}"
            out.append(ParetoArc(key=key, kind=arc_kind, cell_dim=dim,
                                 source=arc.id, ray=ray, kiss=kiss))
    return out


def compute_critical_set(diagram: SingularValueDiagram) -> list[ParetoArc]:
    """All Pareto arcs: descending corner pieces plus tail rays.

    Ascending pieces and cusp points are homotopy-regular and excluded.
    Keys are deterministic in the diagram's arc and vertex order.
    """
    tol = diagram.tolerance()
    splits: dict[str, tuple[list[SplitPiece], list[tuple[int, str]]]] = {}
    out: list[ParetoArc] = []
    for arc in diagram.arcs:
        pieces, tangencies = monotone_split(arc, tol)
        splits[arc.id] = (pieces, tangencies)
        corner_no = 0
        for piece in pieces:
            if piece.classification != "descending":
                continue
            rep = arc_rep_on_segment(arc, piece.first_seg)
            dim = corner_cell_dim(piece, rep, diagram.n)
            pts = piece.points
            if pts[0][0] > pts[-1][0]:
                pts = tuple(reversed(pts))
            out.append(ParetoArc(key=f"corner:{arc.id}:{corner_no}", kind="corner",
                                 cell_dim=dim, source=arc.id, polyline=pts))
            corner_no += 1
    out.extend(tail_rays(diagram, splits))
    return out


def pareto_to_json(pareto: list[ParetoArc]) -> list[dict]:
    docs = []
    for pa in sorted(pareto, key=lambda a: a.key):
        doc = {"key": pa.key, "kind": pa.kind, "cell_dim": pa.cell_dim,
               "source": pa.source,
               "geometry": [[x, y] for x, y in pa.geometry_points()]}
        if pa.kiss is not None:
            doc["kiss"] = pa.kiss
        docs.append(doc)
    return docs
