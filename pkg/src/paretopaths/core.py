"""Domain types for singular-value diagrams.

Holds the oriented transverse index algebra, Poincare-polynomial
arithmetic, diagram validation, and the JSON wire format shared by the
CLI, server, and explorer UI.
"""
from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field

from .geometry import Point, Tolerance, dot, norm, segment_intersection, unit


# ---------------------------------------------------------------------------
# error taxonomy

class EngineError(Exception):
    """Base for all domain errors; `code` is the machine-readable tag."""

    code = "engine-error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details


class InvalidInputError(EngineError):
    code = "invalid-input"


class GeometryError(EngineError):
    code = "geometry-error"


class GenericityError(EngineError):
    code = "genericity-error"


class DegeneracyError(EngineError):
    code = "degeneracy-error"


class AmbiguousLocationError(EngineError):
    code = "ambiguous-location"


class IncompleteAnnotationError(EngineError):
    code = "incomplete-annotation"


class InconsistentLabelingError(EngineError):
    code = "inconsistent-labeling"


class OrderError(EngineError):
    code = "order-error"


class RoutingError(EngineError):
    code = "routing-error"


def tolerance_from_env(scale: float = 1.0) -> Tolerance:
    eps = float(os.environ.get("PARETO_EPS", "1e-9"))
    return Tolerance(eps=eps, scale=scale)


# ---------------------------------------------------------------------------
# Poincare polynomials

@dataclass(frozen=True)
class PoincarePolynomial:
    """Betti-number generating polynomial; coeffs[k] = beta_k, trailing zeros trimmed."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        if any(x < 0 for x in c):
            raise InconsistentLabelingError(f"negative Betti coefficient in {c}")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def euler(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.coeffs))

    def __add__(self, other: "PoincarePolynomial") -> "PoincarePolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return PoincarePolynomial(
            tuple(self.coeff(k) + other.coeff(k) for k in range(n)))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else str(c)
                parts.append(f"{head}t" if k == 1 else f"{head}t^{k}")
        return "+".join(parts)


ZERO_POLY = PoincarePolynomial(())


def poly_monomial(k: int, c: int = 1) -> PoincarePolynomial:
    return PoincarePolynomial((0,) * k + (c,))


def poly_apply_delta(p: PoincarePolynomial, k: int, effect: str) -> PoincarePolynomial:
    """Apply a k-handle: create adds t^k, kill removes t^(k-1)."""
    if effect == "create":
        coeffs = list(p.coeffs) + [0] * max(0, k + 1 - len(p.coeffs))
        coeffs[k] += 1
        return PoincarePolynomial(tuple(coeffs))
    if effect == "kill":
        if k < 1:
            raise InconsistentLabelingError("a 0-handle cannot kill")
        if p.coeff(k - 1) < 1:
            raise InconsistentLabelingError(
                f"kill of degree {k - 1} on zero coefficient in {p}")
        coeffs = list(p.coeffs)
        coeffs[k - 1] -= 1
        return PoincarePolynomial(tuple(coeffs))
    raise InvalidInputError(f"unknown effect {effect!r}")


def poly_unapply_delta(p: PoincarePolynomial, k: int, effect: str) -> PoincarePolynomial:
    """Inverse of poly_apply_delta (used when propagating down-left)."""
    if effect == "create":
        if p.coeff(k) < 1:
            raise InconsistentLabelingError(
                f"cannot remove absent t^{k} generator from {p}")
        coeffs = list(p.coeffs)
        coeffs[k] -= 1
        return PoincarePolynomial(tuple(coeffs))
    if effect == "kill":
        coeffs = list(p.coeffs) + [0] * max(0, k - len(p.coeffs))
        coeffs[k - 1] += 1
        return PoincarePolynomial(tuple(coeffs))
    raise InvalidInputError(f"unknown effect {effect!r}")


# ---------------------------------------------------------------------------
# transverse index

@dataclass(frozen=True)
class TransverseIndex:
    """Oriented fold index (v, i, j) with (v, i, j) ~ (-v, j, i).

    The stored representative has v in the closed upper half-plane; a
    horizontal v points in +x.
    """

    v: Point
    i: int
    j: int

    def flipped(self) -> "TransverseIndex":
        return TransverseIndex((-self.v[0], -self.v[1]), self.j, self.i)

    def aligned_with(self, u: Point) -> "TransverseIndex":
        """The representative whose v-component has positive dot with u."""
        d = dot(self.v, u)
        if d == 0.0:
            raise GeometryError(f"direction {u} is tangent to index normal {self.v}")
        return self if d > 0.0 else self.flipped()


def canonical_index(v: Point, i: int, j: int) -> TransverseIndex:
    """Canonical representative of the index class of (v, i, j)."""
    if i < 0 or j < 0:
        raise InvalidInputError("index components must be non-negative")
    n = norm(v)
    if n == 0.0:
        raise InvalidInputError("transverse direction must be nonzero")
    # keep already-unit vectors bit-exact so canonicalization is idempotent
    vx, vy = v if abs(n - 1.0) < 1e-12 else (v[0] / n, v[1] / n)
    if vy < 0.0 or (vy == 0.0 and vx < 0.0):
        vx, vy, i, j = -vx, -vy, j, i
    return TransverseIndex((vx, vy), i, j)


# ---------------------------------------------------------------------------
# diagram types

@dataclass(frozen=True)
class Frame:
    x0: float
    y0: float
    x1: float
    y1: float

    @property
    def diagonal(self) -> float:
        return math.hypot(self.x1 - self.x0, self.y1 - self.y0)

    def contains(self, p: Point, margin: float = 0.0) -> bool:
        return (self.x0 + margin <= p[0] <= self.x1 - margin
                and self.y0 + margin <= p[1] <= self.y1 - margin)


@dataclass(frozen=True)
class FoldArc:
    """A fold curve in the plane, stored as a polyline.

    Closed curves repeat their first point last.  The index is the
    transported representative anchored at the first polyline point.
    """

    id: str
    points: tuple[Point, ...]
    index: TransverseIndex
    endpoint_kinds: tuple[str, str] = ("free", "free")

    @property
    def closed(self) -> bool:
        return len(self.points) > 2 and self.points[0] == self.points[-1]


@dataclass(frozen=True)
class Cusp:
    id: str
    point: Point
    arcs: tuple[str, str]
    tangent: Point


@dataclass(frozen=True)
class SingularValueDiagram:
    n: int
    frame: Frame
    arcs: tuple[FoldArc, ...]
    cusps: tuple[Cusp, ...] = ()
    total_poly: PoincarePolynomial | None = None
    effects: dict[str, str] = field(default_factory=dict)
    field_tag: str = "Z/2"

    def arc_by_id(self, arc_id: str) -> FoldArc:
        for a in self.arcs:
            if a.id == arc_id:
                return a
        raise InvalidInputError(f"no arc with id {arc_id!r}")

    def tolerance(self) -> Tolerance:
        return tolerance_from_env(scale=self.frame.diagonal)


# ---------------------------------------------------------------------------
# arc-local helpers shared with the criticality module

def arc_left_normals(arc: FoldArc) -> list[Point]:
    """Unit left normal (tangent rotated +90 deg) of each polyline segment."""
    out = []
    for k in range(len(arc.points) - 1):
        t = unit((arc.points[k + 1][0] - arc.points[k][0],
                  arc.points[k + 1][1] - arc.points[k][1]))
        out.append((-t[1], t[0]))
    return out


def arc_rep_on_segment(arc: FoldArc, seg: int) -> TransverseIndex:
    """Index representative riding the left normal of segment `seg`.

    The stored (i, j) belongs to the stored v at the first point; it is
    transported by continuity, which for polylines reduces to comparing
    the stored v with the left normal of the first segment.
    """
    normals = arc_left_normals(arc)
    if dot(normals[0], arc.index.v) >= 0.0:
        base = arc.index
    else:
        base = arc.index.flipped()
    return TransverseIndex(normals[seg], base.i, base.j)


# ---------------------------------------------------------------------------
# validation

@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    where: str = ""


def _segment_signs(points: tuple[Point, ...], tol: Tolerance) -> list[tuple[int, int]]:
    signs = []
    for k in range(len(points) - 1):
        dx = points[k + 1][0] - points[k][0]
        dy = points[k + 1][1] - points[k][1]
        sx = 0 if tol.is_zero(dx) else (1 if dx > 0 else -1)
        sy = 0 if tol.is_zero(dy) else (1 if dy > 0 else -1)
        signs.append((sx, sy))
    return signs


def arc_tangency_vertices(arc: FoldArc, tol: Tolerance) -> list[tuple[int, str]]:
    """Interior vertices where coordinate monotonicity flips.

    Returns (vertex index, 'v'|'h'): 'v' = vertical tangency (x-direction
    flips), 'h' = horizontal tangency (y-direction flips).
    """
    signs = _segment_signs(arc.points, tol)
    out = []
    n_seg = len(signs)
    rng = range(n_seg) if arc.closed else range(1, n_seg)
    for k in rng:
        prev = signs[k - 1]
        cur = signs[k]
        if prev[0] != cur[0] and prev[1] == cur[1]:
            out.append((k, "v"))
        elif prev[1] != cur[1] and prev[0] == cur[0]:
            out.append((k, "h"))
        elif prev[0] != cur[0] and prev[1] != cur[1]:
            out.append((k, "x"))  # doubling back; flagged by validation
    return out


def validate_diagram(d: SingularValueDiagram) -> list[Violation]:
    """Structural and genericity checks; an empty report means valid."""
    tol = d.tolerance()
    out: list[Violation] = []
    cusp_by_id = {c.id: c for c in d.cusps}

    for arc in d.arcs:
        where = f"arc {arc.id}"
        if len(arc.points) < 2:
            out.append(Violation("polyline", "fewer than two points", where))
            continue
        if arc.index.i + arc.index.j != d.n - 1:
            out.append(Violation(
                "index-sum",
                f"i+j = {arc.index.i + arc.index.j}, expected n-1 = {d.n - 1}",
                where))
        for k in range(len(arc.points) - 1):
            if tol.point_eq(arc.points[k], arc.points[k + 1]):
                out.append(Violation("polyline", f"repeated vertex {k}", where))
        for p in arc.points:
            if not d.frame.contains(p, margin=tol.abs_tol):
                out.append(Violation("frame", f"point {p} not strictly inside frame", where))
                break
        for sx, sy in _segment_signs(arc.points, tol):
            if sx == 0 or sy == 0:
                out.append(Violation(
                    "axis-parallel-segment",
                    "axis-parallel segment; tangencies must be isolated vertices",
                    where))
                break
        for k, kind in arc_tangency_vertices(arc, tol):
            if kind == "x":
                out.append(Violation(
                    "monotonicity",
                    f"both coordinates reverse at vertex {k}", where))
        if arc.closed:
            signs = _segment_signs(arc.points, tol)
            if signs and (signs[0][0] != signs[-1][0] or signs[0][1] != signs[-1][1]):
                out.append(Violation("seam-tangency",
                                     "closed-curve seam is an axis tangency", where))
        # self-intersection scan; adjacent segments share a vertex legitimately
        pts = arc.points
        n_seg = len(pts) - 1
        for a in range(n_seg):
            for b in range(a + 2, n_seg):
                if arc.closed and a == 0 and b == n_seg - 1:
                    continue
                hit = segment_intersection(pts[a], pts[a + 1], pts[b], pts[b + 1], tol)
                if hit.kind in (hit.PROPER, hit.OVERLAP):
                    out.append(Violation("self-intersection",
                                         f"segments {a} and {b} intersect", where))
                    break
            else:
                continue
            break
        for end_k in arc.endpoint_kinds:
            if end_k != "free" and not end_k.startswith("cusp:"):
                out.append(Violation("endpoint", f"bad endpoint kind {end_k!r}", where))
            elif end_k.startswith("cusp:") and end_k[5:] not in cusp_by_id:
                out.append(Violation("cusp-ref", f"unresolved cusp id {end_k[5:]!r}", where))

    # distinct critical heights: all tangency points pairwise distinct in x and in y
    xs: list[tuple[float, str]] = []
    ys: list[tuple[float, str]] = []
    for arc in d.arcs:
        for k, kind in arc_tangency_vertices(arc, tol):
            p = arc.points[k]
            if kind == "v":
                xs.append((p[0], arc.id))
            elif kind == "h":
                ys.append((p[1], arc.id))
    for vals, axis in ((xs, "x"), (ys, "y")):
        svals = sorted(vals)
        for (a, ida), (b, idb) in zip(svals, svals[1:]):
            if tol.eq(a, b):
                out.append(Violation(
                    "critical-heights",
                    f"tangency {axis}-coordinates coincide ({ida}, {idb}) at {a}",
                    "diagram"))

    # cusp checks
    arc_ids = {a.id for a in d.arcs}
    for c in d.cusps:
        where = f"cusp {c.id}"
        if norm(c.tangent) == 0.0:
            out.append(Violation("cusp-tangent", "zero tangent", where))
            continue
        tx, ty = unit(c.tangent)
        if tol.is_zero(tx) or tol.is_zero(ty):
            out.append(Violation("axis-parallel-cusp-tangent",
                                 "cusp tangent is vertical or horizontal", where))
        if c.arcs[0] not in arc_ids or c.arcs[1] not in arc_ids:
            out.append(Violation("cusp-ref", "cusp references a missing arc", where))
            continue
        reps = []
        for arc_id in c.arcs:
            arc = d.arc_by_id(arc_id)
            ends = []
            if arc.endpoint_kinds[0] == f"cusp:{c.id}":
                ends.append(0)
            if arc.endpoint_kinds[1] == f"cusp:{c.id}":
                ends.append(len(arc.points) - 1)
            matched = [e for e in ends if tol.point_eq(arc.points[e], c.point)]
            if not matched:
                out.append(Violation("cusp-ref",
                                     f"arc {arc_id} has no endpoint at cusp point", where))
                continue
            seg = 0 if matched[0] == 0 else len(arc.points) - 2
            reps.append(arc_rep_on_segment(arc, seg))
        if len(reps) == 2:
            a, b = reps
            try:
                b = b.aligned_with(a.v)
            except GeometryError:
                out.append(Violation("cusp-index", "incomparable fold normals", where))
                continue
            if abs(a.i - b.i) != 1:
                out.append(Violation(
                    "cusp-index",
                    f"fold indices at cusp differ by {abs(a.i - b.i)} in i, expected 1",
                    where))

    return out


# ---------------------------------------------------------------------------
# JSON wire format

def canonical_json(obj) -> str:
    """Deterministic JSON used by the CLI and server (byte-stable)."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def poly_to_json(p: PoincarePolynomial | None):
    return None if p is None else list(p.coeffs)


def diagram_to_json(d: SingularValueDiagram) -> dict:
    return {
        "n": d.n,
        "frame": {"x0": d.frame.x0, "y0": d.frame.y0, "x1": d.frame.x1, "y1": d.frame.y1},
        "arcs": [
            {
                "id": a.id,
                "points": [[x, y] for x, y in a.points],
                "index": {"v": [a.index.v[0], a.index.v[1]], "i": a.index.i, "j": a.index.j},
                "endpoints": list(a.endpoint_kinds),
            }
            for a in d.arcs
        ],
        "cusps": [
            {"id": c.id, "point": [c.point[0], c.point[1]], "arcs": list(c.arcs),
             "tangent": [c.tangent[0], c.tangent[1]]}
            for c in d.cusps
        ],
        "total_poly": poly_to_json(d.total_poly),
        "effects": dict(sorted(d.effects.items())),
        "field": d.field_tag,
    }


def diagram_from_json(data: dict) -> SingularValueDiagram:
    try:
        if data.get("field", "Z/2") != "Z/2":
            raise InvalidInputError(f"unsupported coefficient field {data.get('field')!r}")
        fr = data["frame"]
        arcs = tuple(
            FoldArc(
                id=a["id"],
                points=tuple((float(x), float(y)) for x, y in a["points"]),
                index=canonical_index(
                    (float(a["index"]["v"][0]), float(a["index"]["v"][1])),
                    int(a["index"]["i"]), int(a["index"]["j"])),
                endpoint_kinds=tuple(a.get("endpoints", ["free", "free"])),
            )
            for a in data["arcs"]
        )
        cusps = tuple(
            Cusp(id=c.get("id", f"c{k}"), point=(float(c["point"][0]), float(c["point"][1])),
                 arcs=tuple(c["arcs"]),
                 tangent=(float(c["tangent"][0]), float(c["tangent"][1])))
            for k, c in enumerate(data.get("cusps", []))
        )
        total = data.get("total_poly")
        return SingularValueDiagram(
            n=int(data["n"]),
            frame=Frame(float(fr["x0"]), float(fr["y0"]), float(fr["x1"]), float(fr["y1"])),
            arcs=arcs,
            cusps=cusps,
            total_poly=None if total is None else PoincarePolynomial(tuple(total)),
            effects=dict(data.get("effects", {})),
            field_tag=data.get("field", "Z/2"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed diagram JSON: {exc}") from exc
