"""Persistence paths: monotone PL realizations and their crossing events.

A path runs from the frame's bottom-left corner to its top-right corner,
non-decreasing in both coordinates, crossing Pareto strata only at its
waypoints.  Legs between waypoints are axis-aligned staircases found by
L-connector probing with a monotone-grid fallback.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .arrangement import Arrangement, ArrangementEdge
from .core import (
    GenericityError,
    IncompleteAnnotationError,
    InvalidInputError,
    OrderError,
    RoutingError,
    SingularValueDiagram,
)
from .geometry import (
    Point,
    dist,
    lerp,
    polyline_length,
    polyline_point_at,
    segment_intersection,
)
from .labeling import effect_entry


@dataclass(frozen=True)
class CrossingEvent:
    s: float
    key: str  # effective key (pareto key, '#seg' suffix when split)
    pareto_key: str
    seg_index: int
    cell_dim: int
    effect: str
    pairs_with: str | None = None

    @property
    def delta(self) -> tuple[int, int]:
        """Signed monomial (sign, degree) of the label increment."""
        if self.effect == "create":
            return (1, self.cell_dim)
        return (-1, self.cell_dim - 1)


@dataclass(frozen=True)
class PersistencePath:
    waypoints: tuple[Point, ...]
    realization: tuple[Point, ...]
    crossings: tuple[CrossingEvent, ...]

    def key_sequence(self) -> tuple[str, ...]:
        return tuple(c.key for c in self.crossings)

    def to_json(self) -> dict:
        return {
            "waypoints": [[x, y] for x, y in self.waypoints],
            "realization": [[x, y] for x, y in self.realization],
            "crossings": [
                {"s": c.s, "key": c.pareto_key, "seg": c.seg_index,
                 "cell_dim": c.cell_dim, "effect": c.effect}
                for c in self.crossings
            ],
        }


@dataclass(frozen=True)
class RepFamily:
    paths: tuple[PersistencePath, ...]
    truncated: bool


# ---------------------------------------------------------------------------
# geometric helpers

def _nearest_on_edge(p: Point, e: ArrangementEdge) -> tuple[float, Point]:
    best_d, best_pt = math.inf, e.points[0]
    pts = e.points
    for i in range(len(pts) - 1):
        a, b = pts[i], pts[i + 1]
        ab = (b[0] - a[0], b[1] - a[1])
        denom = ab[0] * ab[0] + ab[1] * ab[1]
        t = 0.0 if denom == 0 else max(0.0, min(1.0, (
            (p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1]) / denom))
        q = lerp(a, b, t)
        d = dist(p, q)
        if d < best_d:
            best_d, best_pt = d, q
    return best_d, best_pt


def _stratum_minis(arr: Arrangement):
    """Flat list of stratum mini-segments with bounding boxes (cached)."""
    if not hasattr(arr, "_path_minis"):
        minis = []
        for e in arr.edges:
            if e.key == "frame":
                continue
            pts = e.points
            for i in range(len(pts) - 1):
                a, b = pts[i], pts[i + 1]
                minis.append((min(a[0], b[0]), max(a[0], b[0]),
                              min(a[1], b[1]), max(a[1], b[1]), a, b))
        object.__setattr__(arr, "_path_minis", minis)
    return arr._path_minis


def _leg_clear(a: Point, b: Point, arr: Arrangement,
               allowed_touch: tuple[Point, ...]) -> bool:
    """True when segment ab meets no stratum except touching at allowed points."""
    if a == b:
        return True
    tol = arr.tol
    pad = tol.abs_tol * 4
    lx0, lx1 = min(a[0], b[0]) - pad, max(a[0], b[0]) + pad
    ly0, ly1 = min(a[1], b[1]) - pad, max(a[1], b[1]) + pad
    for x0, x1, y0, y1, p, q in _stratum_minis(arr):
        if x1 < lx0 or x0 > lx1 or y1 < ly0 or y0 > ly1:
            continue
        hit = segment_intersection(a, b, p, q, tol)
        if hit.kind == hit.NONE:
            continue
        if hit.kind == hit.OVERLAP:
            return False
        if hit.point is not None and any(
                dist(hit.point, w) <= tol.abs_tol * 8 for w in allowed_touch):
            continue
        return False
    return True


def _route_legs(a: Point, b: Point, arr: Arrangement) -> list[Point] | None:
    """Monotone staircase from a to b crossing nothing; None when stuck."""
    if b[0] < a[0] or b[1] < a[1]:
        return None
    if a == b:
        return [a, b]
    if not hasattr(arr, "_route_cache"):
        object.__setattr__(arr, "_route_cache", {})
    cache = arr._route_cache
    hit = cache.get((a, b))
    if hit is not None:
        return None if hit == "fail" else list(hit)
    touch = (a, b)
    result = None
    for mid in (((b[0], a[1])), ((a[0], b[1]))):
        legs = [p for p in (a, mid, b)]
        dedup = [legs[0]]
        for p in legs[1:]:
            if p != dedup[-1]:
                dedup.append(p)
        if all(_leg_clear(dedup[i], dedup[i + 1], arr, touch)
               for i in range(len(dedup) - 1)):
            result = dedup
            break
    if result is None:
        result = _route_grid(a, b, arr)
    cache[(a, b)] = "fail" if result is None else tuple(result)
    return result


def _route_grid(a: Point, b: Point, arr: Arrangement, res: int = 24) -> list[Point] | None:
    """Monotone lattice path on a grid spanning the bounding box of a, b."""
    dx = (b[0] - a[0]) / res
    dy = (b[1] - a[1]) / res
    if dx == 0.0 or dy == 0.0:
        return None  # degenerate boxes are already covered by the L-probe

    def node(i, j):
        return (a[0] + dx * i, a[1] + dy * j)

    touch = (a, b)
    from functools import lru_cache

    @lru_cache(maxsize=None)
    def step_ok(i1, j1, i2, j2):
        return _leg_clear(node(i1, j1), node(i2, j2), arr, touch)

    prev: dict[tuple[int, int], tuple[int, int]] = {}
    seen = {(0, 0)}
    queue = [(0, 0)]
    while queue:
        i, j = queue.pop(0)
        if (i, j) == (res, res):
            chain = [(res, res)]
            while chain[-1] != (0, 0):
                chain.append(prev[chain[-1]])
            pts = [node(i2, j2) for i2, j2 in reversed(chain)]
            out = [pts[0]]
            for p in pts[1:]:
                if p != out[-1]:
                    out.append(p)
            return out
        for ni, nj in ((i + 1, j), (i, j + 1)):
            if ni > res or nj > res or (ni, nj) in seen:
                continue
            if step_ok(i, j, ni, nj):
                seen.add((ni, nj))
                prev[(ni, nj)] = (i, j)
                queue.append((ni, nj))
    return None


def _vertex_clearance(arr: Arrangement, p: Point) -> float:
    return min((dist(p, v) for v in arr.significant_vertices()), default=math.inf)


# ---------------------------------------------------------------------------
# path construction

def _resolve_crossing(diagram: SingularValueDiagram, e: ArrangementEdge,
                      s: float) -> CrossingEvent:
    effect, pairs_with = effect_entry(diagram.effects, e.key, e.seg_index)
    if effect is None:
        raise IncompleteAnnotationError(
            f"no effect for key {e.key} (segment {e.seg_index})", keys=[e.key])
    return CrossingEvent(s=s, key=e.effective_key, pareto_key=e.key,
                         seg_index=e.seg_index, cell_dim=e.cell_dim,
                         effect=effect, pairs_with=pairs_with)


def make_path(arr: Arrangement, diagram: SingularValueDiagram,
              waypoints: list[Point], snap_radius: float | None = None,
              nudge: bool = False) -> PersistencePath:
    """Monotone PL path through the given stratum waypoints.

    Waypoints must sit on Pareto arcs, clear of arrangement vertices, and
    increase in the poset order.  With `nudge` (the server's click mode)
    waypoints are snapped to the nearest stratum and slid away from
    vertices instead of rejected.
    """
    tol = arr.tol
    delta = 1e-6 * arr.frame.diagonal
    snap = snap_radius if snap_radius is not None else tol.abs_tol * 1e3

    placed: list[tuple[Point, ArrangementEdge]] = []
    for w in waypoints:
        best = None
        for e in arr.non_frame_edges():
            d, q = _nearest_on_edge(w, e)
            if best is None or d < best[0]:
                best = (d, q, e)
        if best is None:
            raise InvalidInputError("diagram has no Pareto strata to cross")
        d, q, e = best
        if d > snap:
            raise GenericityError(
                f"waypoint {w} is not on a Pareto arc (distance {d:.3g})")
        if _vertex_clearance(arr, q) < delta:
            if not nudge:
                raise GenericityError(f"waypoint {w} is too close to an arrangement vertex")
            q = _slide_clear(q, e, arr, delta)
        placed.append((q, e))

    try:
        return _assemble_path(arr, diagram, placed)
    except RoutingError as exc:
        a = exc.details.get("a")
        b = exc.details.get("b")
        face = "?"
        if a is not None and b is not None:
            try:
                face = arr.locate(((a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0))
            except Exception:
                pass
        raise RoutingError(f"{exc} (face {face})") from exc


def _assemble_path(arr: Arrangement, diagram: SingularValueDiagram,
                   placed: list[tuple[Point, ArrangementEdge]]) -> PersistencePath:
    """Route the staircase through (waypoint, edge) pairs already placed."""
    tol = arr.tol
    pts = [p for p, _ in placed]
    for (a, _), (b, _) in zip(placed, placed[1:]):
        if b[0] < a[0] - tol.abs_tol or b[1] < a[1] - tol.abs_tol:
            raise OrderError(f"waypoints {a} and {b} are not increasing in the poset")

    start = (arr.frame.x0, arr.frame.y0)
    end = (arr.frame.x1, arr.frame.y1)
    anchors = [start] + pts + [end]
    realization: list[Point] = [start]
    for a, b in zip(anchors, anchors[1:]):
        legs = _route_legs(a, b, arr)
        if legs is None:
            raise RoutingError(f"no monotone in-face connector from {a} to {b}",
                               a=a, b=b)
        realization.extend(legs[1:])

    total = polyline_length(realization)
    crossings = []
    run = 0.0
    wp_iter = iter(placed)
    nxt = next(wp_iter, None)
    for i in range(len(realization) - 1):
        seg_a, seg_b = realization[i], realization[i + 1]
        step = dist(seg_a, seg_b)
        while nxt is not None and dist(nxt[0], seg_b) <= tol.abs_tol * 4:
            s = (run + step) / total
            crossings.append(_resolve_crossing(diagram, nxt[1], s))
            nxt = next(wp_iter, None)
        run += step
    if len(crossings) != len(placed):
        raise RoutingError("internal: crossing extraction missed a waypoint")
    return PersistencePath(waypoints=tuple(pts), realization=tuple(realization),
                           crossings=tuple(crossings))


def _slide_clear(q: Point, e: ArrangementEdge, arr: Arrangement,
                 delta: float) -> Point:
    pts = list(e.points)
    total = polyline_length(pts)
    if total <= 4 * delta:
        raise GenericityError(f"edge {e.effective_key} too short to nudge a waypoint")
    steps = 64
    best, best_d = None, -1.0
    for k in range(1, steps):
        p = polyline_point_at(pts, k / steps)
        score = min(_vertex_clearance(arr, p), 10 * delta) - dist(p, q) * 1e-9
        if score > best_d:
            best_d, best = score, p
    if best is None or _vertex_clearance(arr, best) < delta:
        raise GenericityError(f"could not nudge waypoint clear of vertices on {e.effective_key}")
    return best


# ---------------------------------------------------------------------------
# representable family

def _pareto_geometry(arr: Arrangement) -> dict[str, list[Point]]:
    geo: dict[str, list[Point]] = {}
    for e in sorted(arr.non_frame_edges(), key=lambda e: (e.key, e.seg_index)):
        pts = geo.setdefault(e.key, [])
        for p in e.points:
            if not pts or pts[-1] != p:
                pts.append(p)
    return geo


def _endpoint_lines(geo: dict[str, list[Point]]) -> tuple[list[float], list[float]]:
    xs, ys = [], []
    for pts in geo.values():
        for p in (pts[0], pts[-1]):
            xs.append(p[0])
            ys.append(p[1])
    return xs, ys


def _points_on_polyline_at_x(pts: list[Point], x: float) -> list[Point]:
    out = []
    for i in range(len(pts) - 1):
        a, b = pts[i], pts[i + 1]
        if (a[0] - x) * (b[0] - x) < 0:
            t = (x - a[0]) / (b[0] - a[0])
            out.append(lerp(a, b, t))
    return out


def _points_on_polyline_at_y(pts: list[Point], y: float) -> list[Point]:
    out = []
    for i in range(len(pts) - 1):
        a, b = pts[i], pts[i + 1]
        if (a[1] - y) * (b[1] - y) < 0:
            t = (y - a[1]) / (b[1] - a[1])
            out.append(lerp(a, b, t))
    return out


def _candidate_pool(arr: Arrangement) -> dict[int, list[Point]]:
    """Waypoint candidates per arrangement edge.

    Per stratum: arc-length midpoint, nearly lower-right and upper-left
    endpoints, and intersections with axis lines through other strata's
    endpoints; all nudged clear of arrangement vertices.  Edges the pool
    misses fall back to their own midpoint.
    """
    geo = _pareto_geometry(arr)
    xs, ys = _endpoint_lines(geo)
    delta = 1e-6 * arr.frame.diagonal
    pool: dict[int, list[Point]] = {e.id: [] for e in arr.non_frame_edges()}

    edges_by_key: dict[str, list[ArrangementEdge]] = {}
    for e in arr.non_frame_edges():
        edges_by_key.setdefault(e.key, []).append(e)

    for key, pts in geo.items():
        total = polyline_length(pts)
        eps_arc = max(delta, 1e-3 * total)
        raw: list[Point] = [polyline_point_at(pts, 0.5),
                            polyline_point_at(pts, eps_arc / total),
                            polyline_point_at(pts, 1.0 - eps_arc / total)]
        for x in xs:
            raw.extend(_points_on_polyline_at_x(pts, x))
        for y in ys:
            raw.extend(_points_on_polyline_at_y(pts, y))
        for p in raw:
            for cand in _declash(p, key, edges_by_key[key], arr, delta):
                eid, q = cand
                if all(dist(q, other) > delta for other in pool[eid]):
                    pool[eid].append(q)

    # endpoint-line intersections land on arrangement vertices; the nudged
    # both-side points are exactly near-end candidates of each edge
    for e in arr.non_frame_edges():
        pts = list(e.points)
        total = polyline_length(pts)
        if total > 8 * delta:
            for t in (3 * delta / total, 0.5, 1.0 - 3 * delta / total):
                q = polyline_point_at(pts, t)
                if (_vertex_clearance(arr, q) >= delta
                        and all(dist(q, other) > delta for other in pool[e.id])):
                    pool[e.id].append(q)
    for eid in pool:
        pool[eid].sort(key=lambda p: (p[0] + p[1], p[0]))
    return pool


def _declash(p: Point, key: str, edges: list[ArrangementEdge], arr: Arrangement,
             delta: float) -> list[tuple[int, Point]]:
    """Snap a pool point to its stratum's edges, nudging off vertices."""
    out = []
    for e in edges:
        d, q = _nearest_on_edge(p, e)
        if d > arr.tol.abs_tol * 8:
            continue
        if _vertex_clearance(arr, q) < delta:
            pts = list(e.points)
            total = polyline_length(pts)
            if total <= 6 * delta:
                continue
            for t in (3 * delta / total, 1.0 - 3 * delta / total):
                q2 = polyline_point_at(pts, t)
                if _vertex_clearance(arr, q2) >= delta:
                    out.append((e.id, q2))
        else:
            out.append((e.id, q))
    return out


def _edge_min_corner(e: ArrangementEdge) -> Point:
    return (min(p[0] for p in e.points), min(p[1] for p in e.points))


def _edge_max_corner(e: ArrangementEdge) -> Point:
    return (max(p[0] for p in e.points), max(p[1] for p in e.points))


def _edge_reachable_from(e: ArrangementEdge, p: Point) -> bool:
    """True when some point of the edge lies up-right of p (exact on polylines).

    Corner edges decrease in y as x increases, so the best available y for
    x >= p.x is the edge's height directly at p.x.
    """
    pts = e.points
    x_min, x_max = pts[0][0], pts[-1][0]
    if x_min > x_max:
        x_min, x_max = x_max, x_min
    y_max = max(pts[0][1], pts[-1][1])
    if p[0] > x_max:
        return False
    if p[0] <= x_min:
        return p[1] <= y_max
    if pts[0][0] <= pts[-1][0]:
        seq = pts
    else:
        seq = tuple(reversed(pts))
    lo, hi = 0, len(seq) - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if seq[mid][0] <= p[0]:
            lo = mid
        else:
            hi = mid
    a, b = seq[lo], seq[hi]
    if b[0] == a[0]:
        y_here = max(a[1], b[1])
    else:
        t = (p[0] - a[0]) / (b[0] - a[0])
        y_here = a[1] + (b[1] - a[1]) * t
    return p[1] <= y_here + 1e-15


def rep_family(arr: Arrangement, diagram: SingularValueDiagram,
               max_paths: int = 10000) -> RepFamily:
    """The representable family rep(f): one realized path per crossing sequence.

    Depth-first over the face graph from the bottom face to the top face;
    each arrangement edge is crossed at most once per path (monotone paths
    cannot recross a descending stratum or ray).
    """
    pool = _candidate_pool(arr)
    bottom, top = arr.bottom_face(), arr.top_face()
    edge_ids = {e.id: e for e in arr.edges}

    out_edges: dict[str, list[ArrangementEdge]] = {}
    for e in arr.non_frame_edges():
        if "outer" in (e.ll_face, e.ur_face):
            continue
        out_edges.setdefault(e.ll_face, []).append(e)
    for k in out_edges:
        out_edges[k].sort(key=lambda e: (e.key, e.seg_index))

    sequences: list[tuple[int, ...]] = []
    truncated = False

    def dfs(face: str, used: frozenset[int], seq: tuple[int, ...], pos_min: Point):
        nonlocal truncated
        if len(sequences) >= max_paths:
            truncated = True
            return
        if face == top:
            sequences.append(seq)
            return
        for e in out_edges.get(face, []):
            if e.id in used:
                continue
            if not _edge_reachable_from(e, pos_min):
                continue
            mn = _edge_min_corner(e)
            nxt_pos = (max(pos_min[0], mn[0]), max(pos_min[1], mn[1]))
            dfs(e.ur_face, used | {e.id}, seq + (e.id,), nxt_pos)

    dfs(bottom, frozenset(), (), (arr.frame.x0, arr.frame.y0))

    paths: list[PersistencePath] = []
    seen_keys: set[tuple[str, ...]] = set()
    for seq in sorted(sequences,
                      key=lambda s: tuple(edge_ids[i].effective_key for i in s)):
        keyseq = tuple(edge_ids[i].effective_key for i in seq)
        if keyseq in seen_keys:
            continue
        path = _realize_sequence(arr, diagram, [edge_ids[i] for i in seq], pool)
        if path is not None:
            seen_keys.add(keyseq)
            paths.append(path)
    return RepFamily(paths=tuple(paths), truncated=truncated)


def _realize_sequence(arr: Arrangement, diagram: SingularValueDiagram,
                      edges: list[ArrangementEdge], pool: dict[int, list[Point]],
                      tries: int = 60) -> PersistencePath | None:
    """Choose one candidate per edge (backtracking) and route the staircase."""
    if not edges:
        try:
            return make_path(arr, diagram, [])
        except RoutingError:
            return None
    attempts = 0

    def backtrack(k: int, chosen: list[Point]) -> list[Point] | None:
        nonlocal attempts
        if k == len(edges):
            return list(chosen)
        for cand in pool[edges[k].id]:
            if chosen and (cand[0] < chosen[-1][0] or cand[1] < chosen[-1][1]):
                continue
            attempts += 1
            if attempts > tries * max(1, len(edges)):
                return None
            got = backtrack(k + 1, chosen + [cand])
            if got is not None:
                return got
        return None

    waypoints = backtrack(0, [])
    if waypoints is None:
        return None
    try:
        return _assemble_path(arr, diagram, list(zip(waypoints, edges)))
    except (RoutingError, OrderError, GenericityError):
        return None


def random_path(arr: Arrangement, diagram: SingularValueDiagram,
                rng: random.Random, max_steps: int = 400) -> PersistencePath:
    """A random valid persistence path (for the exhaustiveness probe)."""
    bottom, top = arr.bottom_face(), arr.top_face()
    out_edges: dict[str, list[ArrangementEdge]] = {}
    for e in arr.non_frame_edges():
        if "outer" in (e.ll_face, e.ur_face):
            continue
        out_edges.setdefault(e.ll_face, []).append(e)
    for k in out_edges:
        out_edges[k].sort(key=lambda e: (e.key, e.seg_index))
    delta = 1e-6 * arr.frame.diagonal

    for _attempt in range(max_steps):
        face = bottom
        pos = (arr.frame.x0, arr.frame.y0)
        used: set[int] = set()
        placed: list[tuple[Point, ArrangementEdge]] = []
        ok = True
        steps = 0
        while face != top and steps < 60:
            steps += 1
            options = []
            for e in out_edges.get(face, []):
                if e.id in used:
                    continue
                cands = _ahead_points(e, pos, delta, arr)
                if cands:
                    options.append((e, cands))
            if not options:
                ok = False
                break
            e, cands = options[rng.randrange(len(options))]
            w = cands[rng.randrange(len(cands))]
            placed.append((w, e))
            used.add(e.id)
            pos = w
            face = e.ur_face
        if ok and face == top:
            try:
                return _assemble_path(arr, diagram, placed)
            except (RoutingError, OrderError, GenericityError):
                continue
    raise RoutingError("could not draw a random persistence path")


def _ahead_points(e: ArrangementEdge, pos: Point, delta: float,
                  arr: Arrangement) -> list[Point]:
    pts = list(e.points)
    out = []
    samples = 16
    total = polyline_length(pts)
    if total <= 4 * delta:
        return []
    for k in range(1, samples):
        q = polyline_point_at(pts, k / samples)
        if q[0] >= pos[0] and q[1] >= pos[1] and _vertex_clearance(arr, q) >= delta:
            out.append(q)
    return out


def pbn_along_path(path: PersistencePath, barcode, s1: float, s2: float, q: int) -> int:
    """Persistent Betti number along the path: bars containing [s1, s2]."""
    if not 0.0 <= s1 <= s2 <= 1.0:
        raise OrderError("require 0 <= s1 <= s2 <= 1")
    count = 0
    for bar in barcode.bars_in_dim(q):
        birth, death = bar.birth, bar.death
        if birth <= s1 and (death is None or death >= s2):
            count += 1
    return count
