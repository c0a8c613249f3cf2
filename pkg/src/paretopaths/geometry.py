"""Planar geometry primitives with a single tolerance layer.

Every approximate comparison in the package routes through a Tolerance
instance so the floating-point backend could be swapped out wholesale.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

Point = tuple[float, float]

DEFAULT_EPS = 1e-9


@dataclass(frozen=True)
class Tolerance:
    """Relative tolerance anchored to a length scale (frame diagonal)."""

    eps: float = DEFAULT_EPS
    scale: float = 1.0

    @property
    def abs_tol(self) -> float:
        return self.eps * max(self.scale, 1.0)

    def eq(self, a: float, b: float) -> bool:
        return abs(a - b) <= self.abs_tol

    def lt(self, a: float, b: float) -> bool:
        return a < b - self.abs_tol

    def le(self, a: float, b: float) -> bool:
        return a <= b + self.abs_tol

    def is_zero(self, a: float) -> bool:
        return abs(a) <= self.abs_tol

    def point_eq(self, p: Point, q: Point) -> bool:
        return self.eq(p[0], q[0]) and self.eq(p[1], q[1])


def sub(p: Point, q: Point) -> Point:
    return (p[0] - q[0], p[1] - q[1])


def add(p: Point, q: Point) -> Point:
    return (p[0] + q[0], p[1] + q[1])


def dot(p: Point, q: Point) -> float:
    return p[0] * q[0] + p[1] * q[1]


def cross(p: Point, q: Point) -> float:
    return p[0] * q[1] - p[1] * q[0]


def norm(p: Point) -> float:
    return math.hypot(p[0], p[1])


def unit(p: Point) -> Point:
    n = norm(p)
    if n == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return (p[0] / n, p[1] / n)


def dist(p: Point, q: Point) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def lerp(p: Point, q: Point, t: float) -> Point:
    return (p[0] + (q[0] - p[0]) * t, p[1] + (q[1] - p[1]) * t)


def seg_point_dist(p: Point, a: Point, b: Point) -> float:
    ab = sub(b, a)
    denom = dot(ab, ab)
    if denom == 0.0:
        return dist(p, a)
    t = dot(sub(p, a), ab) / denom
    t = min(1.0, max(0.0, t))
    return dist(p, lerp(a, b, t))


def polyline_length(pts: list[Point]) -> float:
    return sum(dist(pts[i], pts[i + 1]) for i in range(len(pts) - 1))


def polyline_point_at(pts: list[Point], s: float) -> Point:
    """Point at arc-length fraction s in [0, 1] along a polyline."""
    total = polyline_length(pts)
    if total == 0.0:
        return pts[0]
    target = s * total
    run = 0.0
    for i in range(len(pts) - 1):
        step = dist(pts[i], pts[i + 1])
        if run + step >= target and step > 0.0:
            return lerp(pts[i], pts[i + 1], (target - run) / step)
        run += step
    return pts[-1]


class SegIntersection:
    """Classified intersection of two closed segments."""

    __slots__ = ("kind", "point", "t", "u")

    NONE = "none"
    PROPER = "proper"  # interior-interior transversal crossing
    TOUCH = "touch"  # endpoint involved on at least one side
    OVERLAP = "overlap"  # collinear with positive-length overlap

    def __init__(self, kind: str, point: Point | None = None,
                 t: float = 0.0, u: float = 0.0):
        self.kind = kind
        self.point = point
        self.t = t
        self.u = u


def segment_intersection(a: Point, b: Point, c: Point, d: Point,
                         tol: Tolerance) -> SegIntersection:
    """Intersection of segments ab and cd with tolerance-aware classification."""
    r = sub(b, a)
    s = sub(d, c)
    denom = cross(r, s)
    qp = sub(c, a)
    len_r = norm(r)
    len_s = norm(s)
    if len_r == 0.0 or len_s == 0.0:
        return SegIntersection(SegIntersection.NONE)
    # angular degeneracy measured relative to segment lengths
    if abs(denom) <= tol.abs_tol * max(len_r, len_s):
        # parallel; collinear overlap check
        if abs(cross(qp, r)) > tol.abs_tol * len_r:
            return SegIntersection(SegIntersection.NONE)
        t0 = dot(qp, r) / dot(r, r)
        t1 = t0 + dot(s, r) / dot(r, r)
        lo, hi = min(t0, t1), max(t0, t1)
        span = tol.abs_tol / len_r
        if hi < -span or lo > 1.0 + span:
            return SegIntersection(SegIntersection.NONE)
        if hi <= span or lo >= 1.0 - span:
            # touching at a single shared endpoint
            pt = a if hi <= span else b
            return SegIntersection(SegIntersection.TOUCH, pt)
        return SegIntersection(SegIntersection.OVERLAP)
    t = cross(qp, s) / denom
    u = cross(qp, r) / denom
    et = tol.abs_tol / len_r
    eu = tol.abs_tol / len_s
    if t < -et or t > 1.0 + et or u < -eu or u > 1.0 + eu:
        return SegIntersection(SegIntersection.NONE)
    pt = lerp(a, b, min(1.0, max(0.0, t)))
    endpointish = (t <= et or t >= 1.0 - et or u <= eu or u >= 1.0 - eu)
    kind = SegIntersection.TOUCH if endpointish else SegIntersection.PROPER
    return SegIntersection(kind, pt, t, u)


def point_in_polygon(p: Point, cycle: list[Point]) -> bool:
    """Crossing-number test; cycle is a closed polygon (first != last ok)."""
    x, y = p
    inside = False
    n = len(cycle)
    for i in range(n):
        x1, y1 = cycle[i]
        x2, y2 = cycle[(i + 1) % n]
        if (y1 > y) != (y2 > y):
            xi = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if x < xi:
                inside = not inside
    return inside


def polygon_signed_area(cycle: list[Point]) -> float:
    area = 0.0
    n = len(cycle)
    for i in range(n):
        x1, y1 = cycle[i]
        x2, y2 = cycle[(i + 1) % n]
        area += x1 * y2 - x2 * y1
    return 0.5 * area
