"""Built-in diagram generators and sampled manifold models.

The rotational family f(z, p) = z * g(p) is generated together with its
ground-truth region labels, computed from the fiber Morse data by a
closed-form bookkeeping:

    a, b > 0:      P = P(F) + t * P({g <= min(a,b)}) + Tiny(max(a,b), hypot(a,b))
    otherwise:     P = P({g >= d}),  d = hypot(min(a,0), min(b,0))

Tiny collects the relative homology of the level-band components pinned
at the max(a,b) level (the "extra sheet" between the two quadrant-edge
exclusions).  Per-edge create/kill effects are read off as label
differences across arrangement edges; the oracle acceptance test checks
the whole construction against brute-force sublevel homology.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .arrangement import Arrangement, build_arrangement
from .core import (
    Cusp,
    FoldArc,
    Frame,
    InvalidInputError,
    InconsistentLabelingError,
    PoincarePolynomial,
    SingularValueDiagram,
    canonical_index,
    poly_monomial,
)
from .criticality import compute_critical_set
from .geometry import Point
from .labeling import propagate_labels
from .oracle import SampledModel


# ---------------------------------------------------------------------------
# formal fibers

@dataclass(frozen=True)
class SphereFiber:
    """Perfect lacunary Morse data (c_i, I_i) on a closed fiber of dim m."""

    crit: tuple[tuple[float, int], ...]
    dim: int

    def total(self) -> PoincarePolynomial:
        out = PoincarePolynomial(())
        for _, idx in self.crit:
            out = out + poly_monomial(idx)
        return out

    def sublevel(self, s: float) -> PoincarePolynomial:
        out = PoincarePolynomial(())
        for c, idx in self.crit:
            if c < s:
                out = out + poly_monomial(idx)
        return out

    def superlevel(self, d: float) -> PoincarePolynomial:
        out = PoincarePolynomial(())
        for c, idx in self.crit:
            if c > d:
                out = out + poly_monomial(self.dim - idx)
        return out

    def band(self, hi: float, rr: float) -> PoincarePolynomial:
        out = PoincarePolynomial(())
        for c, idx in self.crit:
            if hi < c < rr:
                out = out + poly_monomial(idx)
        return out


@dataclass(frozen=True)
class CircleFiber:
    """Morse data on a circle fiber, values in cyclic order around S^1."""

    cyclic_values: tuple[float, ...]

    def _minima_maxima(self):
        vals = self.cyclic_values
        n = len(vals)
        minima, maxima = [], []
        for k, v in enumerate(vals):
            lo = vals[(k - 1) % n]
            hi = vals[(k + 1) % n]
            if v < lo and v < hi:
                minima.append(v)
            elif v > lo and v > hi:
                maxima.append(v)
            else:
                raise InvalidInputError("circle fiber values must alternate min/max")
        return minima, maxima

    def total(self) -> PoincarePolynomial:
        return PoincarePolynomial((1, 1))

    def sublevel(self, s: float) -> PoincarePolynomial:
        minima, maxima = self._minima_maxima()
        if s > max(maxima):
            return PoincarePolynomial((1, 1))
        b0 = sum(1 for v in minima if v < s) - sum(1 for v in maxima if v < s)
        return PoincarePolynomial((b0,)) if b0 > 0 else PoincarePolynomial(())

    def superlevel(self, d: float) -> PoincarePolynomial:
        minima, maxima = self._minima_maxima()
        if d < min(minima):
            return PoincarePolynomial((1, 1))
        b0 = sum(1 for v in maxima if v > d) - sum(1 for v in minima if v > d)
        return PoincarePolynomial((b0,)) if b0 > 0 else PoincarePolynomial(())

    def band(self, hi: float, rr: float, samples: int = 4096) -> PoincarePolynomial:
        """Relative homology of {hi <= g <= R} components rel their hi-level ends."""
        vals = self.cyclic_values
        n = len(vals)
        g = []
        per = samples // n
        for k in range(n):
            v0, v1 = vals[k], vals[(k + 1) % n]
            for s in range(per):
                g.append(v0 + (v1 - v0) * s / per)
        m = len(g)
        inside = [hi <= x <= rr for x in g]
        if all(inside):
            return PoincarePolynomial((1, 1))
        out = PoincarePolynomial(())
        start = next(i for i in range(m) if not inside[i])
        i = start
        while True:
            if inside[(i + 1) % m]:
                j = (i + 1) % m
                while inside[(j + 1) % m]:
                    j = (j + 1) % m
                attached = (g[i] < hi) + (g[(j + 1) % m] < hi)
                if attached == 2:
                    out = out + poly_monomial(1)
                elif attached == 0:
                    out = out + poly_monomial(0)
                i = j
            i = (i + 1) % m
            if i == start:
                break
        return out


def rotational_label(a: float, b: float, fiber) -> PoincarePolynomial:
    """Betti polynomial of {(z, p) : z*g(p) <= (a, b)} from the fiber data."""
    if a <= 0.0 or b <= 0.0:
        d = math.hypot(min(a, 0.0), min(b, 0.0))
        return fiber.superlevel(d)
    lo, hi = min(a, b), max(a, b)
    rr = math.hypot(a, b)
    out = fiber.total()
    sub = fiber.sublevel(lo)
    out = out + PoincarePolynomial((0, *sub.coeffs))
    out = out + fiber.band(hi, rr)
    return out


# ---------------------------------------------------------------------------
# geometry builders

def _closed_curve(cx: float, cy: float, rx: float, ry: float,
                  n: int = 256) -> tuple[Point, ...]:
    """Closed convex polyline with exact vertices at the four axis tangencies.

    The seam sits at 45 degrees so it is never a tangency; traversal is
    counter-clockwise.
    """
    if n % 8 != 0:
        raise InvalidInputError("curve resolution must be divisible by 8")
    pts = []
    for j in range(n):
        th = 2.0 * math.pi * j / n
        if j == 0:
            p = (cx + rx, cy)
        elif j == n // 4:
            p = (cx, cy + ry)
        elif j == n // 2:
            p = (cx - rx, cy)
        elif j == 3 * n // 4:
            p = (cx, cy - ry)
        else:
            p = (cx + rx * math.cos(th), cy + ry * math.sin(th))
        pts.append(p)
    j0 = n // 8
    rolled = pts[j0:] + pts[:j0] + [pts[j0]]
    return tuple(rolled)


def _circle_arc(arc_id: str, c: float, i: int, j: int, n: int = 256,
                center: Point = (0.0, 0.0)) -> FoldArc:
    pts = _closed_curve(center[0], center[1], c, c, n)
    v = (math.cos(math.pi / 4.0), math.sin(math.pi / 4.0))  # outward at the seam
    return FoldArc(id=arc_id, points=pts, index=canonical_index(v, i, j))


def _ellipse_arc(arc_id: str, center: Point, rx: float, ry: float,
                 i: int, j: int, n: int = 128) -> FoldArc:
    pts = _closed_curve(center[0], center[1], rx, ry, n)
    d = (pts[1][0] - pts[0][0], pts[1][1] - pts[0][1])
    outward = (d[1], -d[0])  # CCW traversal: outward is minus the left normal
    return FoldArc(id=arc_id, points=pts, index=canonical_index(outward, i, j))


# ---------------------------------------------------------------------------
# effect assignment from a face labeler

def _effects_from_labels(arr: Arrangement, label_of_face: dict[str, PoincarePolynomial]):
    """Per-edge create/kill read off label differences; compressed per arc."""
    per_edge: dict[str, tuple[str, str, int]] = {}
    for e in arr.non_frame_edges():
        if "outer" in (e.ll_face, e.ur_face):
            continue
        ll = label_of_face[e.ll_face]
        ur = label_of_face[e.ur_face]
        diff = [ur.coeff(k) - ll.coeff(k)
                for k in range(max(len(ll.coeffs), len(ur.coeffs)))]
        nz = [(k, c) for k, c in enumerate(diff) if c != 0]
        if len(nz) != 1 or abs(nz[0][1]) != 1:
            raise InconsistentLabelingError(
                f"labels across {e.effective_key} differ by {diff}, not one handle")
        k, c = nz[0]
        if c == 1 and k == e.cell_dim:
            eff = "create"
        elif c == -1 and k == e.cell_dim - 1:
            eff = "kill"
        else:
            raise InconsistentLabelingError(
                f"label step {('+' if c > 0 else '-')}t^{k} across {e.effective_key} "
                f"does not match a {e.cell_dim}-handle")
        per_edge[e.effective_key] = (eff, e.key, e.seg_index)

    effects: dict[str, str] = {}
    by_key: dict[str, list[tuple[int, str]]] = {}
    for eff, key, seg in per_edge.values():
        by_key.setdefault(key, []).append((seg, eff))
    for key, entries in by_key.items():
        effs = {e for _, e in entries}
        if len(effs) == 1:
            effects[key] = effs.pop()
        else:
            for seg, eff in entries:
                effects[f"{key}#{seg}"] = eff
    return effects


def _labels_on_arrangement(arr: Arrangement, labeler) -> dict[str, PoincarePolynomial]:
    return {f.id: labeler(f.sample[0], f.sample[1]) for f in arr.faces}


# ---------------------------------------------------------------------------
# generators

def gen_rotational(critical_values, indices, fiber_dim: int,
                   curve_points: int = 256,
                   frame: Frame | None = None) -> SingularValueDiagram:
    """Suspension-type diagram: concentric fold circles of f(z,p) = z*g(p).

    The fiber Morse data must be perfect (every critical point carries a
    fiber homology generator) for the generated effects to be consistent;
    the generator verifies consistency by propagating before returning.
    """
    cs = tuple(float(c) for c in critical_values)
    idx = tuple(int(i) for i in indices)
    if len(cs) != len(idx):
        raise InvalidInputError("need one index per critical value")
    if any(c <= 0 for c in cs) or sorted(set(cs)) != list(cs):
        raise InvalidInputError("critical values must be positive, distinct, increasing")
    if any(not 0 <= i <= fiber_dim for i in idx):
        raise InvalidInputError(f"indices must lie in [0, {fiber_dim}]")
    n = fiber_dim + 1
    if frame is None:
        r = (cs[-1] + 1.0) if cs else 2.0
        frame = Frame(-r, -r, r, r)

    arcs = tuple(
        _circle_arc(f"circle{k}", c, fiber_dim - i, i, n=curve_points)
        for k, (c, i) in enumerate(zip(cs, idx)))
    total = PoincarePolynomial(())
    for i in idx:
        total = total + poly_monomial(i) + poly_monomial(i + 1)

    draft = SingularValueDiagram(n=n, frame=frame, arcs=arcs, total_poly=total)
    if not cs:
        return draft
    fiber = SphereFiber(crit=tuple(zip(cs, idx)), dim=fiber_dim)
    return _finish_with_labeler(draft, lambda a, b: rotational_label(a, b, fiber))


def _finish_with_labeler(draft: SingularValueDiagram, labeler) -> SingularValueDiagram:
    pareto = compute_critical_set(draft)
    arr = build_arrangement(pareto, draft.frame, draft.tolerance())
    labels = _labels_on_arrangement(arr, labeler)
    bottom, top = arr.bottom_face(), arr.top_face()
    if labels[bottom].coeffs != ():
        raise InconsistentLabelingError("bottom face label is not zero")
    if draft.total_poly is not None and labels[top] != draft.total_poly:
        raise InconsistentLabelingError(
            f"top face label {labels[top]} differs from declared total {draft.total_poly}")
    effects = _effects_from_labels(arr, labels)
    diagram = SingularValueDiagram(
        n=draft.n, frame=draft.frame, arcs=draft.arcs, cusps=draft.cusps,
        total_poly=draft.total_poly, effects=effects, field_tag=draft.field_tag)
    propagate_labels(arr, diagram)  # intrinsic consistency check
    return diagram


def gen_klein() -> SingularValueDiagram:
    """Transcription of the Klein-bottle projection picture.

    Four concentric fold circles whose fiber Morse data (values 1, 3, 2, 4
    in cyclic order around the base circle) reproduces the published
    region labels, including 1+2t, 1+3t, 1+4t, and top label 1+2t+t^2.
    """
    cyclic = (1.0, 3.0, 2.0, 4.0)
    radii = sorted(cyclic)
    minima = {1.0, 2.0}
    arcs = []
    for k, c in enumerate(radii):
        if c in minima:
            i, j = 1, 0  # fiber minimum
        else:
            i, j = 0, 1  # fiber maximum
        arcs.append(_circle_arc(f"circle{k}", c, i, j, n=128))
    frame = Frame(-5.5, -5.5, 5.5, 5.5)
    draft = SingularValueDiagram(
        n=2, frame=frame, arcs=tuple(arcs),
        total_poly=PoincarePolynomial((1, 2, 1)))
    fiber = CircleFiber(cyclic_values=cyclic)
    return _finish_with_labeler(draft, lambda a, b: rotational_label(a, b, fiber))


def gen_cupped_sphere() -> SingularValueDiagram:
    """Sphere projection with a cupped pocket: equator fold plus an eye."""
    equator = _circle_arc("equator", 1.0, 0, 1, n=256)

    cusp_a = (-0.45, 0.35)
    cusp_b = (0.35, -0.45)
    axis = (cusp_b[0] - cusp_a[0], cusp_b[1] - cusp_a[1])
    w = (-axis[1] / math.hypot(*axis), axis[0] / math.hypot(*axis))  # NE normal

    def eye_arc(arc_id: str, bulge: float, i: int, j: int) -> FoldArc:
        pts = []
        segs = 24
        for s in range(segs + 1):
            t = s / segs
            h = bulge * math.sin(math.pi * t) ** 2
            pts.append((cusp_a[0] + axis[0] * t + w[0] * h,
                        cusp_a[1] + axis[1] * t + w[1] * h))
        d0 = (pts[1][0] - pts[0][0], pts[1][1] - pts[0][1])
        ln = (-d0[1], d0[0])
        return FoldArc(id=arc_id, points=tuple(pts),
                       index=canonical_index(ln, i, j),
                       endpoint_kinds=("cusp:ca", "cusp:cb"))

    eye_upper = eye_arc("eye_upper", +0.22, 0, 1)
    eye_lower = eye_arc("eye_lower", -0.22, 1, 0)
    tangent = (axis[0] / math.hypot(*axis), axis[1] / math.hypot(*axis))
    cusps = (
        Cusp(id="ca", point=cusp_a, arcs=("eye_upper", "eye_lower"), tangent=tangent),
        Cusp(id="cb", point=cusp_b, arcs=("eye_upper", "eye_lower"), tangent=tangent),
    )
    effects = {
        "corner:equator:0": "create",      # lower-left quarter, 0-handle
        "corner:equator:1": "create",      # upper-right quarter, 1-handle (band)
        "vtail:equator:1": "create",       # west ray, exterior, 0-handle
        "htail:equator:2": "create",       # south ray, exterior, 0-handle
        "htail:equator:0#0": "kill",       # north ray inside the pocket
        "htail:equator:0#1": "create",
        "vtail:equator:3#0": "kill",       # east ray inside the pocket
        "vtail:equator:3#1": "create",
        "corner:eye_lower:0": "create",    # entering the eye: new component
        "corner:eye_upper:0": "kill",      # leaving the eye: components merge
    }
    return SingularValueDiagram(
        n=2, frame=Frame(-2.0, -2.0, 2.0, 2.0),
        arcs=(equator, eye_upper, eye_lower), cusps=cusps,
        total_poly=PoincarePolynomial((1, 0, 1)), effects=effects)


def gen_cyclic_solid_torus() -> SingularValueDiagram:
    """Two interleaved (1,1)-loops whose Pareto strata form a Wan cycle.

    The shell fold closes the picture off so the filtration starts empty;
    effects follow the suspension pattern (corner and exterior-tail
    strata create; interior tails kill below their sibling crossing and
    create above it), which is vertex-consistent by construction.
    """
    shell = _circle_arc("shell", 8.0, 0, 2, n=256, center=(2.3, 1.9))
    loop_a = _ellipse_arc("loop_a", (2.0, 2.2), 0.5, 1.8, 1, 1, n=128)
    loop_b = _ellipse_arc("loop_b", (2.6, 1.2), 1.8, 0.5, 1, 1, n=128)
    frame = Frame(-6.5, -7.0, 11.2, 10.8)
    draft = SingularValueDiagram(n=3, frame=frame, arcs=(shell, loop_a, loop_b))

    pareto = compute_critical_set(draft)
    arr = build_arrangement(pareto, frame, draft.tolerance())
    siblings: dict[str, Point] = {}
    for arc_id, (xe, yn) in {"shell": (10.3, 9.9), "loop_a": (2.5, 4.0),
                             "loop_b": (4.4, 1.7)}.items():
        siblings[arc_id] = (xe, yn)
    effects: dict[str, str] = {}
    for pa in pareto:
        if pa.kind == "corner" or pa.kiss == "exterior":
            effects[pa.key] = "create"
    for e in arr.non_frame_edges():
        pa = next(p for p in pareto if p.key == e.key)
        if pa.kind == "corner" or pa.kiss == "exterior":
            continue
        xe, yn = siblings[pa.source]
        mid = e.midpoint()
        before = mid[1] < yn if pa.kind == "tail-vertical" else mid[0] < xe
        effects[e.effective_key] = "kill" if before else "create"

    diagram = SingularValueDiagram(n=3, frame=frame,
                                   arcs=(shell, loop_a, loop_b), effects=effects)
    labeling = propagate_labels(arr, diagram)
    total = labeling.poly(arr.top_face())
    return SingularValueDiagram(n=3, frame=frame, arcs=(shell, loop_a, loop_b),
                                effects=effects, total_poly=total)


# ---------------------------------------------------------------------------
# sampled models

def rotational_model(critical_values=(1.0, 3.0), indices=(0, 2),
                     n_z: int = 80, n_long: int = 12,
                     n_rings: int = 4) -> SampledModel:
    """Product cell complex for S^1 x S^2 with f(z, p) = z * g(p).

    The sphere is a latitude-ring mesh whose pole g-values are the fiber
    critical values; z is sampled with exact vertices on both axes.
    """
    if tuple(indices) != (0, 2) or len(critical_values) != 2:
        raise InvalidInputError(
            "the sampled model supports the (min, max) two-sphere fiber only")
    c_lo, c_hi = float(critical_values[0]), float(critical_values[1])
    if n_z % 4 != 0:
        raise InvalidInputError("n_z must be divisible by 4")

    # sphere complex ----------------------------------------------------
    sv: list[float] = [c_lo]  # g value per sphere vertex
    ring_of: list[list[int]] = []
    for r in range(n_rings):
        g = c_lo + (c_hi - c_lo) * (r + 1) / (n_rings + 1)
        ring = []
        for _ in range(n_long):
            ring.append(len(sv))
            sv.append(g)
        ring_of.append(ring)
    pole_hi = len(sv)
    sv.append(c_hi)

    s_edges: list[tuple[int, int]] = []
    s_tris: list[tuple[int, int, int]] = []

    def add_tri(a, b, c):
        s_tris.append((a, b, c))

    first = ring_of[0]
    for k in range(n_long):
        add_tri(0, first[k], first[(k + 1) % n_long])
    for r in range(n_rings - 1):
        lo_ring, hi_ring = ring_of[r], ring_of[r + 1]
        for k in range(n_long):
            a, b = lo_ring[k], lo_ring[(k + 1) % n_long]
            c, d = hi_ring[k], hi_ring[(k + 1) % n_long]
            add_tri(a, b, c)
            add_tri(b, d, c)
    last = ring_of[-1]
    for k in range(n_long):
        add_tri(last[k], last[(k + 1) % n_long], pole_hi)

    edge_ix: dict[tuple[int, int], int] = {}

    def edge_id(a, b):
        key = (a, b) if a < b else (b, a)
        if key not in edge_ix:
            edge_ix[key] = len(s_edges)
            s_edges.append(key)
        return edge_ix[key]

    tri_bnd = []
    for a, b, c in s_tris:
        tri_bnd.append((edge_id(a, b), edge_id(b, c), edge_id(a, c)))

    # product with the z-circle -----------------------------------------
    thetas = []
    for k in range(n_z):
        th = 2.0 * math.pi * k / n_z
        if k == 0:
            z = (1.0, 0.0)
        elif k == n_z // 4:
            z = (0.0, 1.0)
        elif k == n_z // 2:
            z = (-1.0, 0.0)
        elif k == 3 * n_z // 4:
            z = (0.0, -1.0)
        else:
            z = (math.cos(th), math.sin(th))
        thetas.append(z)

    cells: list[tuple[int, list[int]]] = []
    vert_vals: dict[int, Point] = {}

    n_sv, n_se, n_st = len(sv), len(s_edges), len(s_tris)

    def vv(zk, p):  # vertex x vertex
        return zk * n_sv + p

    base_ve = n_z * n_sv

    def ve(zk, e):  # vertex x edge
        return base_ve + zk * n_se + e

    base_ev = base_ve + n_z * n_se

    def ev(zk, p):  # z-edge (zk, zk+1) x vertex
        return base_ev + zk * n_sv + p

    base_vt = base_ev + n_z * n_sv

    def vt(zk, t):
        return base_vt + zk * n_st + t

    base_ee = base_vt + n_z * n_st

    def ee(zk, e):
        return base_ee + zk * n_se + e

    base_et = base_ee + n_z * n_se

    def et(zk, t):
        return base_et + zk * n_st + t

    total = base_et + n_z * n_st
    cells = [None] * total  # type: ignore[list-item]
    for zk in range(n_z):
        zx, zy = thetas[zk]
        for p in range(n_sv):
            cells[vv(zk, p)] = (0, [])
            vert_vals[vv(zk, p)] = (sv[p] * zx, sv[p] * zy)
        for e, (pa, pb) in enumerate(s_edges):
            cells[ve(zk, e)] = (1, [vv(zk, pa), vv(zk, pb)])
        for p in range(n_sv):
            cells[ev(zk, p)] = (1, [vv(zk, p), vv((zk + 1) % n_z, p)])
        for t, (ea, eb, ec) in enumerate(tri_bnd):
            cells[vt(zk, t)] = (2, [ve(zk, ea), ve(zk, eb), ve(zk, ec)])
        for e, (pa, pb) in enumerate(s_edges):
            cells[ee(zk, e)] = (2, [ve(zk, e), ve((zk + 1) % n_z, e),
                                    ev(zk, pa), ev(zk, pb)])
        for t, (ea, eb, ec) in enumerate(tri_bnd):
            cells[et(zk, t)] = (3, [vt(zk, t), vt((zk + 1) % n_z, t),
                                    ee(zk, ea), ee(zk, eb), ee(zk, ec)])
    return SampledModel(name=f"s1xs2:{c_lo}:{c_hi}:{n_z}x{n_long}x{n_rings}",
                        cells=cells, vertex_values=vert_vals)


def sphere_projection_model(radius: float = 1.0, n_long: int = 12,
                            n_rings: int = 4) -> SampledModel:
    """Round sphere under orthogonal projection (one fold circle)."""
    verts: list[Point] = []
    zs: list[float] = []
    verts.append((0.0, 0.0))
    zs.append(radius)  # north pole projects to centre; z-coordinate radius
    ring_of = []
    for r in range(n_rings):
        phi = math.pi * (r + 1) / (n_rings + 1)
        ring = []
        for k in range(n_long):
            th = 2.0 * math.pi * (k + 0.5) / n_long
            ring.append(len(verts))
            verts.append((radius * math.sin(phi) * math.cos(th),
                          radius * math.sin(phi) * math.sin(th)))
            zs.append(radius * math.cos(phi))
        ring_of.append(ring)
    south = len(verts)
    verts.append((0.0, 0.0))
    zs.append(-radius)

    tris = []
    first = ring_of[0]
    for k in range(n_long):
        tris.append((0, first[k], first[(k + 1) % n_long]))
    for r in range(n_rings - 1):
        lo_ring, hi_ring = ring_of[r], ring_of[r + 1]
        for k in range(n_long):
            a, b = lo_ring[k], lo_ring[(k + 1) % n_long]
            c, d = hi_ring[k], hi_ring[(k + 1) % n_long]
            tris.append((a, b, c))
            tris.append((b, d, c))
    last = ring_of[-1]
    for k in range(n_long):
        tris.append((last[k], last[(k + 1) % n_long], south))

    edge_ix: dict[tuple[int, int], int] = {}
    edges: list[tuple[int, int]] = []

    def edge_id(a, b):
        key = (a, b) if a < b else (b, a)
        if key not in edge_ix:
            edge_ix[key] = len(edges)
            edges.append(key)
        return edge_ix[key]

    tri_bnd = [(edge_id(a, b), edge_id(b, c), edge_id(a, c)) for a, b, c in tris]
    nv = len(verts)
    cells: list[tuple[int, list[int]]] = []
    for _ in range(nv):
        cells.append((0, []))
    for a, b in edges:
        cells.append((1, [a, b]))
    for ea, eb, ec in tri_bnd:
        cells.append((2, [nv + ea, nv + eb, nv + ec]))
    vert_vals = {k: verts[k] for k in range(nv)}
    return SampledModel(name="sphere-projection", cells=cells, vertex_values=vert_vals)


def klein_square_model() -> SampledModel:
    """Klein bottle as one square with identified sides (mod-2 CW data)."""
    cells = [
        (0, []),          # the single vertex
        (1, [0, 0]),      # loop a
        (1, [0, 0]),      # loop b
        (2, [1, 1, 2, 2]),  # square, boundary a a b b
    ]
    return SampledModel(name="klein-square", cells=cells, vertex_values={0: (0.0, 0.0)})
