"""Poincare-polynomial labels on arrangement faces.

Propagates from the empty bottom face across crossing edges; the
breadth-first propagation doubles as an intrinsic path-independence
check.  Effects are data; a bounded backtracking search can infer
missing ones against a known total polynomial.
"""
from __future__ import annotations

from dataclasses import dataclass

from .arrangement import Arrangement, ArrangementEdge
from .core import (
    IncompleteAnnotationError,
    InconsistentLabelingError,
    InvalidInputError,
    PoincarePolynomial,
    SingularValueDiagram,
    ZERO_POLY,
    poly_apply_delta,
    poly_unapply_delta,
)


@dataclass(frozen=True)
class RegionLabeling:
    face_polys: dict[str, PoincarePolynomial]
    effects: dict[str, str]  # effective edge key -> "create" | "kill"

    def poly(self, face_id: str) -> PoincarePolynomial:
        return self.face_polys[face_id]


def effect_entry(effects: dict, key: str, seg_index: int):
    """Effect for one arrangement edge; per-segment entries win over per-arc."""
    raw = effects.get(f"{key}#{seg_index}", effects.get(key))
    if raw is None:
        return None, None
    if isinstance(raw, str):
        return raw, None
    if isinstance(raw, dict):
        return raw.get("effect"), raw.get("pairs_with")
    raise InvalidInputError(f"bad effect entry for {key}: {raw!r}")


def _apply(label: PoincarePolynomial, edge: ArrangementEdge, effect: str,
           increasing: bool) -> PoincarePolynomial:
    if increasing:
        return poly_apply_delta(label, edge.cell_dim, effect)
    return poly_unapply_delta(label, edge.cell_dim, effect)


def propagate_labels(arr: Arrangement, diagram: SingularValueDiagram) -> RegionLabeling:
    """Label every bounded face starting from the empty bottom face."""
    edges = arr.non_frame_edges()
    missing = sorted({
        e.key for e in edges
        if effect_entry(diagram.effects, e.key, e.seg_index)[0] is None})
    if missing:
        raise IncompleteAnnotationError(
            f"no effect for keys: {', '.join(missing)}", keys=missing)

    resolved: dict[str, str] = {}
    for e in edges:
        eff, _ = effect_entry(diagram.effects, e.key, e.seg_index)
        if eff not in ("create", "kill"):
            raise InvalidInputError(f"bad effect {eff!r} for {e.effective_key}")
        resolved[e.effective_key] = eff

    bottom = arr.bottom_face()
    labels: dict[str, PoincarePolynomial] = {bottom: ZERO_POLY}
    queue = [bottom]
    while queue:
        fid = queue.pop(0)
        for e in arr.edges_of_face(fid):
            if e.key == "frame" or "outer" in (e.ll_face, e.ur_face):
                continue
            if e.ll_face == e.ur_face:
                raise InconsistentLabelingError(
                    f"stratum edge {e.effective_key} has the same face on both sides "
                    "(dangling stratum)")
            increasing = e.ll_face == fid
            other = e.ur_face if increasing else e.ll_face
            try:
                lab = _apply(labels[fid], e, resolved[e.effective_key], increasing)
            except InconsistentLabelingError as exc:
                raise InconsistentLabelingError(
                    f"crossing {e.effective_key} out of face {fid}: {exc}") from exc
            if other in labels:
                if labels[other] != lab:
                    raise InconsistentLabelingError(
                        f"face {other} reached with conflicting labels "
                        f"{labels[other]} vs {lab} (via {e.effective_key} from {fid})")
            else:
                labels[other] = lab
                queue.append(other)

    for f in arr.faces:
        if f.id not in labels:
            raise InconsistentLabelingError(f"face {f.id} unreachable from bottom")
    if any(c < 0 for p in labels.values() for c in p.coeffs):
        raise InconsistentLabelingError("negative coefficient in a face label")
    maxdeg = max((p.degree for p in labels.values() if p.coeffs), default=0)
    if maxdeg > diagram.n:
        raise InconsistentLabelingError(
            f"label degree {maxdeg} exceeds manifold dimension {diagram.n}")
    if diagram.total_poly is not None:
        top = labels[arr.top_face()]
        if top != diagram.total_poly:
            raise InconsistentLabelingError(
                f"top face label {top} differs from total polynomial "
                f"{diagram.total_poly}")
    return RegionLabeling(face_polys=labels, effects=resolved)


def labeling_to_json(labeling: RegionLabeling) -> dict:
    return {
        "faces": {fid: list(p.coeffs) for fid, p in sorted(labeling.face_polys.items())},
        "labels": {fid: str(p) for fid, p in sorted(labeling.face_polys.items())},
        "effects": dict(sorted(labeling.effects.items())),
    }


# ---------------------------------------------------------------------------
# effect inference

def infer_effects(arr: Arrangement, diagram: SingularValueDiagram,
                  cap: int = 20) -> list[dict[str, str]]:
    """All effect assignments consistent with the labels and total polynomial.

    Unannotated edges become decision variables (per arc when the arc is a
    single arrangement edge, per segment otherwise); exhaustive
    backtracking with forced-assignment propagation, pruned by label
    non-negativity.
    """
    if diagram.total_poly is None:
        raise InvalidInputError("infer_effects requires diagram.total_poly")
    edges = [e for e in arr.non_frame_edges()]
    seg_count: dict[str, int] = {}
    for e in edges:
        seg_count[e.key] = max(seg_count.get(e.key, 0), e.seg_index + 1)

    var_of: dict[str, str] = {}  # effective key -> variable name
    fixed: dict[str, str] = {}
    for e in edges:
        eff, _ = effect_entry(diagram.effects, e.key, e.seg_index)
        if eff is not None:
            fixed[e.effective_key] = eff
        else:
            var_of[e.effective_key] = (
                e.key if seg_count[e.key] == 1 else e.effective_key)

    variables = sorted(set(var_of.values()))
    if len(variables) > cap:
        raise InvalidInputError(
            f"{len(variables)} unannotated effect variables exceed the cap of {cap}",
            keys=variables)

    bottom, top = arr.bottom_face(), arr.top_face()
    crossing_edges = [e for e in edges if "outer" not in (e.ll_face, e.ur_face)]
    results: list[dict[str, str]] = []

    def edge_effect(e: ArrangementEdge, assign: dict[str, str]):
        if e.effective_key in fixed:
            return fixed[e.effective_key]
        return assign.get(var_of[e.effective_key])

    def search(assign: dict[str, str], labels: dict[str, PoincarePolynomial]):
        labels = dict(labels)
        assign = dict(assign)
        # propagate to fixpoint, forcing variables determined by both sides
        changed = True
        while changed:
            changed = False
            for e in crossing_edges:
                if e.ll_face == e.ur_face:
                    return
                eff = edge_effect(e, assign)
                ll, ur = labels.get(e.ll_face), labels.get(e.ur_face)
                if ll is not None and ur is not None:
                    det = _determine_effect(ll, ur, e.cell_dim)
                    if det is None:
                        return  # contradiction
                    if eff is None:
                        assign[var_of[e.effective_key]] = det
                        changed = True
                    elif eff != det:
                        return
                elif eff is not None and (ll is not None or ur is not None):
                    try:
                        if ll is not None:
                            labels[e.ur_face] = poly_apply_delta(ll, e.cell_dim, eff)
                        else:
                            labels[e.ll_face] = poly_unapply_delta(ur, e.cell_dim, eff)
                    except InconsistentLabelingError:
                        return
                    changed = True
        pending = [e for e in crossing_edges if edge_effect(e, assign) is None
                   and (e.ll_face in labels or e.ur_face in labels)]
        if pending:
            e = pending[0]
            for choice in ("create", "kill"):
                nxt = dict(assign)
                nxt[var_of[e.effective_key]] = choice
                search(nxt, labels)
            return
        if len(labels) < len(arr.faces):
            return  # unreachable faces under partial annotation
        if labels.get(top) != diagram.total_poly:
            return
        result = dict(fixed)
        for ek, var in var_of.items():
            if var not in assign:
                return
        out = {}
        for var in variables:
            out[var] = assign[var]
        results.append(out)

    search({}, {bottom: ZERO_POLY})
    # deterministic order, unique entries
    uniq = []
    seen = set()
    for r in sorted(results, key=lambda r: sorted(r.items())):
        key = tuple(sorted(r.items()))
        if key not in seen:
            seen.add(key)
            uniq.append(r)
    return uniq


def _determine_effect(ll: PoincarePolynomial, ur: PoincarePolynomial,
                      dim: int) -> str | None:
    """The unique effect with ur = apply(ll, dim, effect), if any."""
    try:
        if poly_apply_delta(ll, dim, "create") == ur:
            return "create"
    except InconsistentLabelingError:
        pass
    try:
        if dim >= 1 and poly_apply_delta(ll, dim, "kill") == ur:
            return "kill"
    except InconsistentLabelingError:
        pass
    return None
