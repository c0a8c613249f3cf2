from __future__ import annotations

import random

import pytest

import paretopaths as pp
from paretopaths.arrangement import build_arrangement
from paretopaths.core import (
    IncompleteAnnotationError,
    InconsistentLabelingError,
    PoincarePolynomial,
)
from paretopaths.criticality import ParetoArc
from paretopaths.geometry import Tolerance
from paretopaths.labeling import infer_effects, propagate_labels


def _one_cut_setup(effect="create", dim=0, total=(1,)):
    frame = pp.Frame(0.0, 0.0, 10.0, 10.0)
    cut = ParetoArc(key="corner:a:0", kind="corner", cell_dim=dim,
                    source="a", polyline=((0.0, 9.0), (9.0, 0.0)))
    arr = build_arrangement([cut], frame, Tolerance(scale=frame.diagonal))
    d = pp.SingularValueDiagram(
        n=2, frame=frame, arcs=(),
        total_poly=PoincarePolynomial(total),
        effects={} if effect is None else {"corner:a:0": effect})
    return arr, d


class TestPropagation:
    def test_single_create_arc_gives_two_labels(self):
        arr, d = _one_cut_setup()
        lab = propagate_labels(arr, d)
        assert sorted(str(p) for p in lab.face_polys.values()) == ["0", "1"]

    def test_cupped_sphere_reproduces_figure_labels(self, cupped):
        labels = sorted(str(p) for p in cupped.labeling.face_polys.values())
        assert labels == ["0", "1", "1+t", "1+t^2", "2"]

    def test_klein_label_multiset_contains_figure_labels(self, klein):
        labels = {str(p) for p in klein.labeling.face_polys.values()}
        assert {"0", "1", "1+t", "2+t", "1+2t", "1+3t", "1+4t"} <= labels
        assert str(klein.labeling.poly(klein.arr.top_face())) == "1+2t+t^2"

    def test_missing_effect_lists_keys(self):
        arr, d = _one_cut_setup(effect=None)
        with pytest.raises(IncompleteAnnotationError) as exc:
            propagate_labels(arr, d)
        assert "corner:a:0" in str(exc.value)

    def test_kill_from_empty_is_inconsistent(self):
        arr, d = _one_cut_setup(effect="kill", dim=1, total=())
        with pytest.raises(InconsistentLabelingError):
            propagate_labels(arr, d)

    def test_wrong_total_is_inconsistent(self):
        arr, d = _one_cut_setup(total=(2,))
        with pytest.raises(InconsistentLabelingError):
            propagate_labels(arr, d)

    def test_conflicting_effects_are_detected(self, cupped):
        d = cupped.diagram
        effects = dict(d.effects)
        effects["corner:eye_upper:0"] = "create"  # breaks the cusp pairing
        bad = pp.SingularValueDiagram(n=d.n, frame=d.frame, arcs=d.arcs,
                                      cusps=d.cusps, total_poly=d.total_poly,
                                      effects=effects)
        with pytest.raises(InconsistentLabelingError):
            propagate_labels(cupped.arr, bad)

    def test_fishtail_vertex_composition(self, cupped):
        # crossing the two edges at the fishtail vertex composes to -t + t^2
        eff = cupped.labeling.effects
        assert eff["vtail:equator:3#0"] == "kill"
        assert eff["vtail:equator:3#1"] == "create"
        dims = {pa.key: pa.cell_dim for pa in cupped.pareto}
        k = dims["vtail:equator:3"]
        assert k == 2  # -t^(k-1) + t^k = -t + t^2


class TestPathIndependence:
    @pytest.mark.parametrize("fixture", ["cupped", "calibration", "klein", "cyclic"])
    def test_random_face_pairs_agree(self, fixture, request):
        fx = request.getfixturevalue(fixture)
        arr, lab = fx.arr, fx.labeling
        forward = {}
        for e in arr.non_frame_edges():
            if "outer" in (e.ll_face, e.ur_face):
                continue
            forward.setdefault(e.ll_face, []).append(e)
        rng = random.Random(11)
        checked = 0
        for _ in range(400):
            if checked >= 100:
                break
            start = rng.choice(arr.faces).id
            # random increasing walk, then compare composed deltas with labels
            face = start
            delta: dict[int, int] = {}
            for _step in range(rng.randrange(1, 6)):
                outs = forward.get(face, [])
                if not outs:
                    break
                e = rng.choice(outs)
                eff = lab.effects[e.effective_key]
                k = e.cell_dim if eff == "create" else e.cell_dim - 1
                delta[k] = delta.get(k, 0) + (1 if eff == "create" else -1)
                face = e.ur_face
            if face == start:
                continue
            expect = {}
            pa, pb = lab.poly(start), lab.poly(face)
            for k in range(max(len(pa.coeffs), len(pb.coeffs))):
                if pb.coeff(k) - pa.coeff(k) != 0:
                    expect[k] = pb.coeff(k) - pa.coeff(k)
            assert {k: v for k, v in delta.items() if v} == expect
            checked += 1
        assert checked >= 100


class TestInferEffects:
    def test_cupped_sphere_inference_is_unique(self, cupped):
        d = cupped.diagram
        stripped = pp.SingularValueDiagram(n=d.n, frame=d.frame, arcs=d.arcs,
                                           cusps=d.cusps, total_poly=d.total_poly,
                                           effects={})
        maps = infer_effects(cupped.arr, stripped)
        assert len(maps) == 1
        recovered = maps[0]
        relabeled = pp.SingularValueDiagram(n=d.n, frame=d.frame, arcs=d.arcs,
                                            cusps=d.cusps, total_poly=d.total_poly,
                                            effects=recovered)
        lab = propagate_labels(cupped.arr, relabeled)
        assert lab.face_polys == cupped.labeling.face_polys

    def test_single_arc_unique_create(self):
        arr, d = _one_cut_setup(effect=None)
        maps = infer_effects(arr, d)
        assert maps == [{"corner:a:0": "create"}]

    def test_contradictory_total_gives_empty(self):
        arr, d = _one_cut_setup(effect=None, total=(0, 1))
        assert infer_effects(arr, d) == []

    def test_cap_is_enforced(self, klein):
        d = klein.diagram
        stripped = pp.SingularValueDiagram(n=d.n, frame=d.frame, arcs=d.arcs,
                                           total_poly=d.total_poly, effects={})
        with pytest.raises(pp.core.InvalidInputError):
            infer_effects(klein.arr, stripped, cap=20)
