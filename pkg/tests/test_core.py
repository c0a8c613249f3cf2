from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

import paretopaths as pp
from paretopaths.core import (
    InconsistentLabelingError,
    InvalidInputError,
    PoincarePolynomial,
    canonical_index,
    diagram_from_json,
    diagram_to_json,
    poly_apply_delta,
    poly_unapply_delta,
)


class TestCanonicalIndex:
    def test_flip_to_upper_half_plane_swaps_ij(self):
        idx = canonical_index((0, -1), 2, 0)
        assert idx.v == (0.0, 1.0)
        assert (idx.i, idx.j) == (0, 2)

    def test_already_canonical(self):
        idx = canonical_index((1, 0), 1, 1)
        assert idx.v == (1.0, 0.0)
        assert (idx.i, idx.j) == (1, 1)

    def test_horizontal_tie_break(self):
        idx = canonical_index((-1, 0), 0, 2)
        assert idx.v == (1.0, 0.0)
        assert (idx.i, idx.j) == (2, 0)

    def test_zero_vector_rejected(self):
        with pytest.raises(InvalidInputError):
            canonical_index((0, 0), 1, 1)

    @given(st.floats(-10, 10), st.floats(-10, 10),
           st.integers(0, 5), st.integers(0, 5))
    def test_idempotent_and_symmetric(self, vx, vy, i, j):
        if math.hypot(vx, vy) < 1e-6:
            return
        a = canonical_index((vx, vy), i, j)
        assert canonical_index(a.v, a.i, a.j) == a
        assert canonical_index((-vx, -vy), j, i) == a


class TestPolynomials:
    def test_create_at_degree_two(self):
        p = poly_apply_delta(PoincarePolynomial((1,)), 2, "create")
        assert p.coeffs == (1, 0, 1)

    def test_kill_removes_t_term(self):
        p = poly_apply_delta(PoincarePolynomial((1, 1)), 2, "kill")
        assert p.coeffs == (1,)

    def test_kill_merging_components(self):
        # pocket component merging back, verified against the oracle fixture
        p = poly_apply_delta(PoincarePolynomial((2,)), 1, "kill")
        assert p.coeffs == (1,)

    def test_kill_on_zero_coefficient(self):
        with pytest.raises(InconsistentLabelingError):
            poly_apply_delta(PoincarePolynomial((1,)), 2, "kill")

    def test_zero_handle_cannot_kill(self):
        with pytest.raises(InconsistentLabelingError):
            poly_apply_delta(PoincarePolynomial((1,)), 0, "kill")

    @given(st.lists(st.integers(0, 4), max_size=5), st.integers(0, 5))
    def test_cancelling_pair_round_trips(self, coeffs, k):
        # a creating k-handle followed by a cancelling (k+1)-handle is a no-op
        p = PoincarePolynomial(tuple(coeffs))
        assert poly_apply_delta(poly_apply_delta(p, k, "create"), k + 1, "kill") == p

    @given(st.lists(st.integers(0, 4), max_size=5), st.integers(0, 5),
           st.sampled_from(["create", "kill"]))
    def test_unapply_inverts_apply(self, coeffs, k, effect):
        p = PoincarePolynomial(tuple(coeffs))
        try:
            q = poly_apply_delta(p, k, effect)
        except InconsistentLabelingError:
            return
        assert poly_unapply_delta(q, k, effect) == p

    def test_string_form(self):
        assert str(PoincarePolynomial((1, 2, 1))) == "1+2t+t^2"
        assert str(PoincarePolynomial(())) == "0"
        assert str(PoincarePolynomial((0, 0, 3))) == "3t^2"


class TestValidation:
    def test_rotational_diagram_is_clean(self, calibration):
        assert pp.validate_diagram(calibration.diagram) == []

    def test_axis_parallel_cusp_tangent(self, cupped):
        d = cupped.diagram
        bad_cusps = tuple(
            pp.Cusp(id=c.id, point=c.point, arcs=c.arcs, tangent=(0.0, 1.0))
            for c in d.cusps)
        bad = pp.SingularValueDiagram(n=d.n, frame=d.frame, arcs=d.arcs,
                                      cusps=bad_cusps, total_poly=d.total_poly,
                                      effects=d.effects)
        codes = {v.code for v in pp.validate_diagram(bad)}
        assert "axis-parallel-cusp-tangent" in codes

    def test_index_sum_violation(self, cupped):
        d = cupped.diagram
        arcs = list(d.arcs)
        eq = arcs[0]
        arcs[0] = pp.FoldArc(id=eq.id, points=eq.points,
                             index=pp.canonical_index(eq.index.v, 1, 1),
                             endpoint_kinds=eq.endpoint_kinds)
        bad = pp.SingularValueDiagram(n=d.n, frame=d.frame, arcs=tuple(arcs),
                                      cusps=d.cusps)
        codes = {v.code for v in pp.validate_diagram(bad)}
        assert "index-sum" in codes

    def test_coincident_tangency_heights(self):
        with pytest.raises(InvalidInputError):
            pp.examples.gen_rotational((1.0, 1.0), (0, 2), 2)

    def test_cusped_diagram_is_clean(self, cupped):
        assert pp.validate_diagram(cupped.diagram) == []


class TestJsonRoundTrip:
    def test_diagram_round_trip(self, cupped):
        doc = diagram_to_json(cupped.diagram)
        back = diagram_from_json(doc)
        assert diagram_to_json(back) == doc

    def test_field_tag_enforced(self, cupped):
        doc = diagram_to_json(cupped.diagram)
        doc["field"] = "Q"
        with pytest.raises(InvalidInputError):
            diagram_from_json(doc)
