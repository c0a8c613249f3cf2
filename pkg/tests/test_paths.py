from __future__ import annotations

import json
import math
import random

import pytest

import paretopaths as pp
from paretopaths.barcodes import compute_barcode
from paretopaths.core import OrderError, PoincarePolynomial
from paretopaths.paths import random_path

GREEN = json.load(open("fixtures/cupped_green_waypoints.json"))["waypoints"]
ORANGE = json.load(open("fixtures/cupped_orange_waypoints.json"))["waypoints"]


def _mk(fx, waypoints, snap=0.05):
    return pp.make_path(fx.arr, fx.diagram, [tuple(w) for w in waypoints],
                        snap_radius=snap)


class TestMakePath:
    def test_green_route_has_two_crossings(self, cupped):
        path = _mk(cupped, GREEN)
        assert [(c.cell_dim, c.effect) for c in path.crossings] == [
            (0, "create"), (2, "create")]

    def test_orange_route_has_six_crossings(self, cupped):
        path = _mk(cupped, ORANGE)
        assert [(c.cell_dim, c.effect) for c in path.crossings] == [
            (0, "create"), (0, "create"), (1, "kill"),
            (1, "create"), (2, "kill"), (2, "create")]

    def test_out_of_order_waypoints(self, cupped):
        with pytest.raises(OrderError):
            _mk(cupped, [GREEN[1], GREEN[0]])

    def test_realization_is_monotone_and_anchored(self, cupped):
        path = _mk(cupped, ORANGE)
        fr = cupped.diagram.frame
        assert path.realization[0] == (fr.x0, fr.y0)
        assert path.realization[-1] == (fr.x1, fr.y1)
        for a, b in zip(path.realization, path.realization[1:]):
            assert b[0] >= a[0] - 1e-12 and b[1] >= a[1] - 1e-12

    def test_crossing_s_strictly_increasing(self, cupped):
        path = _mk(cupped, ORANGE)
        ss = [c.s for c in path.crossings]
        assert all(a < b for a, b in zip(ss, ss[1:]))
        assert all(0.0 < s < 1.0 for s in ss)

    def test_waypoint_echo(self, cupped):
        path = _mk(cupped, GREEN)
        for given, got in zip(GREEN, path.waypoints):
            assert math.hypot(given[0] - got[0], given[1] - got[1]) < 1e-6

    def test_crossing_deltas_sum_to_total(self, cupped):
        path = _mk(cupped, ORANGE)
        acc = PoincarePolynomial(())
        for c in path.crossings:
            acc = pp.poly_apply_delta(acc, c.cell_dim, c.effect)
        assert acc == cupped.diagram.total_poly


class TestRepFamily:
    def test_contains_green_and_orange_classes(self, cupped):
        fam = cupped.rep
        assert not fam.truncated
        sigs = {tuple((c.cell_dim, c.effect) for c in p.crossings) for p in fam.paths}
        assert (((0, "create"), (2, "create"))) in sigs
        assert (((0, "create"), (0, "create"), (1, "kill"),
                 (1, "create"), (2, "kill"), (2, "create"))) in sigs

    def test_each_edge_crossed_at_most_once(self, cupped, calibration):
        for fx in (cupped, calibration):
            for p in fx.rep.paths:
                keys = [c.key for c in p.crossings]
                assert len(keys) == len(set(keys))

    def test_empty_diagram_single_trivial_path(self):
        frame = pp.Frame(0.0, 0.0, 1.0, 1.0)
        d = pp.SingularValueDiagram(n=2, frame=frame, arcs=(),
                                    total_poly=PoincarePolynomial(()))
        pareto = pp.compute_critical_set(d)
        arr = pp.build_arrangement(pareto, frame, d.tolerance())
        fam = pp.rep_family(arr, d)
        assert len(fam.paths) == 1
        assert fam.paths[0].crossings == ()

    def test_one_circle_key_sequences(self):
        d = pp.examples.gen_rotational((1.0,), (1,), 2, curve_points=64)
        pareto = pp.compute_critical_set(d)
        arr = pp.build_arrangement(pareto, d.frame, d.tolerance())
        fam = pp.rep_family(arr, d)
        lower = {"corner:circle0:0#0", "vtail:circle0:1#0", "htail:circle0:2#0"}
        seqs = {p.key_sequence() for p in fam.paths}
        for seq in seqs:
            assert seq[0] in lower
            assert 2 <= len(seq) <= 4
        # both direct exits and both pocket routes appear; of the 3 x 4
        # entry/route combinations, two are blocked by the sibling ray
        assert any(len(s) == 2 for s in seqs)
        assert any(len(s) == 4 for s in seqs)
        assert len({tuple(k.split("#")[0] for k in s) for s in seqs}) == 10

    def test_rep_is_stable_under_curve_refinement(self):
        seqs = []
        for n in (64, 128):
            d = pp.examples.gen_rotational((1.0, 3.0), (0, 2), 2, curve_points=n)
            pareto = pp.compute_critical_set(d)
            arr = pp.build_arrangement(pareto, d.frame, d.tolerance())
            fam = pp.rep_family(arr, d)
            seqs.append(sorted(p.key_sequence() for p in fam.paths))
        assert seqs[0] == seqs[1]


class TestRandomPaths:
    def test_random_paths_are_valid(self, cupped):
        rng = random.Random(5)
        for _ in range(10):
            p = random_path(cupped.arr, cupped.diagram, rng)
            for a, b in zip(p.realization, p.realization[1:]):
                assert b[0] >= a[0] - 1e-12 and b[1] >= a[1] - 1e-12
            acc = PoincarePolynomial(())
            for c in p.crossings:
                acc = pp.poly_apply_delta(acc, c.cell_dim, c.effect)
            assert acc == cupped.diagram.total_poly


class TestPbnAlongPath:
    def test_green_beta0_after_first_crossing(self, cupped):
        path = _mk(cupped, GREEN)
        bc = compute_barcode(path)
        s1 = path.crossings[0].s + 0.01
        assert pp.pbn_along_path(path, bc, s1, 0.99, 0) == 1

    def test_orange_pocket_interval_has_two_components(self, cupped):
        path = _mk(cupped, ORANGE)
        bc = compute_barcode(path)
        s_in = (path.crossings[1].s + path.crossings[2].s) / 2.0
        assert pp.pbn_along_path(path, bc, s_in, s_in, 0) == 2

    def test_dimension_above_manifold_is_zero(self, cupped):
        path = _mk(cupped, GREEN)
        bc = compute_barcode(path)
        assert pp.pbn_along_path(path, bc, 0.5, 0.6, 7) == 0

    def test_interval_straddling_kill_drops_rank(self, cupped):
        path = _mk(cupped, ORANGE)
        bc = compute_barcode(path)
        kill_s = path.crossings[2].s  # the pocket merge
        before, after = kill_s - 0.01, kill_s + 0.01
        assert pp.pbn_along_path(path, bc, before, before, 0) == 2
        assert pp.pbn_along_path(path, bc, before, after, 0) == 1

    def test_order_validation(self, cupped):
        path = _mk(cupped, GREEN)
        bc = compute_barcode(path)
        with pytest.raises(OrderError):
            pp.pbn_along_path(path, bc, 0.9, 0.1, 0)
