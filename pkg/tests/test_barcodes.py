from __future__ import annotations

import json
import random

import pytest

import paretopaths as pp
from paretopaths.barcodes import Bar, compute_barcode, _symbol_sequence
from paretopaths.core import InconsistentLabelingError, PoincarePolynomial
from paretopaths.paths import CrossingEvent, PersistencePath

GREEN = json.load(open("fixtures/cupped_green_waypoints.json"))["waypoints"]
ORANGE = json.load(open("fixtures/cupped_orange_waypoints.json"))["waypoints"]


def _synthetic_path(events):
    """Path stub from (s, dim, effect[, pairs_with]) tuples."""
    crossings = []
    for ev in events:
        s, dim, effect = ev[:3]
        pw = ev[3] if len(ev) > 3 else None
        crossings.append(CrossingEvent(s=s, key=f"k{len(crossings)}",
                                       pareto_key=f"k{len(crossings)}", seg_index=0,
                                       cell_dim=dim, effect=effect, pairs_with=pw))
    return PersistencePath(waypoints=(), realization=((0.0, 0.0), (1.0, 1.0)),
                           crossings=tuple(crossings))


class TestComputeBarcode:
    def test_green_bars(self, cupped):
        path = pp.make_path(cupped.arr, cupped.diagram, [tuple(w) for w in GREEN],
                            snap_radius=0.05)
        bc = compute_barcode(path)
        assert [(b.dim, b.death) for b in bc.bars] == [(0, None), (2, None)]

    def test_orange_bars(self, cupped):
        path = pp.make_path(cupped.arr, cupped.diagram, [tuple(w) for w in ORANGE],
                            snap_radius=0.05)
        bc = compute_barcode(path)
        b0 = bc.bars_in_dim(0)
        assert len(b0) == 2
        assert b0[0].death is None  # the elder component survives
        assert b0[1].death is not None and b0[1].lifetime < 0.15
        b1 = bc.bars_in_dim(1)
        assert len(b1) == 1 and b1[0].lifetime < 0.15
        assert [b.death for b in bc.bars_in_dim(2)] == [None]

    def test_single_create_bar(self):
        bc = compute_barcode(_synthetic_path([(0.5, 0, "create")]))
        assert bc.bars == (Bar(0, 0.5, None, "k0", None),)

    def test_lifo_pairing(self):
        bc = compute_barcode(_synthetic_path(
            [(0.1, 0, "create"), (0.2, 0, "create"), (0.3, 1, "kill")]))
        b0 = bc.bars_in_dim(0)
        assert b0[0].death is None
        assert b0[1].death == 0.3  # youngest dies

    def test_pairs_with_overrides_lifo(self):
        bc = compute_barcode(_synthetic_path(
            [(0.1, 0, "create"), (0.2, 0, "create"), (0.3, 1, "kill", "k0")]))
        b0 = bc.bars_in_dim(0)
        assert b0[0].death == 0.3  # the named elder dies instead
        assert b0[1].death is None

    def test_kill_without_open_bar(self):
        with pytest.raises(InconsistentLabelingError):
            compute_barcode(_synthetic_path([(0.5, 1, "kill")]))

    def test_finite_lifetimes_positive(self, cupped, calibration, klein):
        for fx in (cupped, calibration, klein):
            for path in fx.rep.paths:
                for bar in compute_barcode(path).bars:
                    if bar.death is not None:
                        assert bar.death > bar.birth

    def test_infinite_bars_match_total(self, cupped, calibration, cyclic):
        for fx in (cupped, calibration, cyclic):
            total = fx.diagram.total_poly
            for path in fx.rep.paths:
                counts = compute_barcode(path).infinite_counts()
                for q in range(total.degree + 1):
                    assert counts.get(q, 0) == total.coeff(q)

    def test_open_bars_track_running_polynomial(self, cupped):
        for path in cupped.rep.paths:
            bc = compute_barcode(path)
            running = PoincarePolynomial(())
            for c in path.crossings:
                running = pp.poly_apply_delta(running, c.cell_dim, c.effect)
                s_mid = c.s + 1e-9
                for q in range(4):
                    open_q = sum(
                        1 for b in bc.bars_in_dim(q)
                        if b.birth <= s_mid and (b.death is None or b.death > s_mid))
                    assert open_q == running.coeff(q)


class TestEquivalence:
    def test_green_vs_orange_not_equivalent(self, cupped):
        g = compute_barcode(pp.make_path(cupped.arr, cupped.diagram,
                                         [tuple(w) for w in GREEN], snap_radius=0.05))
        o = compute_barcode(pp.make_path(cupped.arr, cupped.diagram,
                                         [tuple(w) for w in ORANGE], snap_radius=0.05))
        assert not pp.barcodes_equivalent(g, o)
        assert pp.barcodes_equivalent(g, g)

    def test_same_strata_different_realization(self, cupped):
        # metrically different routes through the same strata agree
        wp = [tuple(w) for w in ORANGE]
        p1 = pp.make_path(cupped.arr, cupped.diagram, wp, snap_radius=0.05)
        detour = list(wp)
        detour[0] = (-0.8, -0.6)  # same lower-left quarter, different point
        detour[5] = (1.4, 1.0)    # same north-ray segment, different point
        p2 = pp.make_path(cupped.arr, cupped.diagram, detour, snap_radius=0.05)
        assert p1.realization != p2.realization
        assert pp.barcodes_equivalent(compute_barcode(p1), compute_barcode(p2))

    def test_equivalence_is_an_equivalence_relation(self):
        rng = random.Random(3)
        corpus = []
        for _ in range(24):
            events = []
            s = 0.0
            opened = []
            for _k in range(rng.randrange(1, 7)):
                s += rng.uniform(0.01, 0.2)
                dim = rng.randrange(0, 3)
                if opened and rng.random() < 0.4:
                    dim = rng.choice(opened)
                    events.append((min(s, 0.99), dim + 1, "kill"))
                    opened.remove(dim)
                else:
                    events.append((min(s, 0.99), dim, "create"))
                    opened.append(dim)
            corpus.append(compute_barcode(_synthetic_path(events)))
        for a in corpus:
            assert pp.barcodes_equivalent(a, a)
        for a in corpus:
            for b in corpus:
                assert pp.barcodes_equivalent(a, b) == pp.barcodes_equivalent(b, a)
        for a in corpus:
            for b in corpus:
                for c in corpus:
                    if pp.barcodes_equivalent(a, b) and pp.barcodes_equivalent(b, c):
                        assert pp.barcodes_equivalent(a, c)

    def test_classes_partition_family(self, cupped):
        classes = pp.equivalence_classes(cupped.rep)
        assert sum(len(c) for c in classes) == len(cupped.rep.paths)
        assert len(classes) >= 2
        for members in classes:
            first = _symbol_sequence(compute_barcode(members[0]))
            for p in members[1:]:
                assert _symbol_sequence(compute_barcode(p)) == first

    def test_family_of_one(self, cupped):
        one = [cupped.rep.paths[0]]
        assert [len(c) for c in pp.equivalence_classes(one)] == [1]
