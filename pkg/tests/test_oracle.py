from __future__ import annotations

import random

import pytest

import paretopaths as pp
from paretopaths.core import InvalidInputError, OrderError, PoincarePolynomial
from paretopaths.examples import klein_square_model, sphere_projection_model
from paretopaths.oracle import SampledModel, betti, pbn_oracle, sublevel_complex


def octahedron_model():
    """Boundary of the octahedron; vertex values are the projected coordinates."""
    verts = [(1, 0), (-1, 0), (0, 1), (0, -1), (0, 0), (0, 0)]  # last two: poles
    edges = []
    tris = []
    eq = [0, 2, 1, 3]
    for k in range(4):
        edges.append((eq[k], eq[(k + 1) % 4]))
    for pole in (4, 5):
        for k in range(4):
            edges.append((eq[k], pole))
    def eid(a, b):
        key = (min(a, b), max(a, b))
        for i, e in enumerate(edges):
            if (min(e), max(e)) == key:
                return 6 + i
        raise KeyError(key)
    cells = [(0, [])] * 6
    cells = [(0, []) for _ in range(6)]
    for a, b in edges:
        cells.append((1, [a, b]))
    for pole in (4, 5):
        for k in range(4):
            a, b = eq[k], eq[(k + 1) % 4]
            cells.append((2, [eid(a, b), eid(a, pole), eid(b, pole)]))
    return SampledModel(name="octahedron",
                        cells=cells,
                        vertex_values={k: tuple(map(float, verts[k]))
                                       for k in range(6)})


class TestBetti:
    def test_octahedron_is_a_two_sphere(self):
        m = octahedron_model()
        assert betti(m, list(range(len(m.cells)))) == PoincarePolynomial((1, 0, 1))

    def test_klein_square_complex(self):
        m = klein_square_model()
        assert betti(m, list(range(len(m.cells)))) == PoincarePolynomial((1, 2, 1))

    def test_empty_complex(self):
        m = octahedron_model()
        assert betti(m, []) == PoincarePolynomial(())

    def test_product_model_total(self, s1xs2_model):
        full = betti(s1xs2_model, list(range(len(s1xs2_model.cells))))
        assert full == PoincarePolynomial((1, 1, 1, 1))


class TestSublevel:
    def test_below_everything_is_empty(self, s1xs2_model):
        assert sublevel_complex(s1xs2_model, -10.0, -10.0) == []

    def test_above_everything_is_all(self, s1xs2_model):
        subs = sublevel_complex(s1xs2_model, 10.0, 10.0)
        assert len(subs) == len(s1xs2_model.cells)

    def test_first_region_is_contractible(self, s1xs2_model):
        # bottom-most nonempty region: the calibration datum for the corner rule
        sub = sublevel_complex(s1xs2_model, -2.0, -2.0)
        assert sub
        assert betti(s1xs2_model, sub) == PoincarePolynomial((1,))

    def test_monotone_in_the_poset(self, s1xs2_model):
        rng = random.Random(4)
        for _ in range(20):
            a, b = rng.uniform(-4, 4), rng.uniform(-4, 4)
            da, db = rng.uniform(0, 2), rng.uniform(0, 2)
            small = set(sublevel_complex(s1xs2_model, a, b))
            large = set(sublevel_complex(s1xs2_model, a + da, b + db))
            assert small <= large

    def test_closed_under_boundary(self, s1xs2_model):
        sub = set(sublevel_complex(s1xs2_model, 0.5, 1.5))
        for ci in sub:
            for b in s1xs2_model.cells[ci][1]:
                assert b in sub


class TestRegionPolynomials:
    def test_sphere_projection_two_regions(self):
        model = sphere_projection_model()
        d = pp.examples.gen_rotational((1.0,), (1,), 2, curve_points=64)
        # reuse the one-circle arrangement only for its probe points
        pareto = pp.compute_critical_set(d)
        arr = pp.build_arrangement(pareto, d.frame, d.tolerance())
        regions = pp.region_polynomials(model, arr)
        values = {str(p) for p in regions.values()}
        assert "0" in values          # before the fold circle: empty
        assert "1+t^2" in values      # past everything: the whole sphere

    def test_validation_rejects_bad_boundary(self):
        with pytest.raises(InvalidInputError):
            SampledModel(name="bad", cells=[(0, []), (2, [0])], vertex_values={0: (0, 0)})


class TestRefinementStability:
    def test_region_types_stable_under_one_refinement(self, calibration):
        """Every face's probe keeps its Betti data when the mesh is refined."""
        base = pp.examples.rotational_model((1.0, 3.0), (0, 2))
        fine = pp.examples.rotational_model((1.0, 3.0), (0, 2),
                                            n_z=160, n_long=24, n_rings=4)
        coarse = pp.region_polynomials(base, calibration.arr)
        refined = pp.region_polynomials(fine, calibration.arr)
        assert coarse == refined


class TestPbnOracle:
    def test_equal_points_give_betti(self, s1xs2_model):
        for pt, q, expect in [((4.0, 4.0), 0, 1), ((4.0, 4.0), 1, 1),
                              ((0.5, 0.5), 0, 1), ((0.5, 0.5), 2, 1),
                              ((0.8, 0.8), 0, 2)]:
            assert pbn_oracle(s1xs2_model, pt, pt, q) == expect

    def test_empty_lower_set(self, s1xs2_model):
        assert pbn_oracle(s1xs2_model, (-10.0, -10.0), (4.0, 4.0), 0) == 0

    def test_rank_drops_across_a_kill(self, s1xs2_model):
        # the pocket component dies crossing the inner east ray
        assert pbn_oracle(s1xs2_model, (0.8, 0.8), (0.8, 0.8), 0) == 2
        assert pbn_oracle(s1xs2_model, (0.8, 0.8), (1.3, 0.9), 0) == 1

    def test_poset_violation(self, s1xs2_model):
        with pytest.raises(OrderError):
            pbn_oracle(s1xs2_model, (1.0, 1.0), (0.0, 2.0), 0)

    def test_monotone_as_gap_widens(self, s1xs2_model):
        base = (0.8, 0.8)
        prev = pbn_oracle(s1xs2_model, base, base, 0)
        for step in (0.3, 0.8, 1.5):
            cur = pbn_oracle(s1xs2_model, base, (0.8 + step, 0.8 + step), 0)
            assert cur <= prev
            prev = cur
