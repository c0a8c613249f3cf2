from __future__ import annotations

import pytest

import paretopaths as pp


class Fixture:
    def __init__(self, diagram):
        self.diagram = diagram
        self.pareto = pp.compute_critical_set(diagram)
        self.arr = pp.build_arrangement(self.pareto, diagram.frame, diagram.tolerance())
        self.labeling = pp.propagate_labels(self.arr, diagram)
        self._rep = None

    @property
    def rep(self):
        if self._rep is None:
            self._rep = pp.rep_family(self.arr, self.diagram)
        return self._rep


@pytest.fixture(scope="session")
def cupped():
    return Fixture(pp.examples.gen_cupped_sphere())


@pytest.fixture(scope="session")
def calibration():
    return Fixture(pp.examples.gen_rotational((1.0, 3.0), (0, 2), 2))


@pytest.fixture(scope="session")
def klein():
    return Fixture(pp.examples.gen_klein())


@pytest.fixture(scope="session")
def cyclic():
    return Fixture(pp.examples.gen_cyclic_solid_torus())


@pytest.fixture(scope="session")
def s1xs2_model():
    return pp.examples.rotational_model((1.0, 3.0), (0, 2))
