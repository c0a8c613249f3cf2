"""Bi-filtration stratifications and persistence paths for singular-value diagrams."""

from .core import (
    Cusp,
    FoldArc,
    Frame,
    PoincarePolynomial,
    SingularValueDiagram,
    TransverseIndex,
    canonical_index,
    diagram_from_json,
    diagram_to_json,
    poly_apply_delta,
    validate_diagram,
)
from .criticality import ParetoArc, compute_critical_set, monotone_split, tail_rays
from .arrangement import Arrangement, build_arrangement
from .labeling import RegionLabeling, infer_effects, propagate_labels
from .paths import CrossingEvent, PersistencePath, make_path, pbn_along_path, rep_family
from .barcodes import Barcode, barcodes_equivalent, compute_barcode, equivalence_classes
from .morse import MorseReport, handle_counts, inequalities, morse_conley
from .oracle import SampledModel, betti, pbn_oracle, region_polynomials, sublevel_complex
from . import examples

__all__ = [
    "Arrangement", "Barcode", "CrossingEvent", "Cusp", "FoldArc", "Frame",
    "MorseReport", "ParetoArc", "PersistencePath", "PoincarePolynomial",
    "RegionLabeling", "SampledModel", "SingularValueDiagram", "TransverseIndex",
    "barcodes_equivalent", "betti", "build_arrangement", "canonical_index",
    "compute_barcode", "compute_critical_set", "diagram_from_json",
    "diagram_to_json", "equivalence_classes", "examples", "handle_counts",
    "inequalities", "infer_effects", "make_path", "monotone_split",
    "morse_conley", "pbn_along_path", "pbn_oracle", "poly_apply_delta",
    "propagate_labels", "region_polynomials", "rep_family", "sublevel_complex",
    "tail_rays", "validate_diagram",
]
