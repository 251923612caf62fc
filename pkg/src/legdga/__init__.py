"""Legendrian knot DGAs over Z[t, t^-1] from exact xy-projection diagrams."""

from .algebra import (
    DgaPresentation,
    Element,
    GradedSignature,
    LaurentPoly,
    abelianize,
    stabilize,
)
from .dga import KnotDga, build_dga, check_dga, deserialize, serialize, unit_boundary_witness
from .diagram import (
    DiagramError,
    KnotDiagram,
    PlaneCurve,
    load_curve,
    parse_curve,
    perturb_curve,
    reverse_orientation,
)
from .equivalence import load_certificate, verify_certificate

__version__ = "0.1.0"

__all__ = [
    "DgaPresentation",
    "DiagramError",
    "Element",
    "GradedSignature",
    "KnotDga",
    "KnotDiagram",
    "LaurentPoly",
    "PlaneCurve",
    "abelianize",
    "build_dga",
    "check_dga",
    "deserialize",
    "load_certificate",
    "load_curve",
    "parse_curve",
    "perturb_curve",
    "reverse_orientation",
    "serialize",
    "stabilize",
    "unit_boundary_witness",
    "verify_certificate",
]
