"""Exact combinatorics of tropical refined invariants via floor diagrams."""

from .laurent import LaurentPoly, quantum_integer
from .polygon import HTransversePolygon, make_delta_abn, make_delta_d, parse_polygon
from .diagram import FloorDiagram, enumerate_floor_diagrams
from .invariant import refined_descendant, refined_invariant

__all__ = [
    "LaurentPoly",
    "quantum_integer",
    "HTransversePolygon",
    "make_delta_abn",
    "make_delta_d",
    "parse_polygon",
    "FloorDiagram",
    "enumerate_floor_diagrams",
    "refined_descendant",
    "refined_invariant",
]

__version__ = "0.1.0"
