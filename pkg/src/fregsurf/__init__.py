"""Exact computations around F-regularity of surface singularities, F-splitting
of pairs on the projective line, the Cartier operator and C-differentials."""

from .graph_core import DualGraph, Edge, Vertex, classify_shape, discrepancies, intersection_matrix
from .graph_io import ParseError, parse_graph_file, serialize
from .singularity_classify import Outcome, sfr_verdict, tame_decomposition_plan

__version__ = "0.1.0"

__all__ = [
    "DualGraph",
    "Edge",
    "Vertex",
    "classify_shape",
    "discrepancies",
    "intersection_matrix",
    "ParseError",
    "parse_graph_file",
    "serialize",
    "Outcome",
    "sfr_verdict",
    "tame_decomposition_plan",
]
