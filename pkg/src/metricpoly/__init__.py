"""Exact computations on the metric polytope m_n and the cut polytope."""

__version__ = "0.1.0"

from .exact import RationalMatrix, nullspace_basis, rank, solve
from .polytope import (
    CutSet, FacetInequality, MetricVector, PairIndexer, all_cuts, are_adjacent,
    cut_vector, evaluate_slack, format_delta_name, generate_facets, incidence,
    is_integral, is_vertex, pair_index, parse_delta_name,
)
from .symmetry import SymmetryElement, apply_permutation, apply_switching, canonical_form, orbit
from .cone import TangentCone, adjacent_to_some_cut, neighbors, ray_shoot, tangent_cone
from .enumeration import (
    VertexGraph, VertexSet, build_graph, check_domination, check_fractional_connectivity,
    diameter, enumerate_vertices, orbit_summary,
)
from .fixtures import counterexample

__all__ = [
    "RationalMatrix", "nullspace_basis", "rank", "solve",
    "CutSet", "FacetInequality", "MetricVector", "PairIndexer", "all_cuts", "are_adjacent",
    "cut_vector", "evaluate_slack", "format_delta_name", "generate_facets", "incidence",
    "is_integral", "is_vertex", "pair_index", "parse_delta_name",
    "SymmetryElement", "apply_permutation", "apply_switching", "canonical_form", "orbit",
    "TangentCone", "adjacent_to_some_cut", "neighbors", "ray_shoot", "tangent_cone",
    "VertexGraph", "VertexSet", "build_graph", "check_domination",
    "check_fractional_connectivity", "diameter", "enumerate_vertices", "orbit_summary",
    "counterexample",
]
