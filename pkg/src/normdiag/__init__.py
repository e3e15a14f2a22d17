"""Exact tools for diagonals of normal operators with finite spectrum."""

from .gaussian import GaussianRational, gq, parse_rational
from .geometry import ConvexityError, GeometryError, OutsidePolygonError, VertexSet, distance_to_X
from .obstruction import (
    KxLattice,
    MissingVertexError,
    Verdict,
    build_lattice,
    kx_membership,
    obstruction_verdict,
    reduce,
    renormalized_sum,
)
from .sequences import TailedSequence, all_vertex_sequence, nearest_assignment
from .xdecomp import barycentric, decompose, simplex_constant, verify_weight_summability

__all__ = [
    "GaussianRational",
    "gq",
    "parse_rational",
    "ConvexityError",
    "GeometryError",
    "OutsidePolygonError",
    "VertexSet",
    "distance_to_X",
    "KxLattice",
    "MissingVertexError",
    "Verdict",
    "build_lattice",
    "kx_membership",
    "obstruction_verdict",
    "reduce",
    "renormalized_sum",
    "TailedSequence",
    "all_vertex_sequence",
    "nearest_assignment",
    "barycentric",
    "decompose",
    "simplex_constant",
    "verify_weight_summability",
]
