"""Square-free initial ideals of 2-minors and their path complexes."""

from .complexes import SimplicialComplex, delta, path_facets
from .homology import BettiTable, FieldSpec, hochster_betti_table
from .orders import MatrixShape, MonomialOrder

__all__ = [
    "BettiTable",
    "FieldSpec",
    "MatrixShape",
    "MonomialOrder",
    "SimplicialComplex",
    "delta",
    "hochster_betti_table",
    "path_facets",
]
