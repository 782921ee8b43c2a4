"""Combinatorial Alexander duality for simplicial complexes and reduced lattices."""

from .alexander import alexander_dual, double_dual_check
from .complex import SimplicialComplex, from_facets
from .homology import HomologyGroup, check_duality, reduced_cohomology, reduced_homology

__all__ = [
    "HomologyGroup",
    "SimplicialComplex",
    "alexander_dual",
    "check_duality",
    "double_dual_check",
    "from_facets",
    "reduced_cohomology",
    "reduced_homology",
]
