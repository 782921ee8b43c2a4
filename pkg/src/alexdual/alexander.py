"""Combinatorial Alexander dual with respect to an explicit ground set."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .complex import ComplexError, SimplicialComplex, maximal_antichain, minimal_non_faces


@dataclass(frozen=True)
class DualReport:
    ground_size: int
    dual: SimplicialComplex
    minimal_non_face_count: int


def _over_ground(K: SimplicialComplex, ground: Sequence[str] | None) -> SimplicialComplex:
    if ground is None or tuple(ground) == K.ground:
        return K
    missing = set(K.vertices) - set(ground)
    if missing:
        raise ComplexError(f"vertices {sorted(missing)} of the complex are not in the ground set")
    return K.with_ground(ground)


def dual_report(K: SimplicialComplex, ground: Sequence[str] | None = None) -> DualReport:
    K = _over_ground(K, ground)
    full = K.ground_mask
    if K.void:
        dual = SimplicialComplex.full_simplex(K.ground)
        count = 0
    else:
        mnf = minimal_non_faces(K)
        count = len(mnf)
        if not mnf:
            dual = SimplicialComplex.void_complex(K.ground)
        else:
            dual = SimplicialComplex(K.ground, maximal_antichain(full ^ m for m in mnf))
    return DualReport(len(K.ground), dual, count)


def alexander_dual(K: SimplicialComplex, ground: Sequence[str] | None = None) -> SimplicialComplex:
    """K* = {σ ⊆ V : V∖σ ∉ K}, with V = ``ground`` (defaults to K's own ground set).

    Faces range over every subset of V, so the empty face belongs to K* unless K
    is the full simplex on V (then K* is void), and V itself belongs to K* only
    when K is void.
    """
    return dual_report(K, ground).dual


def double_dual_check(K: SimplicialComplex, ground: Sequence[str] | None = None) -> bool:
    K = _over_ground(K, ground)
    twice = alexander_dual(alexander_dual(K))
    return twice.void == K.void and twice.facets == K.facets
