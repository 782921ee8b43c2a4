"""Simplicial collapses, strong collapses, cores and nerves."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Union

from .alexander import alexander_dual
from .complex import (
    ComplexError,
    SimplicialComplex,
    bits,
    boundary_of_simplex,
    deletion,
    faces,
    maximal_antichain,
    popcount,
    simplex_key,
)
from .homology import HomologyGroup, GradedGroups, reduced_homology

DEFAULT_BUDGET = 200_000


class SearchBudgetExceeded(RuntimeError):
    """The search gave up before exhausting its space; no conclusion either way."""


# -- steps and certificates ------------------------------------------------------

@dataclass(frozen=True)
class ElementaryCollapse:
    tau: int
    sigma: int

    def apply(self, K: SimplicialComplex) -> SimplicialComplex:
        return elementary_collapse(K, self.tau, self.sigma)

    def describe(self, K: SimplicialComplex) -> dict:
        return {"kind": "elementary-collapse", "tau": list(K.names(self.tau)),
                "sigma": list(K.names(self.sigma))}


@dataclass(frozen=True)
class StrongCollapse:
    vertex: int
    witness: int

    def __post_init__(self):
        if self.vertex == self.witness:
            raise ValueError("a vertex cannot dominate itself")

    def apply(self, K: SimplicialComplex) -> SimplicialComplex:
        return strong_collapse_step(K, self.vertex)

    def describe(self, K: SimplicialComplex) -> dict:
        return {"kind": "strong-collapse", "vertex": K.ground[self.vertex],
                "witness": K.ground[self.witness]}


CollapseStep = Union[ElementaryCollapse, StrongCollapse]


@dataclass(frozen=True)
class CollapseCertificate:
    start: SimplicialComplex
    end: SimplicialComplex
    steps: tuple[CollapseStep, ...]

    def replay(self) -> SimplicialComplex:
        K = self.start
        for step in self.steps:
            K = step.apply(K)
        return K

    def verify(self) -> bool:
        try:
            K = self.replay()
        except ComplexError:
            return False
        return K.void == self.end.void and K.facets == self.end.facets

    def to_json(self) -> dict:
        return {"steps": [s.describe(self.start) for s in self.steps],
                "end": [list(self.start.names(f)) for f in self.end.sorted_facets()]}


# -- elementary collapses --------------------------------------------------------

def is_free_pair(K: SimplicialComplex, tau: int, sigma: int) -> bool:
    """σ is the only face of K strictly containing τ.  The empty face is allowed as τ."""
    if K.void or sigma not in K.facets:
        return False
    if tau & sigma != tau or popcount(sigma) != popcount(tau) + 1:
        return False
    return all(f == sigma for f in K.facets if f & tau == tau)


def _free_pairs(facets: frozenset[int], protected: set[int] | None = None) -> list[tuple[int, int]]:
    pairs = []
    for sigma in facets:
        if popcount(sigma) < 2:
            continue
        for x in bits(sigma):
            tau = sigma & ~(1 << x)
            if protected is not None and tau in protected:
                continue
            if all(f == sigma or f & tau != tau for f in facets):
                pairs.append((tau, sigma))
    pairs.sort(key=lambda p: (-popcount(p[1]), simplex_key(p[0]), simplex_key(p[1])))
    return pairs


def free_faces(K: SimplicialComplex) -> list[tuple[int, int]]:
    """Free pairs (τ, σ) with τ nonempty, largest cofaces first, then lexicographic."""
    if K.void:
        return []
    return _free_pairs(K.facets)


def _collapse_facets(facets: frozenset[int], tau: int, sigma: int) -> frozenset[int]:
    rest = [f for f in facets if f != sigma]
    rest.extend(sigma & ~(1 << x) for x in bits(sigma) if sigma & ~(1 << x) != tau)
    return maximal_antichain(rest)


def elementary_collapse(K: SimplicialComplex, tau: int, sigma: int) -> SimplicialComplex:
    if not is_free_pair(K, tau, sigma):
        raise ComplexError("not a free pair of the complex")
    facets = _collapse_facets(K.facets, tau, sigma)
    if not facets:
        # removing (∅, v) from a single point leaves no faces at all
        return SimplicialComplex.void_complex(K.ground)
    return SimplicialComplex(K.ground, facets)


def _as_subcomplex(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    if L.ground != K.ground:
        L = L.with_ground(K.ground)
    if L.void:
        raise ComplexError("the void complex is not a collapse target")
    if not all(f in K for f in L.facets):
        raise ComplexError("target is not a subcomplex")
    return L


def collapses_to(K: SimplicialComplex, L: SimplicialComplex,
                 budget: int = DEFAULT_BUDGET) -> CollapseCertificate | None:
    """Search for a sequence of elementary collapses K ↘ L.

    Returns None only when the search space was exhausted (K does not collapse
    to L); raises :class:`SearchBudgetExceeded` when ``budget`` states were
    expanded without reaching a conclusion.
    """
    L = _as_subcomplex(K, L)
    target_faces = faces(L)
    if (len(faces(K)) - len(target_faces)) % 2:
        return None
    if reduced_homology(K) != reduced_homology(L):
        return None
    goal = L.facets
    dead: set[frozenset[int]] = set()
    path: list[ElementaryCollapse] = []
    expanded = 0

    def search(state: frozenset[int]) -> bool:
        nonlocal expanded
        if state == goal:
            return True
        if state in dead:
            return False
        expanded += 1
        if expanded > budget:
            raise SearchBudgetExceeded(f"collapse search exceeded {budget} states")
        for tau, sigma in _free_pairs(state, target_faces):
            path.append(ElementaryCollapse(tau, sigma))
            if search(_collapse_facets(state, tau, sigma)):
                return True
            path.pop()
        dead.add(state)
        return False

    if not search(K.facets):
        return None
    return CollapseCertificate(K, L, tuple(path))


def _sphere_homology(dim: int) -> GradedGroups:
    return GradedGroups({dim: HomologyGroup(1)})


def collapses_to_some_simplex_boundary(
        K: SimplicialComplex, budget: int = DEFAULT_BUDGET) -> tuple[CollapseCertificate, int] | None:
    """Find σ (at least an edge) with ∂σ ⊆ K and K ↘ ∂σ; larger σ are tried first.

    Candidates whose boundary has different homology from K are skipped, since
    collapses preserve homology.  Raises :class:`SearchBudgetExceeded` if no
    candidate succeeded and at least one search was abandoned.
    """
    if K.void:
        raise ComplexError("the void complex has no collapses")
    face_set = faces(K)
    candidates = set()
    for tau in face_set:
        for x in bits(K.vertex_mask & ~tau):
            sigma = tau | (1 << x)
            if popcount(sigma) >= 2 and all(sigma & ~(1 << y) in face_set for y in bits(sigma)):
                candidates.add(sigma)
    homology = reduced_homology(K)
    abandoned = False
    for sigma in sorted(candidates, key=lambda s: (-popcount(s), simplex_key(s))):
        if homology != _sphere_homology(popcount(sigma) - 2):
            continue
        target = boundary_of_simplex(K.names(sigma), K.ground)
        try:
            cert = collapses_to(K, target, budget)
        except SearchBudgetExceeded:
            abandoned = True
            continue
        if cert is not None:
            return cert, sigma
    if abandoned:
        raise SearchBudgetExceeded("some boundary targets were abandoned")
    return None


# -- strong collapses ------------------------------------------------------------

def dominated_vertices(K: SimplicialComplex) -> list[tuple[int, int]]:
    """Pairs (v, w) of vertex indices such that w lies in every facet containing v."""
    out = []
    for v in bits(K.vertex_mask):
        common = K.ground_mask
        for f in K.facets:
            if f >> v & 1:
                common &= f
        out.extend((v, w) for w in bits(common & ~(1 << v)))
    return out


def dominators(K: SimplicialComplex, v: int) -> list[int]:
    return [w for u, w in dominated_vertices(K) if u == v]


def strong_collapse_step(K: SimplicialComplex, v: int | str) -> SimplicialComplex:
    if isinstance(v, str):
        v = K.index(v)
    if not dominators(K, v):
        raise ComplexError(f"vertex {K.ground[v]!r} is not dominated")
    return deletion(K, v)


def strong_collapse_sequence(
        K: SimplicialComplex,
        choose: Callable[[list[tuple[int, int]]], tuple[int, int]] | None = None,
) -> CollapseCertificate:
    """Delete dominated vertices until none is left.

    ``choose`` picks the (vertex, witness) pair to use next; by default the
    smallest vertex with its smallest witness.
    """
    steps = []
    current = K
    while True:
        pairs = dominated_vertices(current)
        if not pairs:
            break
        v, w = choose(pairs) if choose else pairs[0]
        steps.append(StrongCollapse(v, w))
        current = deletion(current, v)
    return CollapseCertificate(K, current, tuple(steps))


def core(K: SimplicialComplex) -> SimplicialComplex:
    if K.void:
        raise ComplexError("the void complex has no core")
    return strong_collapse_sequence(K).end


def strong_collapses_onto(K: SimplicialComplex, keep: int) -> CollapseCertificate | None:
    """Delete dominated vertices outside ``keep`` until only ``keep`` is left.

    Returns None if some vertex outside ``keep`` is never dominated.
    """
    steps = []
    current = K
    while current.vertex_mask & ~keep:
        pairs = [(v, w) for v, w in dominated_vertices(current) if not keep >> v & 1]
        if not pairs:
            return None
        v, w = pairs[0]
        steps.append(StrongCollapse(v, w))
        current = deletion(current, v)
    return CollapseCertificate(K, current, tuple(steps))


# -- nerves ----------------------------------------------------------------------

@dataclass(frozen=True)
class NerveComplex:
    """N(K): vertex ``i`` of ``complex`` stands for the source facet ``source_facets[i]``."""

    complex: SimplicialComplex
    source: SimplicialComplex
    source_facets: tuple[int, ...]

    def label_of(self, facet: int) -> str:
        return self.complex.ground[self.source_facets.index(facet)]

    def legend(self) -> dict[str, list[str]]:
        return {label: list(self.source.names(f))
                for label, f in zip(self.complex.ground, self.source_facets)}


def nerve(K: SimplicialComplex) -> NerveComplex:
    """Facets of N(K) are the maximal sets F_v of facets containing a common vertex v."""
    if K.void:
        raise ComplexError("the void complex has no nerve")
    source_facets = tuple(K.sorted_facets())
    labels = tuple(f"F{i}" for i in range(len(source_facets)))
    stars = []
    for v in bits(K.vertex_mask):
        stars.append(sum(1 << i for i, f in enumerate(source_facets) if f >> v & 1))
    return NerveComplex(SimplicialComplex.from_masks(labels, stars), K, source_facets)


def square_nerve(K: SimplicialComplex) -> NerveComplex:
    return nerve(nerve(K).complex)


@dataclass(frozen=True)
class NerveMapImage:
    nerve_k: NerveComplex
    nerve_l: NerveComplex
    mapping: dict[str, str]
    image: SimplicialComplex

    @property
    def image_vertices(self) -> int:
        return self.nerve_k.complex.mask(set(self.mapping.values()))


def nerve_map_image(K: SimplicialComplex, v: int | str) -> NerveMapImage:
    """The simplicial map N(K∖v) -> N(K) sending a facet σ of K∖v to σ, or to σ ∪ {v}
    when σ is not a facet of K, together with its image inside N(K)."""
    if isinstance(v, str):
        v = K.index(v)
    if not dominators(K, v):
        raise ComplexError(f"vertex {K.ground[v]!r} is not dominated")
    L = deletion(K, v)
    nk, nl = nerve(K), nerve(L)
    mapping = {}
    for label, sigma in zip(nl.complex.ground, nl.source_facets):
        target = sigma if sigma in K.facets else sigma | (1 << v)
        if target not in K.facets:
            raise ComplexError("facet of the deletion does not extend to a facet")
        mapping[label] = nk.label_of(target)
    image_faces = []
    for f in nl.complex.facets:
        image_faces.append(nk.complex.mask(mapping[nl.complex.ground[i]] for i in bits(f)))
    image = SimplicialComplex.from_masks(nk.complex.ground, image_faces)
    return NerveMapImage(nk, nl, mapping, image)


# -- the sphere pipeline ---------------------------------------------------------

@dataclass(frozen=True)
class DualSphereCertificate:
    nerve_core: SimplicialComplex
    boundary_dim: int
    dual: SimplicialComplex
    dual_homology: GradedGroups
    sphere_dim: int | None

    @property
    def consistent(self) -> bool:
        return self.sphere_dim is not None

    def to_json(self) -> dict:
        return {
            "nerve_core": [list(self.nerve_core.names(f)) for f in self.nerve_core.sorted_facets()],
            "boundary_of_simplex_dim": self.boundary_dim,
            "dual_facets": [] if self.dual.void else
            [list(self.dual.names(f)) for f in self.dual.sorted_facets()],
            "dual_homology": self.dual_homology.to_json(),
            "sphere_dim": self.sphere_dim,
        }


def is_simplex_boundary(K: SimplicialComplex) -> bool:
    """True iff K is ∂σ for σ its vertex set, with at least two vertices."""
    if K.void:
        return False
    verts = K.vertex_mask
    k = popcount(verts)
    if k < 2:
        return False
    return K.facets == frozenset(verts & ~(1 << x) for x in bits(verts))


def homology_sphere_dim(homology: GradedGroups) -> int | None:
    items = homology.nontrivial()
    if len(items) == 1:
        (d, g), = items.items()
        if g == HomologyGroup(1):
            return d
    return None


def dual_sphere_certificate(K: SimplicialComplex,
                            ground: Sequence[str] | None = None) -> DualSphereCertificate | None:
    """If core(N(K)) is the boundary of a simplex, K* has the homotopy type of a sphere.

    Returns None when the core is something else (inconclusive).  A returned
    certificate carries the homology of K*; ``sphere_dim`` is None if that
    homology is not a single Z, which would contradict the implication.
    """
    if K.void:
        raise ComplexError("the void complex has no nerve")
    if ground is not None:
        K = K.with_ground(ground)
    c = core(nerve(K).complex)
    if not is_simplex_boundary(c):
        return None
    dual = alexander_dual(K)
    homology = reduced_homology(dual)
    return DualSphereCertificate(c, popcount(c.vertex_mask) - 1, dual, homology,
                                 homology_sphere_dim(homology))


def boundary_pattern(tau_size: int, extra: int) -> tuple[SimplicialComplex, list[str]]:
    """∂τ with |τ| = tau_size inside a ground set with ``extra`` further vertices."""
    tau = [f"t{i}" for i in range(tau_size)]
    ground = tau + [f"v{i}" for i in range(extra)]
    return boundary_of_simplex(tau, ground), ground


__all__ = [
    "CollapseCertificate", "CollapseStep", "DualSphereCertificate", "ElementaryCollapse",
    "NerveComplex", "NerveMapImage", "SearchBudgetExceeded", "StrongCollapse",
    "boundary_pattern", "collapses_to", "collapses_to_some_simplex_boundary", "core",
    "dominated_vertices", "dual_sphere_certificate", "elementary_collapse", "free_faces",
    "is_free_pair", "is_simplex_boundary", "nerve", "nerve_map_image", "square_nerve",
    "strong_collapse_sequence", "strong_collapse_step", "strong_collapses_onto",
]
