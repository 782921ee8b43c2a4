"""Finite simplicial complexes stored as facet antichains over a named ground set.

A simplex is an ``int`` bitmask over the ground set: bit ``i`` set means the
vertex ``ground[i]`` belongs to the simplex.  The empty simplex is ``0``.

Two degenerate values are kept apart on purpose:

* the *empty complex* has the single facet ``0`` (only the empty face), and
* the *void complex* has no faces at all, not even the empty one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_GROUND = 64
ISOMORPHISM_VERTEX_CAP = 14

NAME_RE = re.compile(r"^[A-Za-z0-9_]+$")

Simplex = int


class ComplexError(ValueError):
    """Raised for malformed complexes or vertices outside the ground set."""


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including ``mask`` itself and ``0``."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def simplex_key(mask: int) -> tuple[int, ...]:
    """Sort key giving the lexicographic order on sorted vertex-index tuples."""
    return tuple(bits(mask))


def maximal_antichain(masks: Iterable[int]) -> frozenset[int]:
    """Keep only the inclusion-maximal members of ``masks``."""
    kept: list[int] = []
    for m in sorted(set(masks), key=popcount, reverse=True):
        if not any(m & k == m for k in kept):
            kept.append(m)
    return frozenset(kept)


@dataclass(frozen=True)
class SimplicialComplex:
    ground: tuple[str, ...]
    facets: frozenset[int]
    void: bool = False

    def __post_init__(self):
        if len(set(self.ground)) != len(self.ground):
            raise ComplexError("duplicate vertex name in ground set")
        if self.void and self.facets:
            raise ComplexError("the void complex has no facets")
        if not self.void and not self.facets:
            raise ComplexError("a non-void complex needs at least the empty facet")
        full = self.ground_mask
        for f in self.facets:
            if f & ~full:
                raise ComplexError("facet outside the ground set")
        facets = list(self.facets)
        for i, f in enumerate(facets):
            for g in facets[i + 1:]:
                if f & g in (f, g):
                    raise ComplexError("facets must form an antichain")

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_masks(cls, ground: Sequence[str], masks: Iterable[int]) -> "SimplicialComplex":
        """Build from arbitrary faces (closure is implicit); no masks means the empty complex."""
        facets = maximal_antichain(masks)
        return cls(tuple(ground), facets or frozenset([0]))

    @classmethod
    def void_complex(cls, ground: Sequence[str]) -> "SimplicialComplex":
        return cls(tuple(ground), frozenset(), void=True)

    @classmethod
    def empty_complex(cls, ground: Sequence[str]) -> "SimplicialComplex":
        return cls(tuple(ground), frozenset([0]))

    @classmethod
    def full_simplex(cls, ground: Sequence[str]) -> "SimplicialComplex":
        ground = tuple(ground)
        return cls(ground, frozenset([(1 << len(ground)) - 1]))

    # -- basic queries ----------------------------------------------------

    @property
    def ground_mask(self) -> int:
        return (1 << len(self.ground)) - 1

    @property
    def vertex_mask(self) -> int:
        """Bitmask of K^0, the vertices lying in some facet."""
        out = 0
        for f in self.facets:
            out |= f
        return out

    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(self.ground[i] for i in bits(self.vertex_mask))

    @property
    def is_empty(self) -> bool:
        return not self.void and self.facets == frozenset([0])

    @property
    def dim(self) -> int:
        """Dimension; -1 for the empty complex and (by convention) -2 for void."""
        if self.void:
            return -2
        return max(popcount(f) for f in self.facets) - 1

    def index(self, name: str) -> int:
        try:
            return self.ground.index(name)
        except ValueError:
            raise ComplexError(f"vertex {name!r} is not in the ground set") from None

    def mask(self, names: Iterable[str]) -> int:
        out = 0
        for name in names:
            out |= 1 << self.index(name)
        return out

    def names(self, mask: int) -> tuple[str, ...]:
        return tuple(self.ground[i] for i in bits(mask))

    def __contains__(self, sigma: int) -> bool:
        if self.void:
            return False
        return any(sigma & f == sigma for f in self.facets)

    def sorted_facets(self) -> list[int]:
        return sorted(self.facets, key=simplex_key)

    def facet_names(self) -> frozenset[frozenset[str]]:
        """Facets as sets of names; compares complexes independently of ground order."""
        return frozenset(frozenset(self.names(f)) for f in self.facets)

    def same_faces(self, other: "SimplicialComplex") -> bool:
        return self.void == other.void and self.facet_names() == other.facet_names()

    def with_ground(self, ground: Sequence[str]) -> "SimplicialComplex":
        """Re-express over another ground set containing K^0."""
        ground = tuple(ground)
        index = {name: i for i, name in enumerate(ground)}
        missing = set(self.vertices) - set(ground)
        if missing:
            raise ComplexError(f"vertices {sorted(missing)} are not in the new ground set")
        if self.void:
            return SimplicialComplex.void_complex(ground)
        facets = []
        for f in self.facets:
            m = 0
            for name in self.names(f):
                m |= 1 << index[name]
            facets.append(m)
        return SimplicialComplex(ground, frozenset(facets))

    def __str__(self) -> str:
        if self.void:
            return "void"
        if self.is_empty:
            return "{∅}"
        return " ".join("".join(self.names(f)) if all(len(n) == 1 for n in self.ground)
                        else "{" + ",".join(self.names(f)) + "}"
                        for f in self.sorted_facets())


def from_facets(facet_list: Iterable[Sequence[str]], ground: Sequence[str] | None = None,
                void: bool = False) -> SimplicialComplex:
    """Build a complex from facet name lists.

    ``ground`` defaults to the listed vertices in order of first appearance.
    An empty ``facet_list`` gives the empty complex unless ``void`` is set.
    """
    facet_list = [list(f) for f in facet_list]
    for f in facet_list:
        if len(set(f)) != len(f):
            raise ComplexError(f"duplicate vertex inside facet {f}")
    if ground is None:
        seen: dict[str, None] = {}
        for f in facet_list:
            for v in f:
                seen.setdefault(v, None)
        ground = list(seen)
    ground = tuple(ground)
    if len(ground) > MAX_GROUND:
        raise ComplexError(f"ground set has {len(ground)} vertices; at most {MAX_GROUND} supported")
    if void:
        if facet_list:
            raise ComplexError("the void complex has no facets")
        return SimplicialComplex.void_complex(ground)
    index = {name: i for i, name in enumerate(ground)}
    masks = []
    for f in facet_list:
        m = 0
        for v in f:
            if v not in index:
                raise ComplexError(f"vertex {v!r} is not in the declared ground set")
            m |= 1 << index[v]
        masks.append(m)
    return SimplicialComplex.from_masks(ground, masks)


def faces(K: SimplicialComplex) -> set[int]:
    """All faces, including the empty face for non-void complexes."""
    out: set[int] = set()
    for f in K.facets:
        out.update(submasks(f))
    return out


def faces_by_dim(K: SimplicialComplex) -> dict[int, list[int]]:
    """Faces grouped by dimension (-1 for the empty face), each list sorted."""
    groups: dict[int, list[int]] = {}
    for s in faces(K):
        groups.setdefault(popcount(s) - 1, []).append(s)
    for d in groups:
        groups[d].sort(key=simplex_key)
    return groups


def minimal_non_faces(K: SimplicialComplex) -> set[int]:
    # Every minimal non-face is a face plus one vertex, so candidates never
    # exceed dim(K) + 2 elements.
    if K.void:
        raise ComplexError("minimal non-faces of the void complex are not defined")
    face_set = faces(K)
    n = len(K.ground)
    out: set[int] = set()
    for tau in face_set:
        for x in range(n):
            bit = 1 << x
            if tau & bit:
                continue
            sigma = tau | bit
            if sigma in face_set or sigma in out:
                continue
            if all((sigma & ~(1 << y)) in face_set for y in bits(sigma)):
                out.add(sigma)
    return out


def _restrict(K: SimplicialComplex, facet_masks: Iterable[int], keep: int) -> SimplicialComplex:
    """Complex generated by ``facet_masks`` re-indexed onto the vertices in ``keep``."""
    new_ground = [K.ground[i] for i in bits(keep)]
    position = {old: new for new, old in enumerate(bits(keep))}
    masks = []
    for f in facet_masks:
        m = 0
        for i in bits(f):
            m |= 1 << position[i]
        masks.append(m)
    return SimplicialComplex.from_masks(new_ground, masks)


def _vertex_bit(K: SimplicialComplex, v: str | int) -> int:
    i = K.index(v) if isinstance(v, str) else v
    bit = 1 << i
    if K.void or not K.vertex_mask & bit:
        raise ComplexError(f"{K.ground[i]!r} is not a vertex of the complex")
    return bit


def link(K: SimplicialComplex, v: str | int) -> SimplicialComplex:
    """lk(v, K) over the ground K^0 minus v."""
    bit = _vertex_bit(K, v)
    return _restrict(K, [f & ~bit for f in K.facets if f & bit], K.vertex_mask & ~bit)


def deletion(K: SimplicialComplex, v: str | int) -> SimplicialComplex:
    """Full subcomplex spanned by the vertices other than ``v``; the ground set is kept."""
    bit = _vertex_bit(K, v)
    return SimplicialComplex.from_masks(K.ground, [f & ~bit for f in K.facets])


def is_cone(K: SimplicialComplex) -> str | None:
    """Smallest-index apex lying in every facet, or None."""
    if K.void:
        return None
    common = K.ground_mask
    for f in K.facets:
        common &= f
    if not common:
        return None
    return K.ground[next(bits(common))]


def boundary_of_simplex(vertices: Sequence[str], ground: Sequence[str]) -> SimplicialComplex:
    if not vertices:
        raise ComplexError("the boundary needs a simplex with at least one vertex")
    ground = tuple(ground)
    missing = set(vertices) - set(ground)
    if missing:
        raise ComplexError(f"vertices {sorted(missing)} are not in the ground set")
    if len(vertices) == 1:
        return SimplicialComplex.empty_complex(ground)
    return from_facets(combinations(vertices, len(vertices) - 1), ground)


def contains_skeleton(K: SimplicialComplex, d: int) -> bool:
    """True iff every subset of the ground set with at most d+1 elements is a face."""
    if d < 0:
        raise ValueError("d must be non-negative")
    if K.void:
        return False
    n = len(K.ground)
    size = min(d + 1, n)
    # closure means it suffices to check the largest subsets
    return all(sum(1 << i for i in c) in K for c in combinations(range(n), size))


def _vertex_signature(K: SimplicialComplex, i: int) -> tuple[int, ...]:
    return tuple(sorted(popcount(f) for f in K.facets if f >> i & 1))


def is_isomorphic(K: SimplicialComplex, L: SimplicialComplex) -> dict[str, str] | None:
    """Find a bijection K^0 -> L^0 carrying facets onto facets, or None."""
    if K.void or L.void:
        return {} if K.void and L.void else None
    kv = list(bits(K.vertex_mask))
    lv = list(bits(L.vertex_mask))
    if max(len(kv), len(lv)) > ISOMORPHISM_VERTEX_CAP:
        raise ComplexError(f"isomorphism search is limited to {ISOMORPHISM_VERTEX_CAP} vertices")
    if len(kv) != len(lv) or len(K.facets) != len(L.facets):
        return None
    if sorted(map(popcount, K.facets)) != sorted(map(popcount, L.facets)):
        return None
    ksig = {i: _vertex_signature(K, i) for i in kv}
    lsig = {j: _vertex_signature(L, j) for j in lv}
    if sorted(ksig.values()) != sorted(lsig.values()):
        return None

    # most constrained vertices first
    order = sorted(kv, key=lambda i: (-len(ksig[i]), i))
    # facets of K become checkable once their last vertex (in ``order``) is assigned
    position = {v: p for p, v in enumerate(order)}
    ready: dict[int, list[int]] = {}
    for f in K.facets:
        last = max((position[i] for i in bits(f)), default=-1)
        ready.setdefault(last, []).append(f)
    lfacets = L.facets
    image: dict[int, int] = {}
    used = 0

    def extend(p: int) -> bool:
        nonlocal used
        if p == len(order):
            return True
        i = order[p]
        for j in lv:
            if used >> j & 1 or lsig[j] != ksig[i]:
                continue
            image[i] = j
            used |= 1 << j
            ok = True
            for f in ready.get(p, ()):
                g = 0
                for x in bits(f):
                    g |= 1 << image[x]
                if g not in lfacets:
                    ok = False
                    break
            if ok and extend(p + 1):
                return True
            used &= ~(1 << j)
            del image[i]
        return False

    if not extend(0):
        return None
    return {K.ground[i]: L.ground[j] for i, j in image.items()}
