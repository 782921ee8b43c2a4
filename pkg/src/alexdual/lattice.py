"""Finite posets, reduced lattices and the lattice version of the Alexander dual."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .alexander import alexander_dual
from .complex import ComplexError, SimplicialComplex, bits, faces, popcount, simplex_key
from .homology import DualityReport, compare_duality, reduced_cohomology, reduced_homology


class PosetError(ValueError):
    pass


@dataclass(frozen=True)
class Poset:
    """Elements ``0..n-1`` named by ``labels``; ``below[i]`` is the bitmask of j with j < i.

    The relation is kept transitively closed.
    """

    labels: tuple[str, ...]
    below: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise PosetError("duplicate element label")
        if len(self.below) != len(self.labels):
            raise PosetError("order relation does not match the element count")
        for i, down in enumerate(self.below):
            if down >> i & 1:
                raise PosetError(f"{self.labels[i]!r} < itself: the relation has a cycle")
            for j in bits(down):
                if self.below[j] & ~down:
                    raise PosetError("order relation is not transitively closed")

    @classmethod
    def from_relations(cls, labels: Sequence[str], relations: Iterable[tuple[str, str]]) -> "Poset":
        """Transitive closure of the pairs ``(a, b)`` meaning a < b."""
        labels = tuple(labels)
        index = {name: i for i, name in enumerate(labels)}
        direct = [0] * len(labels)
        for a, b in relations:
            try:
                direct[index[b]] |= 1 << index[a]
            except KeyError as exc:
                raise PosetError(f"unknown element {exc.args[0]!r}") from None
        closed: list[int | None] = [None] * len(labels)
        on_stack = [False] * len(labels)

        def close(i: int) -> int:
            if closed[i] is not None:
                return closed[i]
            if on_stack[i]:
                raise PosetError(f"cycle through {labels[i]!r}")
            on_stack[i] = True
            down = 0
            for j in bits(direct[i]):
                down |= (1 << j) | close(j)
            on_stack[i] = False
            closed[i] = down
            return down

        below = tuple(close(i) for i in range(len(labels)))
        return cls(labels, below)

    @classmethod
    def empty(cls) -> "Poset":
        return cls((), ())

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise PosetError(f"unknown element {label!r}") from None

    def less(self, i: int, j: int) -> bool:
        return bool(self.below[j] >> i & 1)

    def down_closed(self, i: int) -> int:
        """{j : j <= i} as a bitmask."""
        return self.below[i] | (1 << i)

    def up_closed(self, i: int) -> int:
        return sum(1 << j for j in range(len(self)) if self.below[j] >> i & 1) | (1 << i)

    def relations(self) -> frozenset[tuple[str, str]]:
        return frozenset((self.labels[j], self.labels[i])
                         for i, down in enumerate(self.below) for j in bits(down))

    def same_as(self, other: "Poset") -> bool:
        """Equality as labeled posets (element order is irrelevant)."""
        return set(self.labels) == set(other.labels) and self.relations() == other.relations()

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges (lower, upper)."""
        out = []
        for i, down in enumerate(self.below):
            reach = 0
            for j in bits(down):
                reach |= self.below[j]
            out.extend((j, i) for j in bits(down & ~reach))
        return sorted(out)


# -- reduced lattices ------------------------------------------------------------

@dataclass(frozen=True)
class ReducedLatticeCheck:
    is_reduced: bool
    witness: tuple[str, str] | None = None

    def __bool__(self) -> bool:
        return self.is_reduced


def _infimum(X: Poset, lower: int) -> int | None:
    """Greatest element of the set ``lower`` (a bitmask), if there is one."""
    # only the member with the largest down-set can be the greatest one
    z = max(bits(lower), key=lambda i: popcount(X.below[i]))
    return z if lower & ~X.down_closed(z) == 0 else None


def is_reduced_lattice(X: Poset) -> ReducedLatticeCheck:
    """Every pair with a common lower bound must have an infimum.

    Pairs suffice: the infimum of a bounded-below finite set is reached by
    iterated pairwise infima.
    """
    for x in range(len(X)):
        for y in range(x + 1, len(X)):
            lower = X.down_closed(x) & X.down_closed(y)
            if lower and _infimum(X, lower) is None:
                return ReducedLatticeCheck(False, (X.labels[x], X.labels[y]))
    return ReducedLatticeCheck(True)


def has_pairwise_suprema(X: Poset) -> bool:
    """Every upper-bounded pair has a least upper bound."""
    for x in range(len(X)):
        for y in range(x + 1, len(X)):
            upper = X.up_closed(x) & X.up_closed(y)
            if upper and not any(upper & ~X.up_closed(z) == 0 for z in bits(upper)):
                return False
    return True


def minimal_elements(X: Poset) -> list[int]:
    return [i for i, down in enumerate(X.below) if not down]


def _require_reduced(X: Poset) -> None:
    check = is_reduced_lattice(X)
    if not check:
        a, b = check.witness
        raise PosetError(f"not a reduced lattice: {a!r} and {b!r} have no infimum")


def t_complex(X: Poset) -> SimplicialComplex:
    """Complex on the minimal elements whose simplices are the subsets bounded above."""
    _require_reduced(X)
    mins = minimal_elements(X)
    position = {m: p for p, m in enumerate(mins)}
    masks = []
    for x in range(len(X)):
        masks.append(sum(1 << position[m] for m in bits(X.down_closed(x)) if m in position))
    return SimplicialComplex.from_masks([X.labels[m] for m in mins], masks)


def face_label(K: SimplicialComplex, sigma: int) -> str:
    return "+".join(K.names(sigma))


def face_poset(K: SimplicialComplex) -> Poset:
    """Nonempty faces ordered by inclusion; a vertex keeps its own name, larger faces join names with '+'."""
    if K.void or K.is_empty:
        raise ComplexError("face poset needs a complex with at least one vertex")
    elements = sorted((s for s in faces(K) if s), key=lambda s: (popcount(s), simplex_key(s)))
    labels = tuple(face_label(K, s) for s in elements)
    below = []
    for s in elements:
        below.append(sum(1 << j for j, t in enumerate(elements) if t != s and t & s == t))
    return Poset(labels, tuple(below))


def order_complex(X: Poset) -> SimplicialComplex:
    """Complex of chains of X, built from its maximal chains."""
    if not len(X):
        return SimplicialComplex.empty_complex(())
    down_covers: dict[int, list[int]] = {}
    for lo, hi in X.covers():
        down_covers.setdefault(hi, []).append(lo)
    has_upper = 0
    for down in X.below:
        has_upper |= down
    chains = []

    def walk(top: int, chain: int) -> None:
        lower = down_covers.get(top)
        if not lower:
            chains.append(chain)
            return
        for lo in lower:
            walk(lo, chain | (1 << lo))

    for top in range(len(X)):
        if not has_upper >> top & 1:
            walk(top, 1 << top)
    return SimplicialComplex.from_masks(X.labels, chains)


# -- lattice duality -------------------------------------------------------------

def _dual_complex(X: Poset, ground: Sequence[str]) -> SimplicialComplex:
    _require_reduced(X)
    T = t_complex(X)
    missing = set(T.ground) - set(ground)
    if missing:
        raise PosetError(f"minimal elements {sorted(missing)} are not in the ground set")
    return alexander_dual(T.with_ground(ground))


def lattice_dual(X: Poset, ground: Sequence[str]) -> Poset:
    """X* = X(T(X)*); the empty poset when T(X)* has no vertices (empty or void)."""
    dual = _dual_complex(X, ground)
    if dual.void or dual.is_empty:
        return Poset.empty()
    return face_poset(dual)


def check_lattice_duality(X: Poset, ground: Sequence[str]) -> DualityReport:
    """Compare H̃_i(K(X)) with H̃^{n-i-3}(K(X*)), n = |ground|, for i in -1 .. n.

    When T(X)* is void, X* is the empty poset but its (co)homology is taken from
    the void complex, which has none.
    """
    dual_complex = _dual_complex(X, ground)
    if dual_complex.void:
        dual_order = SimplicialComplex.void_complex(())
    else:
        dual_order = order_complex(lattice_dual(X, ground))
    n = len(ground)
    rows = compare_duality(reduced_homology(order_complex(X)), reduced_cohomology(dual_order), n)
    return DualityReport(n, dual_order, tuple(rows))
