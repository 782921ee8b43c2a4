"""Exact reduced (co)homology over the integers via Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .alexander import alexander_dual
from .complex import SimplicialComplex, bits, faces_by_dim


@dataclass(frozen=True)
class HomologyGroup:
    """Z^rank plus Z/d for each invariant factor d (each at least 2, dividing the next)."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        for d in self.torsion:
            if d < 2:
                raise ValueError("torsion coefficients must be at least 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion coefficients must form a divisibility chain")

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) or "0"

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


TRIVIAL = HomologyGroup()


class GradedGroups(dict):
    """Degree -> HomologyGroup; missing degrees are trivial and ignored by ``==``."""

    def __missing__(self, degree: int) -> HomologyGroup:
        return TRIVIAL

    def nontrivial(self) -> dict[int, HomologyGroup]:
        return {d: g for d, g in sorted(self.items()) if not g.is_trivial}

    def __eq__(self, other) -> bool:
        if not isinstance(other, dict):
            return NotImplemented
        if not isinstance(other, GradedGroups):
            other = GradedGroups(other)
        return self.nontrivial() == other.nontrivial()

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None  # type: ignore[assignment]

    def __str__(self) -> str:
        items = self.nontrivial()
        if not items:
            return "trivial"
        return ", ".join(f"H{d}={g}" for d, g in items.items())

    def to_json(self) -> dict:
        return {str(d): g.to_json() for d, g in sorted(self.items())}


# -- Smith normal form ---------------------------------------------------------

def smith_normal_form(matrix: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix.

    Dense elimination with Python integers.  The pivot is the nonzero entry of
    smallest absolute value in the active block (ties: lowest row, then column).
    """
    A = [list(row) for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    if any(len(row) != n for row in A):
        raise ValueError("ragged matrix")
    factors = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                a = row[j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        A[t], A[pi] = A[pi], A[t]
        if pj != t:
            for row in A:
                row[t], row[pj] = row[pj], row[t]
        p = A[t][t]
        clean = True
        for i in range(t + 1, m):
            q = A[i][t] // p
            if q:
                rt, ri = A[t], A[i]
                for j in range(t, n):
                    ri[j] -= q * rt[j]
            if A[i][t]:
                clean = False
        for j in range(t + 1, n):
            q = A[t][j] // p
            if q:
                for row in A:
                    row[j] -= q * row[t]
            if A[t][j]:
                clean = False
        if not clean:
            continue
        bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
        if bad is not None:
            rt, rb = A[t], A[bad]
            for j in range(t, n):
                rt[j] += rb[j]
            continue
        factors.append(abs(p))
        t += 1
    return tuple(factors)


def _invariant_factors_sparse(columns: list[dict[int, int]]) -> tuple[int, ...]:
    """Invariant factors of a sparse column matrix.

    Unit pivots are eliminated sparsely first (each contributes a factor 1);
    whatever is left goes through :func:`smith_normal_form`.
    """
    cols = {c: dict(col) for c, col in enumerate(columns) if col}
    rows: dict[int, set[int]] = {}
    for c, col in cols.items():
        for r in col:
            rows.setdefault(r, set()).add(c)
    units = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(cols):
            col = cols.get(c)
            if col is None:
                continue
            piv = None
            for r, v in col.items():
                if v in (1, -1) and (piv is None or len(rows[r]) < len(rows[piv])):
                    piv = r
            if piv is None:
                continue
            u = col[piv]
            for c2 in list(rows[piv]):
                if c2 == c:
                    continue
                col2 = cols[c2]
                f = col2[piv] * u
                for r, v in col.items():
                    nv = col2.get(r, 0) - f * v
                    if nv:
                        if r not in col2:
                            rows[r].add(c2)
                        col2[r] = nv
                    elif r in col2:
                        del col2[r]
                        rows[r].discard(c2)
                if not col2:
                    del cols[c2]
            for r in col:
                rows[r].discard(c)
            del cols[c]
            units += 1
            progress = True
    if not cols:
        return (1,) * units
    row_ids = sorted({r for col in cols.values() for r in col})
    where = {r: i for i, r in enumerate(row_ids)}
    dense = [[0] * len(cols) for _ in row_ids]
    for j, c in enumerate(sorted(cols)):
        for r, v in cols[c].items():
            dense[where[r]][j] = v
    return (1,) * units + smith_normal_form(dense)


# -- chain complexes -----------------------------------------------------------

@dataclass
class ChainComplex:
    """Augmented simplicial chain complex: ``basis[k]`` lists k-faces, k >= -1."""

    basis: dict[int, list[int]]
    boundaries: dict[int, list[dict[int, int]]] = field(default_factory=dict)

    def dense_boundary(self, k: int) -> list[list[int]]:
        rows = len(self.basis.get(k - 1, []))
        cols = self.boundaries.get(k, [])
        out = [[0] * len(cols) for _ in range(rows)]
        for j, col in enumerate(cols):
            for i, v in col.items():
                out[i][j] = v
        return out


def chain_complex(K: SimplicialComplex) -> ChainComplex:
    """Boundary matrices of the augmented chain complex, as sparse columns.

    The boundary of a k-face drops its j-th vertex (in index order) with sign (-1)^j;
    vertices map to the empty face with coefficient 1.
    """
    if K.void:
        return ChainComplex({})
    basis = faces_by_dim(K)
    cx = ChainComplex(basis)
    for k in range(0, K.dim + 1):
        position = {s: i for i, s in enumerate(basis[k - 1])}
        cols = []
        for s in basis[k]:
            col = {}
            for j, v in enumerate(bits(s)):
                col[position[s & ~(1 << v)]] = -1 if j % 2 else 1
            cols.append(col)
        cx.boundaries[k] = cols
    return cx


def reduced_homology(K: SimplicialComplex) -> GradedGroups:
    """H̃_k(K) for k = -1 .. dim K.  Void complexes have no homology at all."""
    out = GradedGroups()
    if K.void:
        return out
    cx = chain_complex(K)
    factors = {k: _invariant_factors_sparse(cols) for k, cols in cx.boundaries.items()}
    for k in range(-1, K.dim + 1):
        n_k = len(cx.basis.get(k, []))
        rank_out = len(factors.get(k, ()))
        incoming = factors.get(k + 1, ())
        out[k] = HomologyGroup(n_k - rank_out - len(incoming), tuple(d for d in incoming if d > 1))
    return out


def reduced_cohomology(K: SimplicialComplex) -> GradedGroups:
    """H̃^k(K) from homology by universal coefficients: free part of H̃_k, torsion of H̃_{k-1}."""
    homology = reduced_homology(K)
    out = GradedGroups()
    for k in homology:
        out[k] = HomologyGroup(homology[k].rank, homology[k - 1].torsion)
    if homology:
        top = max(homology) + 1
        if homology[top - 1].torsion:
            out[top] = HomologyGroup(0, homology[top - 1].torsion)
    return out


# -- duality -------------------------------------------------------------------

@dataclass(frozen=True)
class DualityRow:
    degree: int
    homology: HomologyGroup
    dual_degree: int
    cohomology: HomologyGroup

    @property
    def ok(self) -> bool:
        return self.homology == self.cohomology


@dataclass(frozen=True)
class DualityReport:
    n: int
    dual: SimplicialComplex
    rows: tuple[DualityRow, ...]

    @property
    def passed(self) -> bool:
        return all(row.ok for row in self.rows)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "passed": self.passed,
            "degrees": [
                {"i": r.degree, "H_i(K)": str(r.homology), "k": r.dual_degree,
                 "H^k(K*)": str(r.cohomology), "ok": r.ok}
                for r in self.rows
            ],
        }


def compare_duality(homology: GradedGroups, dual_cohomology: GradedGroups, n: int) -> list[DualityRow]:
    return [DualityRow(i, homology[i], n - i - 3, dual_cohomology[n - i - 3]) for i in range(-1, n + 1)]


def check_duality(K: SimplicialComplex, ground: Sequence[str] | None = None) -> DualityReport:
    """Compare H̃_i(K) with H̃^{n-i-3}(K*) for every i in -1 .. n, n = |ground|.

    The formula needs n >= 1: over an empty ground set {∅} is the full simplex,
    whose dual is void, so degree -1 fails.
    """
    if ground is not None:
        K = K.with_ground(ground)
    n = len(K.ground)
    dual = alexander_dual(K)
    rows = compare_duality(reduced_homology(K), reduced_cohomology(dual), n)
    return DualityReport(n, dual, tuple(rows))

