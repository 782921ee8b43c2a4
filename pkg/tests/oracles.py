"""Brute-force reference computations, independent of the code paths they check."""

from itertools import combinations, permutations
from math import gcd, prod

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from alexdual.complex import SimplicialComplex


def all_subsets(n):
    return range(1 << n)


def brute_faces(K: SimplicialComplex) -> set[int]:
    if K.void:
        return set()
    return {s for s in all_subsets(len(K.ground)) if any(s & f == s for f in K.facets)}


def brute_minimal_non_faces(K: SimplicialComplex) -> set[int]:
    F = brute_faces(K)
    out = set()
    for s in all_subsets(len(K.ground)):
        if s in F:
            continue
        if all((s & ~(1 << i)) in F for i in range(len(K.ground)) if s >> i & 1):
            out.add(s)
    return out


def brute_dual_faces(K: SimplicialComplex) -> set[int]:
    F = brute_faces(K)
    full = K.ground_mask
    return {s for s in all_subsets(len(K.ground)) if full ^ s not in F}


def det(rows):
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        sign = (-1) ** sum(perm[i] > perm[j] for i, j in combinations(range(n), 2))
        total += sign * prod(rows[i][perm[i]] for i in range(n))
    return total


def gcd_of_minors(M, k):
    g = 0
    for rs in combinations(range(len(M)), k):
        for cs in combinations(range(len(M[0])), k):
            g = gcd(g, det([[M[r][c] for c in cs] for r in rs]))
    return g


def sympy_factors(M):
    """Nonzero invariant factors computed by sympy."""
    if not M or not M[0]:
        return ()
    return tuple(abs(int(d)) for d in invariant_factors(Matrix(M), domain=ZZ) if d != 0)


def boundary_matrices(K: SimplicialComplex):
    """Dense augmented boundary matrices keyed by the source dimension, built from scratch."""
    F = brute_faces(K)
    by_dim = {}
    for s in F:
        by_dim.setdefault(bin(s).count("1") - 1, []).append(s)
    for d in by_dim:
        by_dim[d].sort(key=lambda s: [i for i in range(64) if s >> i & 1])
    mats = {}
    for k in range(0, max(by_dim) + 1):
        rows, cols = by_dim.get(k - 1, []), by_dim.get(k, [])
        pos = {s: i for i, s in enumerate(rows)}
        M = [[0] * len(cols) for _ in rows]
        for j, s in enumerate(cols):
            verts = [i for i in range(64) if s >> i & 1]
            for p, v in enumerate(verts):
                M[pos[s & ~(1 << v)]][j] = (-1) ** p
        mats[k] = M
    return by_dim, mats


def homology_oracle(K: SimplicialComplex) -> dict[int, tuple[int, tuple[int, ...]]]:
    """{degree: (rank, torsion)} for the nontrivial reduced homology groups, via sympy."""
    if K.void:
        return {}
    by_dim, mats = boundary_matrices(K)
    facs = {k: sympy_factors(M) for k, M in mats.items()}
    out = {}
    for k in range(-1, max(by_dim) + 1):
        rank = len(by_dim.get(k, [])) - len(facs.get(k, ())) - len(facs.get(k + 1, ()))
        tors = tuple(d for d in facs.get(k + 1, ()) if d > 1)
        if rank or tors:
            out[k] = (rank, tors)
    return out


def cohomology_oracle(K: SimplicialComplex) -> dict[int, tuple[int, tuple[int, ...]]]:
    """Reduced cohomology from the transposed (coboundary) matrices, via sympy."""
    if K.void:
        return {}
    by_dim, mats = boundary_matrices(K)
    # coboundary delta^k : C^k -> C^{k+1} is the transpose of the boundary out of degree k+1
    cob = {k: [list(r) for r in zip(*mats[k + 1])] if mats[k + 1] else [] for k in range(-1, max(by_dim))}
    facs = {k: sympy_factors(M) if M and M[0] else () for k, M in cob.items()}
    out = {}
    for k in range(-1, max(by_dim) + 1):
        rank = len(by_dim.get(k, [])) - len(facs.get(k, ())) - len(facs.get(k - 1, ()))
        tors = tuple(d for d in facs.get(k - 1, ()) if d > 1)
        if rank or tors:
            out[k] = (rank, tors)
    return out


def as_table(graded) -> dict[int, tuple[int, tuple[int, ...]]]:
    return {d: (g.rank, g.torsion) for d, g in graded.nontrivial().items()}
