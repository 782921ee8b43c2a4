"""Seeded random instances for the property campaigns.

Every instance draws from its own ``random.Random`` whose seed is derived from
``(stream, seed, index)`` by SHA-256, so instance ``i`` of a campaign does not
depend on how many draws earlier instances consumed, nor on worker scheduling.
Campaigns that share a stream (for example ``duality`` and ``nerve-homology``)
see the same corpus for the same seed.
"""

from __future__ import annotations

import hashlib
import random
from itertools import combinations
from math import comb

from .complex import SimplicialComplex, bits, popcount
from .lattice import Poset


def instance_rng(stream: str, seed: int, index: int) -> random.Random:
    digest = hashlib.sha256(f"{stream}:{seed}:{index}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def _as_rng(seed: int | random.Random) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_complex(n_vertices: int, max_dim: int, density: float,
                   seed: int | random.Random) -> SimplicialComplex:
    """Keep each candidate face of dimension max_dim, max_dim-1, ..., 0 with
    probability ``density`` (one draw per candidate, in lexicographic order),
    then close downwards.  Vertices are named v0, v1, ...
    """
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    rng = _as_rng(seed)
    ground = [f"v{i}" for i in range(n_vertices)]
    chosen = []
    for d in range(min(max_dim, n_vertices - 1), -1, -1):
        for combo in combinations(range(n_vertices), d + 1):
            if rng.random() < density:
                chosen.append(sum(1 << i for i in combo))
    return SimplicialComplex.from_masks(ground, chosen)


def campaign_complex(rng: random.Random, max_vertices: int, max_dim: int = 3) -> SimplicialComplex:
    """Corpus complex: n <= max_vertices, dim <= max_dim, and a density aimed at
    keeping roughly 2..12 top-dimensional candidates, so that nerves stay small
    enough for exact homology."""
    n = rng.randint(1, max_vertices)
    dim = rng.randint(0, min(max_dim, n - 1))
    target = rng.randint(2, 12)
    density = min(1.0, target / comb(n, dim + 1))
    return random_complex(n, dim, density, rng)


def random_reduced_lattice(rng: random.Random, base_size: int = 5,
                           max_members: int = 7) -> Poset:
    """Intersection-closed family of subsets of a small set, ordered by
    inclusion, with the smallest member removed.  Redrawn until at least two
    elements remain."""
    while True:
        family = set()
        for _ in range(rng.randint(2, max_members)):
            family.add(rng.randrange(1, 1 << base_size))
        changed = True
        while changed:
            changed = False
            for a, b in combinations(sorted(family), 2):
                if a & b not in family:
                    family.add(a & b)
                    changed = True
        bottom = (1 << base_size) - 1
        for m in family:
            bottom &= m
        family.discard(bottom)
        if len(family) >= 2:
            break
    members = sorted(family, key=lambda m: (popcount(m), tuple(bits(m))))
    labels = tuple("s" + "".join(str(i) for i in bits(m)) for m in members)
    below = tuple(sum(1 << j for j, b in enumerate(members) if b != a and b & a == b) for a in members)
    return Poset(labels, below)


def lattice_ground(rng: random.Random, X: Poset, max_ground: int = 8) -> list[str]:
    """Minimal elements of X plus up to two fresh labels, at most ``max_ground`` in all."""
    mins = [X.labels[i] for i, down in enumerate(X.below) if not down]
    extra = rng.randint(0, max(0, min(2, max_ground - len(mins))))
    return mins + [f"u{i}" for i in range(extra)]


def random_matrix(rng: random.Random, max_size: int = 5, bound: int = 5) -> list[list[int]]:
    rows = rng.randint(1, max_size)
    cols = rng.randint(1, max_size)
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]
