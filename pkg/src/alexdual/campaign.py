"""Seeded property campaigns over random complexes, lattices and matrices."""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import gcd, prod
from pathlib import Path
from typing import Any, Callable

from .alexander import alexander_dual, double_dual_check
from .complex import SimplicialComplex, deletion, faces, is_isomorphic, popcount
from .formats import parse_complex, parse_matrix, parse_poset, write_complex, write_matrix, write_poset
from .generators import (
    campaign_complex,
    instance_rng,
    lattice_ground,
    random_matrix,
    random_reduced_lattice,
)
from .homology import _invariant_factors_sparse, check_duality, reduced_homology, smith_normal_form
from .lattice import (
    Poset,
    _dual_complex,
    check_lattice_duality,
    face_poset,
    has_pairwise_suprema,
    is_reduced_lattice,
    lattice_dual,
    order_complex,
    t_complex,
)
from .moves import (
    SearchBudgetExceeded,
    collapses_to,
    core,
    dominated_vertices,
    elementary_collapse,
    free_faces,
    is_free_pair,
    nerve,
    nerve_map_image,
    square_nerve,
    strong_collapse_sequence,
    strong_collapses_onto,
)

WORKERS_ENV = "ALEXDUAL_WORKERS"
STRONG_REPLAY_BUDGET = 50_000


class UnknownCheck(KeyError):
    pass


# -- instances -------------------------------------------------------------------

@dataclass(frozen=True)
class Instance:
    kind: str  # "complex" | "poset" | "matrix"
    value: Any
    ground: tuple[str, ...] | None = None

    def serialize(self, comments=()) -> tuple[str, str]:
        if self.kind == "complex":
            return write_complex(self.value, comments), "scx"
        if self.kind == "poset":
            return write_poset(self.value, self.ground, comments), "pos"
        return write_matrix(self.value, comments), "mat"

    @classmethod
    def parse(cls, text: str, ext: str) -> "Instance":
        if ext == "scx":
            return cls("complex", parse_complex(text))
        if ext == "pos":
            X, ground = parse_poset(text)
            return cls("poset", X, tuple(ground) if ground is not None else None)
        return cls("matrix", parse_matrix(text))


# -- per-check evaluators --------------------------------------------------------
# Each evaluator maps an instance to {sub-check: passed}.  An instance passes
# when every sub-check does; an empty dict means the check does not apply.

def _corpus(rng, params) -> Instance:
    return Instance("complex", campaign_complex(rng, params["max_vertices"]))


def _eval_duality(inst: Instance) -> dict[str, bool]:
    return {"duality": check_duality(inst.value).passed}


def _gen_double_dual(rng, params, index) -> Instance:
    n = rng.randint(1, params["max_vertices"])
    ground = [f"v{i}" for i in range(n)]
    fixtures = {0: SimplicialComplex.void_complex, 1: SimplicialComplex.empty_complex,
                2: SimplicialComplex.full_simplex}
    if index in fixtures:
        return Instance("complex", fixtures[index](ground))
    return _corpus(rng, params)


def _eval_double_dual(inst: Instance) -> dict[str, bool]:
    return {"double-dual": double_dual_check(inst.value)}


def _gen_with(predicate: Callable[[SimplicialComplex], bool]):
    def gen(rng, params, index) -> Instance:
        for _ in range(200):
            K = campaign_complex(rng, params["max_vertices"])
            if predicate(K):
                return Instance("complex", K)
        raise RuntimeError("could not draw a suitable complex")
    return gen


def _eval_collapse_dual_pair(inst: Instance) -> dict[str, bool]:
    K = inst.value
    full = K.ground_mask
    K_star_faces = faces(alexander_dual(K))
    identity = free = homology = True
    h = reduced_homology(K)
    for tau, sigma in free_faces(K):
        L = elementary_collapse(K, tau, sigma)
        L_star = alexander_dual(L)
        sc, tc = full ^ sigma, full ^ tau
        L_star_faces = faces(L_star)
        identity &= sc in L_star_faces and tc in L_star_faces and \
            K_star_faces == L_star_faces - {sc, tc}
        free &= is_free_pair(L_star, sc, tc)
        homology &= reduced_homology(L) == h
    return {"dual-face-identity": identity, "dual-pair-free": free, "collapse-homology": homology}


NERVE_FACE_LIMIT = 50_000


def _eval_nerve_homology(inst: Instance) -> dict[str, bool]:
    K = inst.value
    N = nerve(K).complex
    if sum(2 ** popcount(f) for f in N.facets) > NERVE_FACE_LIMIT:
        return {}
    return {"nerve-homology": reduced_homology(N) == reduced_homology(K)}


def _eval_core_square_nerve(inst: Instance) -> dict[str, bool]:
    K = inst.value
    c = core(K)
    c2 = core(square_nerve(K).complex)
    other = strong_collapse_sequence(K, choose=lambda pairs: pairs[-1]).end
    return {
        "core-square-nerve": is_isomorphic(c, c2) is not None,
        "core-idempotent": core(c).facets == c.facets and not dominated_vertices(c),
        "core-order-independent": is_isomorphic(c, other) is not None,
    }


def _eval_nerviocolapso(inst: Instance) -> dict[str, bool]:
    K = inst.value
    reaches = full = replay = True
    for v in sorted({v for v, _ in dominated_vertices(K)}):
        result = nerve_map_image(K, v)
        NK = result.nerve_k.complex
        keep = result.image_vertices
        cert = strong_collapses_onto(NK, keep)
        reaches &= cert is not None and cert.end.facets == result.image.facets
        spanned = SimplicialComplex.from_masks(NK.ground, [f & keep for f in NK.facets])
        full &= spanned.facets == result.image.facets
        try:
            replay &= collapses_to(K, deletion(K, v), STRONG_REPLAY_BUDGET) is not None
        except SearchBudgetExceeded:
            replay = False
    return {"nerve-reaches-image": reaches, "image-is-full": full, "strong-implies-collapse": replay}


def _gen_lattice(rng, params, index) -> Instance:
    X = random_reduced_lattice(rng)
    return Instance("poset", X, tuple(lattice_ground(rng, X, params["max_vertices"])))


def _eval_lattice_duality(inst: Instance) -> dict[str, bool]:
    X, ground = inst.value, list(inst.ground)
    out = {"reduced": bool(is_reduced_lattice(X)), "suprema": has_pairwise_suprema(X)}
    if not out["reduced"]:
        return out
    out["lattice-duality"] = check_lattice_duality(X, ground).passed
    out["homology-bridge"] = reduced_homology(t_complex(X)) == reduced_homology(order_complex(X))
    if not _dual_complex(X, ground).void:
        twice = lattice_dual(lattice_dual(X, ground), ground)
        out["double-dual"] = twice.same_as(face_poset(t_complex(X)))
    return out


def _eval_lattice_roundtrip(inst: Instance) -> dict[str, bool]:
    K = inst.value
    if K.void or K.is_empty:
        return {}
    X = face_poset(K)
    return {"face-poset-reduced": bool(is_reduced_lattice(X)), "roundtrip": t_complex(X).same_faces(K)}


def _det(rows: list[list[int]]) -> int:
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        inversions = sum(1 for i, j in combinations(range(n), 2) if perm[i] > perm[j])
        total += (-1) ** inversions * prod(rows[i][perm[i]] for i in range(n))
    return total


def determinantal_divisors(M: list[list[int]]) -> list[int]:
    """D_k = gcd of all k x k minors, for k = 1 .. min(rows, cols)."""
    m, n = len(M), len(M[0]) if M else 0
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in combinations(range(m), k):
            for cs in combinations(range(n), k):
                g = gcd(g, _det([[M[r][c] for c in cs] for r in rs]))
        out.append(g)
    return out


def _gen_matrix(rng, params, index) -> Instance:
    return Instance("matrix", random_matrix(rng))


def _eval_snf(inst: Instance) -> dict[str, bool]:
    M = inst.value
    factors = smith_normal_form(M)
    divisors = determinantal_divisors(M)
    rank = sum(1 for d in divisors if d)
    minors = len(factors) == rank and all(prod(factors[:k]) == divisors[k - 1] for k in range(1, rank + 1))
    chain = all(b % a == 0 for a, b in zip(factors, factors[1:])) and all(d > 0 for d in factors)
    columns = [{i: row[j] for i, row in enumerate(M) if row[j]} for j in range(len(M[0]))]
    return {"gcd-of-minors": minors, "divisibility": chain,
            "sparse-agrees": _invariant_factors_sparse(columns) == factors}


@dataclass(frozen=True)
class CheckSpec:
    stream: str
    generate: Callable
    evaluate: Callable[[Instance], dict[str, bool]]
    max_vertices: int = 9


def _corpus_gen(rng, params, index) -> Instance:
    return _corpus(rng, params)


CHECKS: dict[str, CheckSpec] = {
    "duality": CheckSpec("complex", _corpus_gen, _eval_duality),
    "double-dual": CheckSpec("double-dual", _gen_double_dual, _eval_double_dual),
    "collapse-dual-pair": CheckSpec("collapse", _gen_with(lambda K: bool(free_faces(K))),
                                    _eval_collapse_dual_pair),
    "nerve-homology": CheckSpec("complex", _corpus_gen, _eval_nerve_homology),
    "core-square-nerve": CheckSpec("core", _corpus_gen, _eval_core_square_nerve, max_vertices=8),
    "nerviocolapso": CheckSpec("dominated", _gen_with(lambda K: bool(dominated_vertices(K))),
                               _eval_nerviocolapso, max_vertices=8),
    "lattice-duality": CheckSpec("lattice", _gen_lattice, _eval_lattice_duality, max_vertices=8),
    "lattice-roundtrip": CheckSpec("complex", _corpus_gen, _eval_lattice_roundtrip),
    "snf-oracle": CheckSpec("matrix", _gen_matrix, _eval_snf, max_vertices=5),
}


# -- running ---------------------------------------------------------------------

def make_instance(check: str, seed: int, index: int, max_vertices: int | None = None) -> Instance:
    spec = _spec(check)
    params = {"max_vertices": max_vertices or spec.max_vertices}
    return spec.generate(instance_rng(spec.stream, seed, index), params, index)


def evaluate(check: str, inst: Instance) -> dict[str, bool]:
    return _spec(check).evaluate(inst)


def _spec(check: str) -> CheckSpec:
    try:
        return CHECKS[check]
    except KeyError:
        raise UnknownCheck(f"unknown check {check!r}; choose from {', '.join(CHECKS)}") from None


def _run_one(task: tuple[str, int, int, int | None]) -> tuple[int, dict[str, bool], Instance]:
    check, seed, index, max_vertices = task
    inst = make_instance(check, seed, index, max_vertices)
    return index, evaluate(check, inst), inst


@dataclass
class CampaignReport:
    check: str
    seed: int
    trials: int
    max_vertices: int
    passed: int = 0
    failed: int = 0
    not_applicable: int = 0
    tallies: dict[str, dict[str, int]] = field(default_factory=dict)
    first_counterexample: dict | None = None
    wall_time_ms: int = 0

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self, include_timing: bool = False) -> dict:
        out = {
            "check": self.check,
            "seed": self.seed,
            "trials": self.trials,
            "max_vertices": self.max_vertices,
            "passed": self.passed,
            "failed": self.failed,
            "not_applicable": self.not_applicable,
            "tallies": self.tallies,
            "first_counterexample": self.first_counterexample,
        }
        if include_timing:
            out["wall_time_ms"] = self.wall_time_ms
        return out

    def summary(self) -> str:
        lines = [f"{self.check}: {self.passed}/{self.trials} pass (seed {self.seed}, "
                 f"max vertices {self.max_vertices})"]
        if self.not_applicable:
            lines.append(f"  not applicable: {self.not_applicable}")
        for name, t in sorted(self.tallies.items()):
            lines.append(f"  {name}: {t['pass']} pass, {t['fail']} fail")
        if self.first_counterexample:
            ce = self.first_counterexample
            lines.append(f"  first counterexample: instance {ce['index']} -> {ce['file']}")
        return "\n".join(lines)


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def run_campaign(check: str, trials: int, seed: int, max_vertices: int | None = None,
                 workers: int | None = None, out_dir: str | Path = ".") -> CampaignReport:
    """Run ``trials`` instances of ``check``; the first failing instance is written to ``out_dir``."""
    spec = _spec(check)
    max_vertices = max_vertices or spec.max_vertices
    workers = workers or worker_count()
    start = time.perf_counter()
    tasks = [(check, seed, i, max_vertices) for i in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, tasks, chunksize=max(1, trials // (4 * workers))))
    else:
        results = [_run_one(t) for t in tasks]
    report = CampaignReport(check, seed, trials, max_vertices)
    for index, outcome, inst in sorted(results, key=lambda r: r[0]):
        for name, ok in outcome.items():
            tally = report.tallies.setdefault(name, {"pass": 0, "fail": 0})
            tally["pass" if ok else "fail"] += 1
        if not outcome:
            report.not_applicable += 1
        if all(outcome.values()):
            report.passed += 1
            continue
        report.failed += 1
        if report.first_counterexample is None:
            failing = sorted(name for name, ok in outcome.items() if not ok)
            text, ext = inst.serialize([f"counterexample for {check}", f"seed {seed} instance {index}",
                                        "failing: " + ", ".join(failing)])
            path = Path(out_dir) / f"counterexample-{check}-s{seed}-i{index}.{ext}"
            path.write_text(text)
            report.first_counterexample = {"index": index, "file": str(path), "failing": failing}
    report.wall_time_ms = int((time.perf_counter() - start) * 1000)
    return report


def recheck_file(check: str, path: str | Path) -> dict[str, bool]:
    path = Path(path)
    return evaluate(check, Instance.parse(path.read_text(), path.suffix.lstrip(".")))


__all__ = ["CHECKS", "CampaignReport", "Instance", "UnknownCheck", "determinantal_divisors",
           "evaluate", "make_instance", "recheck_file", "run_campaign", "worker_count"]

