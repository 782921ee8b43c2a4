"""Command-line workbench.

Exit codes: 0 success, 1 property failure or negative answer, 2 usage or
parse error, 3 inconclusive (search budget exhausted, or no certificate found).
"""

from __future__ import annotations

import argparse
import json
import sys

from .alexander import dual_report
from .campaign import CHECKS, UnknownCheck, run_campaign
from .complex import ComplexError, SimplicialComplex
from .formats import FormatError, read_complex, read_poset, write_complex, write_poset
from .homology import check_duality, reduced_cohomology, reduced_homology
from .lattice import PosetError, is_reduced_lattice, lattice_dual, minimal_elements
from .moves import (
    DEFAULT_BUDGET,
    SearchBudgetExceeded,
    collapses_to,
    collapses_to_some_simplex_boundary,
    dual_sphere_certificate,
    nerve,
    square_nerve,
    strong_collapse_sequence,
)

OK, FAILED, USAGE, INCONCLUSIVE = 0, 1, 2, 3


def _facets_json(K: SimplicialComplex) -> dict:
    return {"ground": list(K.ground), "void": K.void,
            "facets": [] if K.void else [list(K.names(f)) for f in K.sorted_facets()]}


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _complex_with_ground(args) -> SimplicialComplex:
    K = read_complex(args.file)
    if getattr(args, "ground", None):
        K = K.with_ground(args.ground)
    return K


def cmd_dual(args) -> int:
    K = _complex_with_ground(args)
    report = dual_report(K)
    payload = dict(_facets_json(report.dual), ground_size=report.ground_size,
                   minimal_non_face_count=report.minimal_non_face_count)
    _emit(args, payload, write_complex(report.dual))
    return OK


def cmd_homology(args, cohomology: bool = False) -> int:
    K = read_complex(args.file)
    groups = reduced_cohomology(K) if cohomology else reduced_homology(K)
    sym = "H^" if cohomology else "H_"
    lines = [f"{sym}{d} = {g}" for d, g in sorted(groups.items())] or ["(void complex: no groups)"]
    _emit(args, {"cohomology" if cohomology else "homology": groups.to_json()}, "\n".join(lines))
    return OK


def cmd_verify_duality(args) -> int:
    K = _complex_with_ground(args)
    report = check_duality(K)
    lines = [f"n = {report.n}"]
    for r in report.rows:
        mark = "ok  " if r.ok else "FAIL"
        lines.append(f"{mark} H_{r.degree}(K) = {r.homology}   H^{r.dual_degree}(K*) = {r.cohomology}")
    _emit(args, report.to_json(), "\n".join(lines))
    return OK if report.passed else FAILED


def cmd_nerve(args) -> int:
    K = read_complex(args.file)
    N = square_nerve(K) if args.square else nerve(K)
    legend = N.legend()
    comments = [f"{label} = {' '.join(names) or '(empty)'}" for label, names in legend.items()]
    _emit(args, dict(_facets_json(N.complex), legend=legend), write_complex(N.complex, comments))
    return OK


def cmd_core(args) -> int:
    K = read_complex(args.file)
    cert = strong_collapse_sequence(K)
    comments = [f"delete {K.ground[s.vertex]} (dominated by {K.ground[s.witness]})" for s in cert.steps]
    _emit(args, dict(_facets_json(cert.end), steps=cert.to_json()["steps"]),
          write_complex(cert.end, comments))
    return OK


def cmd_collapse(args) -> int:
    K = read_complex(args.file)
    try:
        if args.to == "boundary":
            found = collapses_to_some_simplex_boundary(K, args.budget)
            cert, sigma = found if found else (None, None)
        else:
            cert, sigma = collapses_to(K, read_complex(args.to), args.budget), None
    except SearchBudgetExceeded as exc:
        _emit(args, {"result": "budget-exhausted", "detail": str(exc)}, f"inconclusive: {exc}")
        return INCONCLUSIVE
    if cert is None:
        _emit(args, {"result": "impossible"}, "no collapse exists (search exhausted)")
        return FAILED
    payload = dict(cert.to_json(), result="collapses")
    lines = [f"{len(cert.steps)} elementary collapses"]
    if sigma is not None:
        payload["simplex"] = list(K.names(sigma))
        lines[0] += f" onto the boundary of {' '.join(K.names(sigma))}"
    lines += [f"  remove {' '.join(K.names(s.tau))} < {' '.join(K.names(s.sigma))}" for s in cert.steps]
    _emit(args, payload, "\n".join(lines))
    return OK


def cmd_dual_sphere(args) -> int:
    K = _complex_with_ground(args)
    cert = dual_sphere_certificate(K)
    if cert is None:
        _emit(args, {"result": "inconclusive"},
              "inconclusive: the core of the nerve is not the boundary of a simplex")
        return INCONCLUSIVE
    payload = dict(cert.to_json(), result="sphere" if cert.consistent else "inconsistent")
    if cert.consistent:
        text = (f"core(N(K)) is the boundary of a {cert.boundary_dim}-simplex; "
                f"K* has the homology of S^{cert.sphere_dim}")
    else:
        text = f"core(N(K)) is a simplex boundary but K* has homology {cert.dual_homology}"
    _emit(args, payload, text)
    return OK if cert.consistent else FAILED


def _poset_and_ground(args):
    X, declared = read_poset(args.file)
    return X, list(args.ground) if getattr(args, "ground", None) else declared


def cmd_lattice_dual(args) -> int:
    X, ground = _poset_and_ground(args)
    if ground is None:
        raise FormatError("a ground set is required (--ground or a 'ground:' line)")
    D = lattice_dual(X, ground)
    payload = {"elements": list(D.labels),
               "relations": [[D.labels[a], D.labels[b]] for a, b in D.covers()]}
    _emit(args, payload, write_poset(D))
    return OK


def cmd_lattice_check(args) -> int:
    X, _ = _poset_and_ground(args)
    check = is_reduced_lattice(X)
    mins = [X.labels[i] for i in minimal_elements(X)]
    payload = {"is_reduced": check.is_reduced,
               "witness": list(check.witness) if check.witness else None, "minimal": mins}
    if check:
        text = f"reduced lattice; minimal elements: {' '.join(mins)}"
    else:
        text = f"not a reduced lattice: {check.witness[0]} and {check.witness[1]} have no infimum"
    _emit(args, payload, text)
    return OK if check else FAILED


def cmd_campaign(args) -> int:
    report = run_campaign(args.check, args.trials, args.seed, args.max_vertices,
                          out_dir=args.out_dir)
    print(f"wall time {report.wall_time_ms} ms", file=sys.stderr)
    _emit(args, report.to_json(include_timing=args.timing), report.summary())
    return OK if report.ok else FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    parser = argparse.ArgumentParser(prog="alexdual", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, ground=False):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        if ground:
            p.add_argument("--ground", nargs="+", metavar="VERTEX")
        return p

    add("dual", cmd_dual, "Alexander dual of a .scx complex", ground=True).add_argument("file")
    add("homology", cmd_homology, "reduced integral homology").add_argument("file")
    add("cohomology", lambda a: cmd_homology(a, cohomology=True),
        "reduced integral cohomology").add_argument("file")
    add("verify-duality", cmd_verify_duality, "compare H_i(K) with H^(n-i-3)(K*)",
        ground=True).add_argument("file")
    p = add("nerve", cmd_nerve, "nerve of a complex")
    p.add_argument("file")
    p.add_argument("--square", action="store_true", help="apply the nerve twice")
    add("core", cmd_core, "strong-collapse core").add_argument("file")
    p = add("collapse", cmd_collapse, "search for an elementary collapse sequence")
    p.add_argument("file")
    p.add_argument("--to", required=True, help="target .scx file, or 'boundary' for any simplex boundary")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    add("dual-sphere", cmd_dual_sphere, "certify that K* is a homology sphere via the nerve core",
        ground=True).add_argument("file")
    add("lattice-dual", cmd_lattice_dual, "Alexander dual of a reduced lattice (.pos)",
        ground=True).add_argument("file")
    add("lattice-check", cmd_lattice_check, "test the reduced-lattice property").add_argument("file")
    p = add("campaign", cmd_campaign, "run a seeded property campaign")
    p.add_argument("check", help="one of: " + ", ".join(CHECKS))
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-vertices", type=int, default=None)
    p.add_argument("--out-dir", default=".", help="where a counterexample file is written")
    p.add_argument("--timing", action="store_true", help="include wall time in the JSON report")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except (FormatError, ComplexError, PosetError, UnknownCheck, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()


__all__ = ["build_parser", "main"]
