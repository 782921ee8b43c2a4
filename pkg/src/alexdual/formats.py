"""Text formats: ``.scx`` complexes and ``.pos`` posets.

.scx::

    # comment
    ground: a b c d
    facet: a b c
    facet: c d

``void`` or ``empty`` may replace the facet lines.

.pos::

    el: a b c
    rel: a < b
    rel: b < c
    ground: a x        (optional; default ground set for lattice duals)
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Sequence

from .complex import MAX_GROUND, NAME_RE, ComplexError, SimplicialComplex, from_facets
from .lattice import Poset, PosetError

POS_NAME_RE = re.compile(r"^[A-Za-z0-9_+]+$")


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def _directive(line: str, number: int) -> tuple[str, list[str]]:
    if ":" in line:
        key, rest = line.split(":", 1)
        return key.strip(), rest.split()
    return line, []


def _check_names(names: Sequence[str], number: int, pattern=NAME_RE) -> None:
    for name in names:
        if not pattern.match(name):
            raise FormatError(f"invalid vertex name {name!r}", number)


def parse_complex(text: str) -> SimplicialComplex:
    ground = None
    facets: list[list[str]] = []
    marker = None
    for number, line in _lines(text):
        key, args = _directive(line, number)
        if key == "ground":
            if ground is not None:
                raise FormatError("ground declared twice", number)
            _check_names(args, number)
            if len(args) > MAX_GROUND:
                raise FormatError(f"ground set has {len(args)} vertices; at most {MAX_GROUND} allowed", number)
            if len(set(args)) != len(args):
                raise FormatError("duplicate vertex in ground", number)
            ground = args
        elif key in ("void", "empty") and not args and ":" not in line:
            if ground is None:
                raise FormatError("'ground:' must come first", number)
            if marker or facets:
                raise FormatError(f"'{key}' cannot be combined with other facet lines", number)
            marker = key
        elif key == "facet":
            if ground is None:
                raise FormatError("'ground:' must come first", number)
            if marker:
                raise FormatError(f"facet line after '{marker}'", number)
            if not args:
                raise FormatError("empty facet line; use 'empty' for the empty complex", number)
            _check_names(args, number)
            unknown = [a for a in args if a not in ground]
            if unknown:
                raise FormatError(f"unknown vertex {unknown[0]!r}", number)
            facets.append(args)
        else:
            raise FormatError(f"unrecognized line {line!r}", number)
    if ground is None:
        raise FormatError("missing 'ground:' line")
    if marker is None and not facets:
        raise FormatError("no facets; write 'empty' or 'void' explicitly")
    try:
        return from_facets(facets, ground, void=marker == "void")
    except ComplexError as exc:
        raise FormatError(str(exc)) from None


def write_complex(K: SimplicialComplex, comments: Sequence[str] = ()) -> str:
    out = [f"# {c}" for c in comments]
    out.append("ground: " + " ".join(K.ground) if K.ground else "ground:")
    if K.void:
        out.append("void")
    elif K.is_empty:
        out.append("empty")
    else:
        out.extend("facet: " + " ".join(K.names(f)) for f in K.sorted_facets())
    return "\n".join(out) + "\n"


def parse_poset(text: str) -> tuple[Poset, list[str] | None]:
    """Return the poset and the optional declared ground set."""
    labels: dict[str, None] = {}
    declared: set[str] = set()
    relations = []
    ground = None
    for number, line in _lines(text):
        key, args = _directive(line, number)
        if key == "el":
            _check_names(args, number, POS_NAME_RE)
            for a in args:
                if a in declared:
                    raise FormatError(f"duplicate element {a!r}", number)
                declared.add(a)
                labels.setdefault(a, None)
        elif key == "rel":
            if len(args) != 3 or args[1] != "<":
                raise FormatError("expected 'rel: a < b'", number)
            a, _, b = args
            _check_names([a, b], number, POS_NAME_RE)
            labels.setdefault(a, None)
            labels.setdefault(b, None)
            relations.append((a, b))
        elif key == "ground":
            if ground is not None:
                raise FormatError("ground declared twice", number)
            _check_names(args, number, POS_NAME_RE)
            ground = args
        else:
            raise FormatError(f"unrecognized line {line!r}", number)
    try:
        return Poset.from_relations(list(labels), relations), ground
    except PosetError as exc:
        raise FormatError(str(exc)) from None


def write_poset(X: Poset, ground: Sequence[str] | None = None, comments: Sequence[str] = ()) -> str:
    out = [f"# {c}" for c in comments]
    if len(X):
        out.append("el: " + " ".join(X.labels))
    out.extend(f"rel: {X.labels[lo]} < {X.labels[hi]}" for lo, hi in X.covers())
    if ground is not None:
        out.append("ground: " + " ".join(ground))
    return "\n".join(out) + "\n"


def parse_matrix(text: str) -> list[list[int]]:
    rows = []
    for number, line in _lines(text):
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise FormatError("matrix entries must be integers", number) from None
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise FormatError("ragged matrix")
    return rows


def write_matrix(rows: Sequence[Sequence[int]], comments: Sequence[str] = ()) -> str:
    out = [f"# {c}" for c in comments]
    out.extend(" ".join(str(v) for v in row) for row in rows)
    return "\n".join(out) + "\n"


def read_complex(path: str | Path) -> SimplicialComplex:
    return parse_complex(Path(path).read_text())


def read_poset(path: str | Path) -> tuple[Poset, list[str] | None]:
    return parse_poset(Path(path).read_text())
