from pathlib import Path

import pytest
from hypothesis import strategies as st

from alexdual.complex import SimplicialComplex, from_facets

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


def cx(*facets, ground=None):
    """Shorthand: cx("abc", "abd") with single-letter vertex names."""
    return from_facets([list(f) for f in facets], list(ground) if ground else None)


@st.composite
def complexes(draw, max_ground=7, allow_void=True, min_ground=0):
    """Random complexes (void, empty and full simplices included) over v0..v{n-1}."""
    n = draw(st.integers(min_ground, max_ground))
    ground = [f"v{i}" for i in range(n)]
    kind = draw(st.sampled_from(["random"] * 8 + ["empty", "full"] + (["void"] if allow_void else [])))
    if kind == "void":
        return SimplicialComplex.void_complex(ground)
    if kind == "empty" or n == 0:
        return SimplicialComplex.empty_complex(ground)
    if kind == "full":
        return SimplicialComplex.full_simplex(ground)
    masks = draw(st.lists(st.integers(1, (1 << n) - 1), max_size=8))
    return SimplicialComplex.from_masks(ground, masks)


def pytest_terminal_summary(terminalreporter):
    from .test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
