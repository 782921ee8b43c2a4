import pytest
from hypothesis import given

from alexdual.complex import SimplicialComplex
from alexdual.formats import (
    FormatError,
    parse_complex,
    parse_matrix,
    parse_poset,
    read_complex,
    read_poset,
    write_complex,
    write_matrix,
    write_poset,
)
from alexdual.generators import random_complex
from alexdual.lattice import face_poset

from .conftest import complexes


@given(complexes())
def test_complex_roundtrip(K):
    back = parse_complex(write_complex(K, ["a comment"]))
    assert back.ground == K.ground
    assert back.void == K.void and back.facets == K.facets


@given(complexes(max_ground=5, allow_void=False))
def test_poset_roundtrip(K):
    if K.is_empty:
        return
    X = face_poset(K)
    Y, ground = parse_poset(write_poset(X, K.ground))
    assert Y.same_as(X)
    assert ground == list(K.ground)


def test_matrix_roundtrip():
    M = [[1, -2], [0, 5]]
    assert parse_matrix(write_matrix(M, ["m"])) == M
    with pytest.raises(FormatError):
        parse_matrix("1 2\n3\n")
    with pytest.raises(FormatError):
        parse_matrix("1 x\n")


@pytest.mark.parametrize("text", [
    "facet: a b\n",                       # ground must come first
    "ground: a b\nfacet: a c\n",          # unknown vertex
    "ground: a b\nfacet: a a\n",          # repeated vertex
    "ground: a b\nvoid\nfacet: a\n",      # void with facets
    "ground: a b!\n",                     # bad name
    "ground: a b\nwhat: a\n",             # unknown directive
    "ground: " + " ".join(f"x{i}" for i in range(65)) + "\n",
])
def test_bad_complex_files(text):
    with pytest.raises(FormatError):
        parse_complex(text)


def test_error_carries_line_number():
    with pytest.raises(FormatError) as info:
        parse_complex("# header\nground: a\nfacet: b\n")
    assert "line 3" in str(info.value)


@pytest.mark.parametrize("text", [
    "el: a a\n",
    "el: a b\nrel: a < b\nrel: b < a\n",
    "el: a\nrel: a b\n",
    "ground: a\nground: b\n",
])
def test_bad_poset_files(text):
    with pytest.raises(FormatError):
        parse_poset(text)


def test_void_and_empty_keywords():
    assert parse_complex("ground: a b\nvoid\n").void
    assert parse_complex("ground: a b\nempty\n").is_empty
    with pytest.raises(FormatError):
        parse_complex("ground: a b\n")


def test_fixtures_load(fixtures_dir):
    for path in fixtures_dir.glob("*.scx"):
        assert isinstance(read_complex(path), SimplicialComplex)
    X, ground = read_poset(fixtures_dir / "cycle4_faces.pos")
    assert len(X) == 8 and ground == ["a", "b", "c", "d"]


def test_random_complex_golden(fixtures_dir):
    golden = read_complex(fixtures_dir / "random_6_2_05_seed42.scx")
    K = random_complex(6, 2, 0.5, seed=42)
    assert K.ground == golden.ground and K.facets == golden.facets
