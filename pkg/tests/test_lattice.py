import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alexdual.complex import ComplexError, SimplicialComplex
from alexdual.generators import lattice_ground, random_reduced_lattice
from alexdual.homology import reduced_homology
from alexdual.lattice import (
    Poset,
    PosetError,
    check_lattice_duality,
    face_poset,
    has_pairwise_suprema,
    is_reduced_lattice,
    lattice_dual,
    minimal_elements,
    order_complex,
    t_complex,
)

from .conftest import complexes, cx


def brute_reduced(X: Poset) -> bool:
    """Every nonempty subset with a common lower bound has a greatest lower bound."""
    n = len(X)
    for r in range(1, n + 1):
        for subset in combinations(range(n), r):
            lower = [z for z in range(n) if all(z == s or X.less(z, s) for s in subset)]
            if not lower:
                continue
            if not any(all(w == z or X.less(w, z) for w in lower) for z in lower):
                return False
    return True


@st.composite
def posets(draw, max_size=7):
    n = draw(st.integers(0, max_size))
    labels = [f"p{i}" for i in range(n)]
    # relations only go from lower to higher index, so there is no cycle
    pairs = [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Poset.from_relations(labels, chosen)


@settings(max_examples=150)
@given(posets())
def test_pairwise_check_matches_all_subsets(X):
    assert bool(is_reduced_lattice(X)) == brute_reduced(X)


def test_closure_and_cycles():
    X = Poset.from_relations("abc", [("a", "b"), ("b", "c")])
    assert X.less(0, 2)
    with pytest.raises(PosetError):
        Poset.from_relations("ab", [("a", "b"), ("b", "a")])
    with pytest.raises(PosetError):
        Poset.from_relations("a", [("a", "z")])


def test_bowtie_is_not_reduced():
    X = Poset.from_relations("abcd", [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
    check = is_reduced_lattice(X)
    assert not check and check.witness == ("c", "d")
    with pytest.raises(PosetError):
        t_complex(X)


@given(complexes(max_ground=6, allow_void=False))
def test_face_poset_roundtrip(K):
    if K.is_empty:
        with pytest.raises(ComplexError):
            face_poset(K)
        return
    X = face_poset(K)
    assert is_reduced_lattice(X)
    assert has_pairwise_suprema(X)
    T = t_complex(X)
    assert T.facet_names() == K.with_ground(K.vertices).facet_names()


@settings(max_examples=40)
@given(complexes(max_ground=5, allow_void=False))
def test_order_complex_is_barycentric_subdivision(K):
    if K.is_empty:
        return
    assert reduced_homology(order_complex(face_poset(K))) == reduced_homology(K)


def test_order_complex_of_chain_and_antichain():
    chain = Poset.from_relations("abc", [("a", "b"), ("b", "c")])
    assert order_complex(chain).facet_names() == {frozenset("abc")}
    assert order_complex(Poset.from_relations("ab", [])).facet_names() == {frozenset("a"), frozenset("b")}
    assert order_complex(Poset.empty()).is_empty


def test_four_cycle_lattice_dual():
    K = cx("ab", "bc", "cd", "da")
    D = lattice_dual(face_poset(K), list("abcd"))
    assert set(D.labels) == {"a", "b", "c", "d", "a+c", "b+d"}
    assert check_lattice_duality(face_poset(K), list("abcd")).passed


def test_triangle_boundary_has_empty_dual():
    X = face_poset(cx("ab", "bc", "ca"))
    assert len(lattice_dual(X, list("abc"))) == 0
    assert check_lattice_duality(X, list("abc")).passed


def test_void_dual_side():
    X = face_poset(SimplicialComplex.full_simplex("ab"))
    assert len(lattice_dual(X, ["a", "b"])) == 0
    report = check_lattice_duality(X, ["a", "b"])
    assert report.dual.void and report.passed


def test_ground_must_cover_minimal_elements():
    X = face_poset(cx("ab"))
    with pytest.raises(PosetError):
        lattice_dual(X, ["a"])


@pytest.mark.parametrize("seed", range(30))
def test_random_lattices(seed):
    rng = random.Random(seed)
    X = random_reduced_lattice(rng)
    ground = lattice_ground(rng, X)
    assert is_reduced_lattice(X)
    assert has_pairwise_suprema(X)
    assert reduced_homology(t_complex(X)) == reduced_homology(order_complex(X))
    assert check_lattice_duality(X, ground).passed
    assert [X.labels[i] for i in minimal_elements(X)] == list(t_complex(X).ground)
