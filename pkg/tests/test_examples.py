"""Worked examples with hand-checkable answers."""

from alexdual.alexander import alexander_dual
from alexdual.complex import SimplicialComplex, boundary_of_simplex, contains_skeleton, faces, is_isomorphic
from alexdual.homology import HomologyGroup, reduced_homology
from alexdual.lattice import face_poset, lattice_dual, order_complex, t_complex
from alexdual.moves import elementary_collapse, is_free_pair

from .conftest import cx


def test_dual_of_the_empty_complex_is_a_boundary():
    D = alexander_dual(SimplicialComplex.empty_complex("abc"))
    assert D.same_faces(cx("ab", "bc", "ca"))


def test_triangle_boundary_dual_over_four_vertices():
    assert alexander_dual(boundary_of_simplex("abc", "abcd")).facet_names() == {frozenset("abc"), frozenset("d")}


def test_dual_of_tetrahedron_boundary_contains_the_two_skeleton():
    K = boundary_of_simplex("abcd", "abcdefg")
    assert contains_skeleton(alexander_dual(K), 2)


def test_cycle_and_two_edges_are_not_isomorphic():
    assert is_isomorphic(cx("ab", "bc", "cd", "da"), cx("ac", "bd")) is None


def test_collapse_is_an_expansion_on_the_dual_side():
    K = cx("abc", ground="abcd")
    sigma, tau = K.mask("abc"), K.mask("ab")
    L = elementary_collapse(K, tau, sigma)
    K_star, L_star = alexander_dual(K), alexander_dual(L)
    assert K_star.facet_names() == {frozenset("abc")}
    assert L_star.facet_names() == {frozenset("abc"), frozenset("cd")}
    full = K.ground_mask
    assert faces(K_star) == faces(L_star) - {full ^ sigma, full ^ tau}
    assert is_free_pair(L_star, full ^ sigma, full ^ tau)


def test_order_complex_of_triangle_boundary_is_a_hexagon():
    O = order_complex(face_poset(cx("ab", "bc", "ca")))
    assert len(O.vertices) == 6 and len(O.facets) == 6
    assert reduced_homology(O) == {1: HomologyGroup(1)}


def test_t_complex_recovers_simplex_and_boundary():
    for K in (cx("abc"), cx("ab", "bc", "ca")):
        assert t_complex(face_poset(K)).same_faces(K)


def test_lattice_dual_of_triangle_boundary_over_four_vertices():
    D = lattice_dual(face_poset(cx("ab", "bc", "ca")), list("abcd"))
    assert D.same_as(face_poset(cx("abc", "d")))
