import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alexdual.complex import SimplicialComplex, faces_by_dim
from alexdual.formats import read_complex
from alexdual.homology import (
    GradedGroups,
    HomologyGroup,
    _invariant_factors_sparse,
    chain_complex,
    check_duality,
    reduced_cohomology,
    reduced_homology,
    smith_normal_form,
)

from .conftest import complexes, cx
from .oracles import as_table, cohomology_oracle, gcd_of_minors, homology_oracle, sympy_factors

matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)))


def test_small_snf():
    assert smith_normal_form([[2, 4], [6, 8]]) == (2, 4)
    assert smith_normal_form([[0, 0], [0, 0]]) == ()
    assert smith_normal_form([]) == ()


@given(matrices)
def test_snf_matches_sympy(M):
    assert smith_normal_form(M) == sympy_factors(M)


@settings(max_examples=40)
@given(matrices)
def test_snf_matches_gcd_of_minors(M):
    factors = smith_normal_form(M)
    for a, b in zip(factors, factors[1:]):
        assert b % a == 0
    product = 1
    for k, d in enumerate(factors, start=1):
        product *= d
        assert product == gcd_of_minors(M, k)
    if len(factors) < min(len(M), len(M[0])):
        assert gcd_of_minors(M, len(factors) + 1) == 0


@given(matrices)
def test_sparse_path_agrees(M):
    columns = [{i: M[i][j] for i in range(len(M)) if M[i][j]} for j in range(len(M[0]))]
    assert _invariant_factors_sparse(columns) == smith_normal_form(M)


def test_group_validation_and_text():
    assert str(HomologyGroup(2, (2, 4))) == "Z^2 + Z/2 + Z/4"
    assert str(HomologyGroup()) == "0"
    with pytest.raises(ValueError):
        HomologyGroup(0, (1,))
    with pytest.raises(ValueError):
        HomologyGroup(0, (2, 3))
    assert GradedGroups({0: HomologyGroup()}) == GradedGroups()
    assert GradedGroups({1: HomologyGroup(1)}) != GradedGroups()


@given(complexes(max_ground=6))
def test_boundary_squares_to_zero(K):
    cc = chain_complex(K)
    for k in cc.boundaries:
        if k - 1 not in cc.boundaries:
            continue
        A, B = cc.dense_boundary(k - 1), cc.dense_boundary(k)
        for i in range(len(A)):
            for j in range(len(B[0]) if B else 0):
                assert sum(A[i][t] * B[t][j] for t in range(len(B))) == 0


@settings(max_examples=80)
@given(complexes(max_ground=6))
def test_homology_matches_oracle(K):
    assert as_table(reduced_homology(K)) == homology_oracle(K)


@settings(max_examples=80)
@given(complexes(max_ground=6))
def test_cohomology_matches_coboundary_oracle(K):
    assert as_table(reduced_cohomology(K)) == cohomology_oracle(K)


@given(complexes(max_ground=7, allow_void=False))
def test_euler_characteristic(K):
    H = reduced_homology(K)
    alternating = sum((-1) ** d * len(fs) for d, fs in faces_by_dim(K).items())
    assert alternating == sum((-1) ** d * g.rank for d, g in H.items())


def test_named_examples(fixtures_dir):
    assert reduced_homology(SimplicialComplex.void_complex("ab")) == GradedGroups()
    assert reduced_homology(SimplicialComplex.empty_complex("ab")) == {-1: HomologyGroup(1)}
    assert reduced_homology(SimplicialComplex.full_simplex("abc")) == GradedGroups()
    assert reduced_homology(cx("ab", "bc", "ca")) == {1: HomologyGroup(1)}
    assert reduced_homology(cx("a", "b", "c")) == {0: HomologyGroup(2)}
    rp2 = read_complex(fixtures_dir / "rp2_6.scx")
    assert reduced_homology(rp2) == {1: HomologyGroup(0, (2,))}
    assert reduced_cohomology(rp2) == {2: HomologyGroup(0, (2,))}


def test_subdivision_leaves_homology_unchanged(fixtures_dir):
    hexagon = read_complex(fixtures_dir / "hexagon.scx")
    assert reduced_homology(hexagon) == reduced_homology(cx("ab", "bc", "ca"))


@given(complexes(max_ground=7, min_ground=1))
def test_duality_holds(K):
    assert check_duality(K).passed


def test_empty_ground_is_outside_the_formula():
    # over no vertices {∅} is the full simplex: H_{-1} = Z while its dual is void
    assert not check_duality(SimplicialComplex.empty_complex(())).passed
    assert check_duality(SimplicialComplex.void_complex(())).passed


def test_duality_report_rows():
    report = check_duality(cx("ab", "bc", "cd", "da"))
    assert report.n == 4
    assert [r.degree for r in report.rows] == list(range(-1, 5))
    assert all(r.dual_degree == 4 - r.degree - 3 for r in report.rows)
    assert report.to_json()["passed"] is True
