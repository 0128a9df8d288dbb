import pytest
from hypothesis import given, strategies as st

from algebroid_mv.simplicial import (Simplex, SimplicialComplex, boundary_complex, closure,
                                     cover, full_simplex, is_subcomplex, skeleton, sphere)

simplex_sets = st.lists(
    st.lists(st.integers(0, 6), min_size=1, max_size=4, unique=True).map(sorted),
    max_size=5,
)


def test_simplex_validation():
    assert Simplex([0, 2, 5]).dim == 2
    for bad in ([], [1, 1], [2, 1], [-1, 0]):
        with pytest.raises(ValueError):
            Simplex(bad)


def test_facets_ordered_by_omitted_position():
    assert Simplex([3, 5, 8]).facets() == [Simplex([5, 8]), Simplex([3, 8]), Simplex([3, 5])]
    assert Simplex([4]).facets() == []


def test_complex_rejects_missing_faces():
    with pytest.raises(ValueError):
        SimplicialComplex(frozenset({Simplex([0, 1])}))


def test_closure_examples():
    assert len(closure([])) == 0
    assert len(closure([[0, 1, 2]])) == 7
    assert len(closure([[0, 1], [1, 2], [0, 2]])) == 6


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_boundary_size(k):
    assert len(boundary_complex(Simplex(range(k + 1)))) == 2 ** (k + 1) - 2


def test_boundary_of_vertex_is_empty():
    assert len(boundary_complex(Simplex([3]))) == 0


def test_subcomplex_examples():
    assert is_subcomplex(sphere(1), full_simplex(2))
    assert not is_subcomplex(closure([[0, 3]]), full_simplex(2))
    assert is_subcomplex(SimplicialComplex(), full_simplex(2))


def test_cover_examples():
    c = cover(closure([[0, 1], [1, 2]]), closure([[0, 2]]))
    assert c.intersection == closure([[0], [2]])
    assert c.union == sphere(1)
    k = sphere(1)
    assert cover(k, k).intersection == k
    assert len(cover(closure([[0, 1]]), closure([[2, 3]])).intersection) == 0


def test_skeleton_examples():
    t = full_simplex(2)
    assert len(skeleton(t, 0)) == 3
    assert skeleton(t, 1) == sphere(1)
    assert skeleton(t, t.dim) == t


def test_maximal():
    assert closure([[0, 1, 2], [2, 3]]).maximal() == [Simplex([2, 3]), Simplex([0, 1, 2])]


@given(simplex_sets, simplex_sets)
def test_closure_idempotent_and_monotone(a, b):
    ca = closure(a)
    assert closure(ca.simplices) == ca
    assert is_subcomplex(ca, closure(a + b))


@given(simplex_sets, simplex_sets, st.integers(0, 3))
def test_intersections_and_skeleta_are_subcomplexes(a, b, d):
    c = cover(closure(a), closure(b))
    assert is_subcomplex(c.intersection, c.k0) and is_subcomplex(c.intersection, c.k1)
    assert is_subcomplex(skeleton(c.union, d), c.union)
