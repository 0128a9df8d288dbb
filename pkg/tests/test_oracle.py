import pytest

from algebroid_mv.lie_algebra import STANDARD, abelian, ce_differential_matrix, so3
from algebroid_mv.linalg import rank
from algebroid_mv.oracle import DoubleComplex, koszul_ce_matrix, oracle_betti, simplicial_coboundary
from algebroid_mv.simplicial import boundary_complex, closure, full_simplex, point, sphere, Simplex


def test_coboundary_examples():
    m = simplicial_coboundary(sphere(1), 0)
    assert m.shape == (3, 3) and rank(m) == 2
    assert simplicial_coboundary(point(), 0).shape == (0, 1)
    t = simplicial_coboundary(full_simplex(2), 1)
    assert t.shape == (1, 3) and rank(t) == 1


def test_oracle_examples():
    assert oracle_betti(sphere(1), abelian(0)) == (1, 1)
    assert oracle_betti(sphere(1), abelian(1)) == (1, 2, 1)
    assert oracle_betti(point(), so3()) == (1, 0, 0, 1)


@pytest.mark.parametrize("k,expected", [
    (full_simplex(3), (1, 0, 0, 0)),
    (sphere(1), (1, 1)),
    (sphere(2), (1, 0, 1)),
    (boundary_complex(Simplex(range(5))), (1, 0, 0, 1)),
])
def test_classical_betti(k, expected):
    assert oracle_betti(k, abelian(0)) == expected


@pytest.mark.parametrize("name", sorted(STANDARD))
def test_total_square_zero(name):
    dc = DoubleComplex(sphere(2), STANDARD[name]())
    for p in range(dc.max_degree):
        assert (dc.d(p + 1) @ dc.d(p)).is_zero()


@pytest.mark.parametrize("name", sorted(STANDARD))
def test_koszul_formula_agrees_with_covector_rule(name):
    g = STANDARD[name]()
    for j in range(g.dim + 1):
        assert koszul_ce_matrix(g, j) == ce_differential_matrix(g, j)
