import random

import pytest
from hypothesis import given, strategies as st

from algebroid_mv.cohomology import (CochainMapError, NotStabilizedError, TruncatedComplex,
                                     assemble, betti, induced_map, monomials, stabilized_betti)
from algebroid_mv.lie_algebra import STANDARD, abelian, ce_betti, so3
from algebroid_mv.linalg import RationalMatrix
from algebroid_mv.piecewise import AlgebroidComplex, global_differential, validate_compatibility
from algebroid_mv.sampling import random_compatible
from algebroid_mv.simplicial import closure, full_simplex, point, sphere

seeds = st.integers(0, 2**32 - 1)


def test_monomials():
    assert monomials(2, 1) == [(0, 0), (0, 1), (1, 0)]
    assert len(monomials(3, 2)) == 10
    assert monomials(0, 3) == [()]
    assert monomials(2, -1) == []


def test_assemble_examples():
    zero = abelian(0)
    assert len(assemble(AlgebroidComplex(point(), zero), 0, 3)) == 1
    assert len(assemble(AlgebroidComplex(full_simplex(1), zero), 0, 1)) == 2
    assert len(assemble(AlgebroidComplex(sphere(1), zero), 0, 1)) == 3


@pytest.mark.parametrize("k", [closure([[0, 1], [1, 2], [2, 3, 4]]), sphere(2), full_simplex(3)])
def test_piecewise_affine_functions_count_vertices(k):
    assert len(assemble(AlgebroidComplex(k, abelian(0)), 0, 1)) == len(k.vertices)


def test_basis_forms_are_compatible():
    a = AlgebroidComplex(sphere(2), so3())
    for p in range(4):
        for w in assemble(a, p, 2):
            assert validate_compatibility(w)


def test_betti_examples():
    assert betti(AlgebroidComplex(point(), abelian(2)), 0) == (1, 2, 1)
    assert betti(AlgebroidComplex(full_simplex(2), abelian(0)), 2) == (1, 0, 0)
    assert betti(AlgebroidComplex(sphere(1), abelian(0)), 2) == (1, 1)


def test_stabilized_examples():
    for g in STANDARD.values():
        assert stabilized_betti(AlgebroidComplex(point(), g()), start=0)[1] == 0
    b, n = stabilized_betti(AlgebroidComplex(sphere(1), abelian(0)))
    assert b == (1, 1)
    assert betti(AlgebroidComplex(sphere(1), abelian(0)), n) == betti(AlgebroidComplex(sphere(1), abelian(0)), n + 1)
    assert stabilized_betti(AlgebroidComplex(full_simplex(2), abelian(0)))[0] == (1, 0, 0)


def test_stabilization_ceiling_is_explicit():
    a = AlgebroidComplex(sphere(1), abelian(0))
    with pytest.raises(NotStabilizedError) as err:
        stabilized_betti(a, start=1, window=3, ceiling=2)
    assert [n for n, _ in err.value.history] == [1, 2]
    with pytest.raises(ValueError):
        stabilized_betti(AlgebroidComplex(point(), abelian(0)), window=1)


def test_low_truncations_are_skipped():
    # weights 1 and 2 cannot see the top class of the 3-sphere and agree on (1, 0, 0, 0)
    a = AlgebroidComplex(sphere(3), abelian(0))
    assert betti(a, 1) == betti(a, 2) == (1, 0, 0, 0)
    assert stabilized_betti(a, start=1) == ((1, 0, 0, 1), 3)


@pytest.mark.parametrize("name", sorted(STANDARD))
@pytest.mark.parametrize("k", [1, 2, 3])
def test_contractible_base_gives_ce_cohomology(name, k):
    g = STANDARD[name]()
    # degrees run up to dim K + dim g; the extra ones vanish
    assert stabilized_betti(AlgebroidComplex(full_simplex(k), g))[0] == ce_betti(g) + (0,) * k


@pytest.mark.parametrize("name", ["zero", "affine2", "so3"])
def test_d_matrices_compose_to_zero(name):
    t = TruncatedComplex(AlgebroidComplex(sphere(2), STANDARD[name]()), 3)
    t.check_d_squared()
    for p in range(t.max_degree + 1):
        b = t.H(p).dim
        assert 0 <= b <= t.dim(p)


@given(seeds)
def test_matrix_differential_matches_form_differential(seed):
    rng = random.Random(seed)
    g = rng.choice(list(STANDARD.values()))()
    t = TruncatedComplex(AlgebroidComplex(rng.choice([sphere(1), sphere(2), full_simplex(2)]), g), 2)
    p = rng.randint(0, t.max_degree)
    w = random_compatible(rng, t.complex, p, 2, truncated=t)
    v = t.to_vector(w)
    assert t.to_form(p, v) == w
    if p < t.max_degree:
        assert t.to_form(p + 1, t.d(p).apply(v)) == global_differential(w)


def test_to_vector_rejects_heavy_forms():
    a = AlgebroidComplex(sphere(1), abelian(0))
    w = random_compatible(random.Random(1), a, 0, 3, density=1.0)
    with pytest.raises(ValueError):
        TruncatedComplex(a, 1).to_vector(w)


def test_induced_map_examples():
    a = AlgebroidComplex(sphere(1), so3())
    t = TruncatedComplex(a, 2)
    top = t.max_degree
    ident = induced_map({p: RationalMatrix.identity(t.dim(p)) for p in range(top + 1)}, t, t)
    for p, m in ident.items():
        assert m.matrix == RationalMatrix.identity(t.H(p).dim)
    zero = induced_map({}, t, t)
    assert all(m.matrix.is_zero() for m in zero.values())

    arc = TruncatedComplex(AlgebroidComplex(closure([[0, 1], [1, 2]]), abelian(0)), 2)
    circle = TruncatedComplex(AlgebroidComplex(sphere(1), abelian(0)), 2)
    res = induced_map({p: circle.restriction_matrix(arc, p) for p in range(2)}, circle, arc)
    assert res[0].matrix.shape == (1, 1) and res[0].rank == 1


def test_induced_map_rejects_non_chain_maps():
    t = TruncatedComplex(AlgebroidComplex(full_simplex(1), abelian(0)), 1)
    # keep degree 0, kill degree 1: does not commute with d
    with pytest.raises(CochainMapError):
        induced_map({0: RationalMatrix.identity(t.dim(0))}, t, t)
