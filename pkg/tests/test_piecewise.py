import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from algebroid_mv.lie_algebra import STANDARD, abelian, so3
from algebroid_mv.piecewise import (AlgebroidComplex, CompatibilityError, PiecewiseForm,
                                    extend_from_subcomplex, extend_over_boundary,
                                    extend_partial_boundary, facet_sweep, form_from_json,
                                    form_to_json, global_differential, require_compatible,
                                    restrict_to_subcomplex, validate_compatibility)
from algebroid_mv.polyform import FormError, PolyForm, evaluate, restrict_to_face
from algebroid_mv.sampling import random_compatible, random_polyform, random_subcomplex
from algebroid_mv.simplicial import (Simplex, SimplicialComplex, boundary_complex, closure,
                                     full_simplex, sphere)

seeds = st.integers(0, 2**32 - 1)
FIBERS = [STANDARD[k]() for k in ("zero", "abelian1", "affine2", "so3")]
TRIANGLE = Simplex([0, 1, 2])


def constant_form(a, c=1):
    return PiecewiseForm(a, 0, {s: PolyForm.constant(s, c) for s in a.base.simplices})


def test_compatibility_examples():
    a = AlgebroidComplex(full_simplex(1), abelian(0))
    assert validate_compatibility(constant_form(a, 4))
    parts = {Simplex([0]): PolyForm.constant(Simplex([0]), 1),
             Simplex([1]): PolyForm.constant(Simplex([1]), 2),
             Simplex([0, 1]): PolyForm.constant(Simplex([0, 1]), 5)}
    bad = PiecewiseForm(a, 0, parts)
    assert not validate_compatibility(bad)
    with pytest.raises(CompatibilityError):
        require_compatible(bad)


def test_form_needs_every_simplex():
    a = AlgebroidComplex(full_simplex(1), abelian(0))
    with pytest.raises(FormError):
        PiecewiseForm(a, 0, {Simplex([0]): PolyForm.constant(Simplex([0]))})


def test_global_differential_examples():
    a = AlgebroidComplex(sphere(1), abelian(1))
    assert global_differential(constant_form(a)).is_zero()
    theta = PiecewiseForm(a, 1, {s: PolyForm.theta(s, [0]) for s in a.base.simplices})
    assert validate_compatibility(theta)
    assert global_differential(theta).is_zero()


@given(seeds)
def test_global_differential_square_zero_and_compatible(seed):
    rng = random.Random(seed)
    g = rng.choice(FIBERS)
    a = AlgebroidComplex(rng.choice([sphere(2), full_simplex(2), closure([[0, 1], [1, 2, 3]])]), g)
    w = random_compatible(rng, a, rng.randint(0, 2), 2)
    dw = global_differential(w)
    assert validate_compatibility(dw)
    assert global_differential(dw).is_zero()


def test_restrict_to_subcomplex_examples():
    a = AlgebroidComplex(sphere(2), so3())
    w = random_compatible(random.Random(0), a, 1, 1)
    assert restrict_to_subcomplex(w, a.base) == w
    empty = restrict_to_subcomplex(w, SimplicialComplex())
    assert empty.parts == {}
    mid = closure([[0, 1, 2], [0, 3]])
    low = closure([[0, 1]])
    assert restrict_to_subcomplex(restrict_to_subcomplex(w, mid), low) == restrict_to_subcomplex(w, low)
    with pytest.raises(FormError):
        restrict_to_subcomplex(w, closure([[0, 5]]))


# -- extension over a boundary ---------------------------------------------------------

def test_extend_zero_is_zero():
    a = AlgebroidComplex(boundary_complex(TRIANGLE), so3())
    ext = extend_over_boundary(PiecewiseForm.zero(a, 2), TRIANGLE)
    assert ext.is_zero()


def test_extend_edge_endpoint_values():
    e = Simplex([0, 1])
    a = AlgebroidComplex(boundary_complex(e), abelian(0))
    xi = PiecewiseForm(a, 0, {Simplex([0]): PolyForm.constant(Simplex([0]), 0),
                              Simplex([1]): PolyForm.constant(Simplex([1]), 1)})
    w = extend_over_boundary(xi, e).parts[e]
    assert evaluate(w, [1, 0]) == 0
    assert evaluate(w, [0, 1]) == 1


def test_extend_rejects_incompatible_input():
    a = AlgebroidComplex(boundary_complex(TRIANGLE), abelian(0))
    parts = {s: PolyForm.zero(s, 0) for s in a.base.simplices}
    parts[Simplex([0, 1])] = PolyForm.coordinate(Simplex([0, 1]), 1)
    with pytest.raises(CompatibilityError):
        extend_over_boundary(PiecewiseForm(a, 0, parts), TRIANGLE)


@given(seeds, st.sampled_from([None, "reversed"]))
def test_extend_over_boundary_round_trip(seed, order):
    rng = random.Random(seed)
    g = rng.choice(FIBERS)
    d = Simplex(range(rng.randint(1, 3) + 1))
    a = AlgebroidComplex(boundary_complex(d), g)
    xi = random_compatible(rng, a, rng.randint(0, 2), 2)
    ext = extend_over_boundary(xi, d, order=order)
    assert validate_compatibility(ext)
    assert restrict_to_subcomplex(ext, a.base) == xi


@given(seeds)
def test_facet_sweep_residual_vanishes_cumulatively(seed):
    rng = random.Random(seed)
    g = rng.choice(FIBERS)
    d = Simplex(range(rng.randint(1, 3) + 1))
    xi = random_compatible(rng, AlgebroidComplex(boundary_complex(d), g), rng.randint(0, 2), 2)
    order = list(range(len(d)))
    rng.shuffle(order)
    steps = facet_sweep(xi.parts, d, order)
    done = []
    for step in steps:
        done.append(step.facet)
        for f in done:
            for face in f.faces():
                assert not step.residual[face].terms
    assert all(not w.terms for w in steps[-1].residual.values())


def test_trianglular_round_trip_of_global_form():
    rng = random.Random(11)
    w = random_polyform(rng, TRIANGLE, 1, 3)
    a = AlgebroidComplex(boundary_complex(TRIANGLE), so3())
    xi = PiecewiseForm(a, 1, {s: restrict_to_face(w, s) for s in a.base.simplices})
    assert restrict_to_subcomplex(extend_over_boundary(xi, TRIANGLE), a.base) == xi


# -- partial boundaries and subcomplexes ---------------------------------------------------

def test_partial_boundary_examples():
    g = abelian(1)
    assert extend_partial_boundary({}, TRIANGLE, g, degree=1).is_zero()
    rng = random.Random(2)
    w = random_polyform(rng, TRIANGLE, 1, 1)
    facets = {f: restrict_to_face(w, f) for f in TRIANGLE.facets()}
    full = extend_partial_boundary(facets, TRIANGLE, g)
    for f, part in facets.items():
        assert full.parts[f] == part
    edge = Simplex([1, 2])
    one = extend_partial_boundary({edge: facets[edge]}, TRIANGLE, g)
    assert one.parts[edge] == facets[edge]
    assert validate_compatibility(one)


def test_partial_boundary_names_disagreeing_pair():
    a, b = Simplex([0, 1]), Simplex([1, 2])
    forms = {a: PolyForm.coordinate(a, 1), b: PolyForm.zero(b, 0)}
    with pytest.raises(CompatibilityError, match=r"\[0, 1\] and \[1, 2\]"):
        extend_partial_boundary(forms, TRIANGLE, abelian(0))


def test_extend_from_subcomplex_examples():
    k = sphere(1)
    a = AlgebroidComplex(k, abelian(0))
    w = random_compatible(random.Random(4), a, 0, 2)
    assert extend_from_subcomplex(w, k) == w
    empty = PiecewiseForm(AlgebroidComplex(SimplicialComplex(), abelian(0)), 0, {})
    assert extend_from_subcomplex(empty, k).is_zero()
    l = closure([[0], [2]])
    pts = PiecewiseForm(AlgebroidComplex(l, abelian(0)), 0,
                        {Simplex([0]): PolyForm.constant(Simplex([0]), 1),
                         Simplex([2]): PolyForm.constant(Simplex([2]), -1)})
    ext = extend_from_subcomplex(pts, k)
    assert validate_compatibility(ext)
    assert evaluate(ext.parts[Simplex([0])], [1]) == 1
    assert evaluate(ext.parts[Simplex([2])], [1]) == -1


@given(seeds)
def test_extend_from_random_subcomplex(seed):
    rng = random.Random(seed)
    g = rng.choice(FIBERS)
    k = rng.choice([sphere(2), full_simplex(3), closure([[0, 1, 2], [2, 3], [3, 4, 5]])])
    l = random_subcomplex(rng, k)
    a = AlgebroidComplex(l, g)
    x = random_compatible(rng, a, rng.randint(0, 2), 2)
    y = random_compatible(rng, a, x.degree, 2)
    ex, ey = extend_from_subcomplex(x, k), extend_from_subcomplex(y, k)
    assert validate_compatibility(ex)
    assert restrict_to_subcomplex(ex, l) == x
    assert restrict_to_subcomplex(ex + ey, l) == x + y


def test_json_round_trip():
    a = AlgebroidComplex(sphere(2), so3())
    w = random_compatible(random.Random(9), a, 2, 2)
    assert form_from_json(form_to_json(w), a) == w
    sparse = {"degree": 0, "parts": [{"simplex": [0], "form": "2"}]}
    v = form_from_json(sparse, AlgebroidComplex(closure([[0], [1]]), abelian(0)))
    assert v.parts[Simplex([1])].terms == {}
    with pytest.raises(FormError):
        form_from_json({"degree": 0, "parts": [{"simplex": [7], "form": "1"}]}, a)
