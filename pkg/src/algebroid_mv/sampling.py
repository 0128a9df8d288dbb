"""Seeded random inputs shared by selfcheck, tests and scripts."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .cohomology import TruncatedComplex, monomials
from .piecewise import AlgebroidComplex, PiecewiseForm
from .polyform import PolyForm
from .simplicial import Simplex, SimplicialComplex, closure


def random_fraction(rng: random.Random, size: int = 3) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, size))


def random_polyform(rng: random.Random, simplex: Simplex, degree: int, fiber_dim: int,
                    max_coeff_degree: int = 2, n_terms: int = 4) -> PolyForm:
    k = simplex.dim
    shapes = [(I, J) for r in range(min(degree, k) + 1)
              for I in combinations(range(1, k + 1), r)
              for J in combinations(range(fiber_dim), degree - r)]
    terms: dict = {}
    if shapes:
        monos = monomials(k, max_coeff_degree)
        for _ in range(n_terms):
            I, J = rng.choice(shapes)
            key = (rng.choice(monos), I, J)
            terms[key] = terms.get(key, 0) + random_fraction(rng)
    return PolyForm(simplex, degree, terms)


def random_point(rng: random.Random, k: int, size: int = 6) -> list[Fraction]:
    w = [rng.randint(0, size) for _ in range(k + 1)]
    if not any(w):
        w[rng.randrange(k + 1)] = 1
    s = sum(w)
    return [Fraction(v, s) for v in w]


def random_boundary_point(rng: random.Random, k: int, face: tuple[int, ...]) -> list[Fraction]:
    """Point of the face spanned by the given vertex positions."""
    x = random_point(rng, len(face) - 1)
    out = [Fraction(0)] * (k + 1)
    for pos, v in zip(face, x):
        out[pos] = v
    return out


def random_compatible(rng: random.Random, a: AlgebroidComplex, degree: int, n: int,
                      density: float = 0.5, truncated: TruncatedComplex | None = None) -> PiecewiseForm:
    """Random combination of the truncated basis; compatible by construction."""
    t = truncated if truncated is not None else TruncatedComplex(a, n)
    vec = {i: random_fraction(rng) for i in range(t.dim(degree)) if rng.random() < density}
    return t.to_form(degree, vec)


def random_subcomplex(rng: random.Random, k: SimplicialComplex, keep: float = 0.5) -> SimplicialComplex:
    """Closure of a random subset of the maximal simplices' faces."""
    pool = [s for s in k.sorted()]
    picked = [s for s in pool if rng.random() < keep * (1 / (1 + s.dim))]
    return closure(picked)
