"""Finite-dimensional Lie algebras over Q and their Chevalley-Eilenberg complex.

Basis vectors are indexed ``0..dim-1``.  The dual basis of covectors
``theta^k`` generates the exterior algebra, whose basis is the sorted index
tuples in lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Mapping

from .linalg import RationalMatrix, rank


class InvalidLieAlgebra(ValueError):
    pass


@dataclass(frozen=True)
class LieAlgebra:
    dim: int
    # (i, j, k) with i < j  ->  c_ij^k, meaning [e_i, e_j] = sum_k c_ij^k e_k
    structure: Mapping[tuple[int, int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for (i, j, k), c in dict(self.structure).items():
            if not (0 <= i < self.dim and 0 <= j < self.dim and 0 <= k < self.dim):
                raise InvalidLieAlgebra(f"structure index out of range: {(i, j, k)}")
            if i == j:
                if c:
                    raise InvalidLieAlgebra("[e_i, e_i] must vanish")
                continue
            c = Fraction(c)
            if i > j:
                i, j, c = j, i, -c
            if c:
                clean[(i, j, k)] = clean.get((i, j, k), 0) + c
        object.__setattr__(self, "structure", {key: v for key, v in sorted(clean.items()) if v})

    def __hash__(self) -> int:
        return hash((self.dim, tuple(self.structure.items())))

    def c(self, i: int, j: int, k: int) -> Fraction:
        if i == j:
            return Fraction(0)
        if i < j:
            return self.structure.get((i, j, k), Fraction(0))
        return -self.structure.get((j, i, k), Fraction(0))

    def bracket(self, x, y) -> list[Fraction]:
        out = [Fraction(0)] * self.dim
        for (i, j, k), c in self.structure.items():
            out[k] += c * (x[i] * y[j] - x[j] * y[i])
        return out

    def jacobi_violations(self) -> list[tuple[int, int, int]]:
        n = self.dim
        bad = []
        basis = [[Fraction(int(a == b)) for a in range(n)] for b in range(n)]
        for i, j, l in combinations(range(n), 3):
            x, y, z = basis[i], basis[j], basis[l]
            t1 = self.bracket(x, self.bracket(y, z))
            t2 = self.bracket(y, self.bracket(z, x))
            t3 = self.bracket(z, self.bracket(x, y))
            if any(a + b + c for a, b, c in zip(t1, t2, t3)):
                bad.append((i, j, l))
        return bad

    @cached_property
    def covector_differentials(self) -> tuple[dict[tuple[int, int], Fraction], ...]:
        """``d theta^k = -sum_{i<j} c_ij^k theta^i theta^j`` for each k."""
        out: list[dict[tuple[int, int], Fraction]] = [dict() for _ in range(self.dim)]
        for (i, j, k), c in self.structure.items():
            out[k][(i, j)] = out[k].get((i, j), 0) - c
        return tuple(out)


def validate(g: LieAlgebra) -> bool:
    return not g.jacobi_violations()


def require_valid(g: LieAlgebra) -> LieAlgebra:
    bad = g.jacobi_violations()
    if bad:
        raise InvalidLieAlgebra(f"Jacobi identity fails on basis triples {bad[:5]}")
    return g


def exterior_basis(n: int, j: int) -> list[tuple[int, ...]]:
    if j < 0 or j > n:
        return []
    return list(combinations(range(n), j))


def sort_sign(seq: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation, 0 on repeated entries."""
    if len(set(seq)) != len(seq):
        return 0, ()
    arr = list(seq)
    sign = 1
    for a in range(len(arr)):
        for b in range(len(arr) - 1 - a):
            if arr[b] > arr[b + 1]:
                arr[b], arr[b + 1] = arr[b + 1], arr[b]
                sign = -sign
    return sign, tuple(arr)


def ce_differential_monomial(g: LieAlgebra, J: tuple[int, ...]) -> dict[tuple[int, ...], Fraction]:
    """``d_CE`` of ``theta_J`` as a combination of sorted monomials (Leibniz rule)."""
    out: dict[tuple[int, ...], Fraction] = {}
    dth = g.covector_differentials
    for s, k in enumerate(J):
        pre, post = J[:s], J[s + 1:]
        for (i, j), c in dth[k].items():
            sign, key = sort_sign(pre + (i, j) + post)
            if sign:
                # moving d past s covectors of degree 1
                v = out.get(key, 0) + (-1) ** s * sign * c
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
    return out


def ce_differential_matrix(g: LieAlgebra, j: int) -> RationalMatrix:
    """Matrix of ``d_CE : Lambda^j -> Lambda^(j+1)`` in the sorted-multi-index bases."""
    src = exterior_basis(g.dim, j)
    dst = exterior_basis(g.dim, j + 1)
    index = {J: r for r, J in enumerate(dst)}
    data: dict[int, dict[int, Fraction]] = {}
    for col, J in enumerate(src):
        for key, c in ce_differential_monomial(g, J).items():
            data.setdefault(index[key], {})[col] = c
    return RationalMatrix(len(dst), len(src), data)


def ce_betti(g: LieAlgebra) -> tuple[int, ...]:
    require_valid(g)
    n = g.dim
    ranks = [rank(ce_differential_matrix(g, j)) for j in range(n + 1)]
    return tuple(comb(n, j) - ranks[j] - (ranks[j - 1] if j else 0) for j in range(n + 1))


# -- standard examples --------------------------------------------------------

def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(n, {})


def affine2() -> LieAlgebra:
    """Two-dimensional non-abelian algebra, [e_1, e_2] = e_2."""
    return LieAlgebra(2, {(0, 1, 1): Fraction(1)})


def so3() -> LieAlgebra:
    """[e_i, e_j] = eps_ijk e_k."""
    return LieAlgebra(3, {(0, 1, 2): Fraction(1), (1, 2, 0): Fraction(1), (0, 2, 1): Fraction(-1)})


STANDARD = {
    "zero": lambda: abelian(0),
    "abelian1": lambda: abelian(1),
    "abelian2": lambda: abelian(2),
    "affine2": affine2,
    "so3": so3,
}
