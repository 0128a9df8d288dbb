"""Independent reference: simplicial cochains tensored with the CE complex.

The CE differential here is computed from the Koszul formula on alternating
multilinear functions, not from the covector rule used by the form engine.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .lie_algebra import LieAlgebra, require_valid
from .linalg import RationalMatrix, rank
from .simplicial import SimplicialComplex


def simplicial_coboundary(k: SimplicialComplex, p: int) -> RationalMatrix:
    """``delta: C^p -> C^{p+1}`` in the bases of sorted p- and (p+1)-simplices."""
    src, dst = k.of_dim(p), k.of_dim(p + 1)
    index = {s: i for i, s in enumerate(src)}
    data: dict[int, dict[int, Fraction]] = {}
    for row, s in enumerate(dst):
        for i, f in enumerate(s.facets()):
            data.setdefault(row, {})[index[f]] = Fraction((-1) ** i)
    return RationalMatrix(len(dst), len(src), data)


def _alt_value(w: dict[tuple[int, ...], Fraction], args: list[int]) -> Fraction:
    if len(set(args)) != len(args):
        return Fraction(0)
    order = sorted(range(len(args)), key=lambda i: args[i])
    sign = 1
    seen = [False] * len(args)
    for i in range(len(args)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign * w.get(tuple(sorted(args)), Fraction(0))


def koszul_ce_matrix(g: LieAlgebra, j: int) -> RationalMatrix:
    """(d w)(x_0..x_j) = sum_{a<b} (-1)^{a+b} w([x_a, x_b], x_0, ..., x_j without a, b)."""
    n = g.dim
    src = list(combinations(range(n), j))
    dst = list(combinations(range(n), j + 1))
    data: dict[int, dict[int, Fraction]] = {}
    for col, J in enumerate(src):
        w = {J: Fraction(1)}
        for row, T in enumerate(dst):
            val = Fraction(0)
            for a, b in combinations(range(j + 1), 2):
                rest = [T[c] for c in range(j + 1) if c not in (a, b)]
                for m in range(n):
                    c = g.c(T[a], T[b], m)
                    if c:
                        val += (-1) ** (a + b) * c * _alt_value(w, [m] + rest)
            if val:
                data.setdefault(row, {})[col] = val
    return RationalMatrix(len(dst), len(src), data)


class DoubleComplex:
    """Total complex of ``C^a(K) (x) Lambda^b g*`` with ``D = delta (x) 1 + (-1)^a 1 (x) d_CE``."""

    def __init__(self, k: SimplicialComplex, g: LieAlgebra) -> None:
        require_valid(g)
        self.k, self.g = k, g
        self.kdim = k.dim
        self.n = g.dim
        self.max_degree = max(self.kdim, -1) + self.n
        self._delta = {a: simplicial_coboundary(k, a) for a in range(self.kdim + 1)}
        self._ce = {b: koszul_ce_matrix(g, b) for b in range(self.n + 1)}

    def labels(self, p: int) -> list[tuple[int, int, int]]:
        """(a, simplex index, multi-index index) with a + b = p."""
        out = []
        for a in range(self.kdim + 1):
            b = p - a
            if 0 <= b <= self.n:
                nb = len(list(combinations(range(self.n), b)))
                out.extend((a, s, J) for s in range(len(self.k.of_dim(a))) for J in range(nb))
        return out

    def dim(self, p: int) -> int:
        return len(self.labels(p))

    def d(self, p: int) -> RationalMatrix:
        src = self.labels(p)
        dst = {lab: i for i, lab in enumerate(self.labels(p + 1))}
        data: dict[int, dict[int, Fraction]] = {}
        for col, (a, s, J) in enumerate(src):
            if a + 1 <= self.kdim:
                for r, row in self._delta[a].data.items():
                    x = row.get(s)
                    if x:
                        data.setdefault(dst[(a + 1, r, J)], {})[col] = x
            b = p - a
            if b + 1 <= self.n:
                for r, row in self._ce[b].data.items():
                    x = row.get(J)
                    if x:
                        key = dst[(a, s, r)]
                        data.setdefault(key, {})[col] = data.get(key, {}).get(col, 0) + (-1) ** a * x
        return RationalMatrix(self.dim(p + 1), self.dim(p), data)

    def betti(self) -> tuple[int, ...]:
        ranks = {p: rank(self.d(p)) for p in range(self.max_degree + 1)}
        ranks[-1] = 0
        return tuple(self.dim(p) - ranks[p] - ranks[p - 1] for p in range(self.max_degree + 1))


def oracle_betti(k: SimplicialComplex, g: LieAlgebra) -> tuple[int, ...]:
    return DoubleComplex(k, g).betti()
