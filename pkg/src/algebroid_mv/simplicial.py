"""Finite abstract simplicial complexes."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator


class Simplex(tuple):
    """Strictly increasing tuple of non-negative vertex ids."""

    def __new__(cls, vertices: Iterable[int] = ()):
        vs = tuple(int(v) for v in vertices)
        if not vs:
            raise ValueError("a simplex needs at least one vertex")
        if vs[0] < 0 or any(a >= b for a, b in zip(vs, vs[1:])):
            raise ValueError(f"vertices must be strictly increasing and non-negative: {vs}")
        return super().__new__(cls, vs)

    @property
    def dim(self) -> int:
        return len(self) - 1

    def faces(self, proper: bool = False) -> Iterator["Simplex"]:
        top = len(self) - 1 if proper else len(self)
        for r in range(1, top + 1):
            for c in combinations(self, r):
                yield Simplex(c)

    def facets(self) -> list["Simplex"]:
        """Codimension-one faces, ordered by the position of the omitted vertex."""
        if self.dim == 0:
            return []
        return [Simplex(self[:j] + self[j + 1:]) for j in range(len(self))]

    def is_face_of(self, other: "Simplex") -> bool:
        return set(self) <= set(other)

    def positions_in(self, other: "Simplex") -> tuple[int, ...]:
        """Indices of this simplex's vertices inside ``other``."""
        idx = {v: i for i, v in enumerate(other)}
        try:
            return tuple(idx[v] for v in self)
        except KeyError:
            raise ValueError(f"{tuple(self)} is not a face of {tuple(other)}") from None

    def join(self, vertex: int) -> "Simplex":
        return Simplex(sorted(set(self) | {vertex}))

    def __repr__(self) -> str:
        return f"Simplex({list(self)})"


def _key(s: Simplex) -> tuple:
    return (len(s), tuple(s))


@dataclass(frozen=True)
class SimplicialComplex:
    simplices: frozenset[Simplex] = frozenset()

    def __post_init__(self) -> None:
        for s in self.simplices:
            if not isinstance(s, Simplex):
                raise TypeError(f"not a Simplex: {s!r}")
            for f in s.faces(proper=True):
                if f not in self.simplices:
                    raise ValueError(f"not closed under faces: {f} missing (face of {s})")

    def __contains__(self, s) -> bool:
        return Simplex(s) in self.simplices if not isinstance(s, Simplex) else s in self.simplices

    def __iter__(self) -> Iterator[Simplex]:
        return iter(self.sorted())

    def __len__(self) -> int:
        return len(self.simplices)

    def sorted(self) -> list[Simplex]:
        """Simplices ordered by dimension, then lexicographically."""
        return sorted(self.simplices, key=_key)

    @property
    def dim(self) -> int:
        return max((s.dim for s in self.simplices), default=-1)

    @property
    def vertices(self) -> list[int]:
        return sorted(s[0] for s in self.simplices if s.dim == 0)

    def of_dim(self, d: int) -> list[Simplex]:
        return sorted((s for s in self.simplices if s.dim == d), key=_key)

    def maximal(self) -> list[Simplex]:
        cofaces = set()
        for s in self.simplices:
            cofaces.update(s.faces(proper=True))
        return sorted(self.simplices - cofaces, key=_key)

    def union(self, other: "SimplicialComplex") -> "SimplicialComplex":
        return SimplicialComplex(self.simplices | other.simplices)

    def intersection(self, other: "SimplicialComplex") -> "SimplicialComplex":
        return SimplicialComplex(self.simplices & other.simplices)

    def __repr__(self) -> str:
        return f"SimplicialComplex(maximal={[list(s) for s in self.maximal()]})"


def closure(generators: Iterable[Iterable[int]]) -> SimplicialComplex:
    out: set[Simplex] = set()
    for g in generators:
        s = g if isinstance(g, Simplex) else Simplex(sorted(g))
        out.update(s.faces())
    return SimplicialComplex(frozenset(out))


def boundary_complex(d: Simplex) -> SimplicialComplex:
    """All proper faces of ``d``; empty for a vertex."""
    return SimplicialComplex(frozenset(Simplex(d).faces(proper=True)))


def is_subcomplex(l: SimplicialComplex, k: SimplicialComplex) -> bool:
    return l.simplices <= k.simplices


def skeleton(k: SimplicialComplex, d: int) -> SimplicialComplex:
    if d < 0:
        raise ValueError("skeleton dimension must be >= 0")
    return SimplicialComplex(frozenset(s for s in k.simplices if s.dim <= d))


@dataclass(frozen=True)
class CoverDecomposition:
    k0: SimplicialComplex
    k1: SimplicialComplex
    union: SimplicialComplex
    intersection: SimplicialComplex


def cover(k0: SimplicialComplex, k1: SimplicialComplex) -> CoverDecomposition:
    return CoverDecomposition(k0, k1, k0.union(k1), k0.intersection(k1))


# A few standard bases used throughout the tests and scripts.

def point() -> SimplicialComplex:
    return closure([[0]])


def full_simplex(k: int) -> SimplicialComplex:
    return closure([range(k + 1)])


def sphere(k: int) -> SimplicialComplex:
    """Boundary of the (k+1)-simplex, a triangulated k-sphere."""
    return boundary_complex(Simplex(range(k + 2)))
