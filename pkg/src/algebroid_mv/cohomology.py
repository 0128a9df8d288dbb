"""Truncated complexes of piecewise polynomial forms and their cohomology.

The truncation ``N`` bounds the weight of every term (coefficient degree plus
number of base differentials), which the differential preserves.  The
compatibility conditions never mix fiber covectors, so the space of
compatible forms is assembled once for the base (``DeRhamSpace``) and
tensored with the exterior algebra of the fiber dual.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Sequence

from .lie_algebra import ce_differential_monomial, exterior_basis
from .linalg import (QuotientBasis, RationalMatrix, SparseVec, nullspace_sparse,
                     nullspace_with_free, quotient_from_vectors, rank)
from .piecewise import AlgebroidComplex, PiecewiseForm
from .polyform import PolyForm, _base_d, restrict_base_monomial
from .simplicial import Simplex, SimplicialComplex

BaseCoord = tuple[Simplex, tuple[int, ...], tuple[int, ...]]


class NotStabilizedError(RuntimeError):
    def __init__(self, message: str, history: Sequence[tuple[int, tuple[int, ...]]] = ()):
        super().__init__(message)
        self.history = list(history)


def monomials(k: int, max_degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of length ``k`` with total degree <= max_degree,
    ordered by degree then lexicographically."""
    if max_degree < 0:
        return []
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], left: int, slots: int):
        if slots == 0:
            out.append(prefix)
            return
        for e in range(left, -1, -1):
            rec(prefix + (e,), left - e, slots - 1)

    for deg in range(max_degree + 1):
        start = len(out)
        rec((), deg, k)
        out[start:] = sorted(o for o in out[start:] if sum(o) == deg)
    return out


def local_keys(s: Simplex, r: int, n: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Basis of weight <= n base r-forms on one simplex."""
    k = s.dim
    if r > k:
        return []
    return [(m, I) for I in combinations(range(1, k + 1), r) for m in monomials(k, n - r)]


class DeRhamSpace:
    """Compatible piecewise base r-forms of weight <= N, with a coordinate-reading basis.

    Each basis vector has value 1 at its pivot coordinate and 0 at the pivot
    coordinates of all other basis vectors, so the coordinates of any member
    of the space are its values at the pivots.
    """

    def __init__(self, base: SimplicialComplex, r: int, n: int) -> None:
        self.base, self.r, self.n = base, r, n
        keys: list[BaseCoord] = []
        for s in sorted(base.simplices, key=lambda s: (-len(s), tuple(s))):
            keys.extend((s, m, I) for m, I in local_keys(s, r, n))
        self.keys = keys
        self.index = {key: i for i, key in enumerate(keys)}

        rows: dict[tuple, SparseVec] = {}
        for s in base.simplices:
            if s.dim == 0:
                continue
            for f in s.facets():
                for m, I in local_keys(s, r, n):
                    col = self.index[(s, m, I)]
                    for (m2, I2), c in restrict_base_monomial(tuple(s), tuple(f), m, I):
                        rows.setdefault((s, f, m2, I2), {})[col] = c
                for m2, I2 in local_keys(f, r, n):
                    row = rows.setdefault((s, f, m2, I2), {})
                    col = self.index[(f, m2, I2)]
                    row[col] = row.get(col, 0) - 1
        data = {i: {c: v for c, v in row.items() if v} for i, row in enumerate(rows.values())}
        constraints = RationalMatrix(len(rows), len(keys), {i: r_ for i, r_ in data.items() if r_})
        self.basis, self.pivot = nullspace_with_free(constraints)

    def __len__(self) -> int:
        return len(self.basis)

    def value(self, i: int, key: BaseCoord) -> Fraction:
        j = self.index.get(key)
        return self.basis[i].get(j, Fraction(0)) if j is not None else Fraction(0)

    def pivot_key(self, i: int) -> BaseCoord:
        return self.keys[self.pivot[i]]


class CochainComplex:
    """Finite cochain complex given by its differentials; cohomology is cached."""

    max_degree: int = 0

    def dim(self, p: int) -> int:
        raise NotImplementedError

    def d(self, p: int) -> RationalMatrix:
        raise NotImplementedError

    def _d(self, p: int) -> RationalMatrix:
        if p < 0 or p >= self.max_degree:
            return RationalMatrix.zeros(self.dim(p + 1), self.dim(p))
        return self.d(p)

    @cached_property
    def _cohomology(self) -> dict[int, QuotientBasis]:
        return {}

    def H(self, p: int) -> QuotientBasis:
        if p not in self._cohomology:
            dp = self._d(p)
            z = nullspace_sparse(dp) if self.dim(p) else []
            b = self._d(p - 1).columns() if self.dim(p) else []
            self._cohomology[p] = quotient_from_vectors(self.dim(p), z, [c for c in b if c])
        return self._cohomology[p]

    def betti(self) -> tuple[int, ...]:
        out = []
        ranks = {p: rank(self._d(p)) for p in range(-1, self.max_degree + 1)}
        for p in range(self.max_degree + 1):
            out.append(self.dim(p) - ranks[p] - ranks[p - 1])
        return tuple(out)

    def check_d_squared(self) -> None:
        for p in range(self.max_degree - 1):
            if not (self._d(p + 1) @ self._d(p)).is_zero():
                raise AssertionError(f"d^{p + 1} d^{p} != 0")


class TruncatedComplex(CochainComplex):
    def __init__(self, a: AlgebroidComplex, n: int, check: bool = True) -> None:
        self.complex, self.n, self.check = a, n, check
        self.fiber_dim = a.fiber.dim
        kdim = a.base.dim
        self.base_dim = kdim
        self.max_degree = max(kdim, -1) + self.fiber_dim
        self.spaces = [DeRhamSpace(a.base, r, n) for r in range(max(kdim, -1) + 1)]
        self._bases: dict[int, list[tuple[int, int, tuple[int, ...]]]] = {}
        self._indices: dict[int, dict] = {}
        self._dmats: dict[int, RationalMatrix] = {}
        self._dr: dict[int, RationalMatrix] = {}

    # -- bases -------------------------------------------------------------

    def basis(self, p: int) -> list[tuple[int, int, tuple[int, ...]]]:
        """Basis labels ``(r, i, J)`` for degree ``p``: de Rham basis element i of
        degree r wedge theta_J."""
        if p not in self._bases:
            out = []
            for r, sp in enumerate(self.spaces):
                for J in exterior_basis(self.fiber_dim, p - r):
                    out.extend((r, i, J) for i in range(len(sp)))
            self._bases[p] = out
        return self._bases[p]

    def _index(self, p: int) -> dict:
        if p not in self._indices:
            self._indices[p] = {lab: i for i, lab in enumerate(self.basis(p))}
        return self._indices[p]

    def dim(self, p: int) -> int:
        if p < 0 or p > self.max_degree:
            return 0
        return len(self.basis(p))

    # -- differentials -----------------------------------------------------

    def _base_d_matrix(self, r: int) -> RationalMatrix:
        if r not in self._dr:
            src = self.spaces[r]
            if r + 1 >= len(self.spaces):
                self._dr[r] = RationalMatrix.zeros(0, len(src))
                return self._dr[r]
            dst = self.spaces[r + 1]
            pivots = {dst.pivot_key(i): i for i in range(len(dst))}
            data: dict[int, SparseVec] = {}
            for col, v in enumerate(src.basis):
                dv: dict[BaseCoord, Fraction] = {}
                for j, c in v.items():
                    s, m, I = src.keys[j]
                    for (m2, I2, _), c2 in _base_d({(m, I, ()): c}, s.dim).items():
                        key = (s, m2, I2)
                        dv[key] = dv.get(key, 0) + c2
                dv = {key: x for key, x in dv.items() if x}
                image: SparseVec = {}
                for key, x in dv.items():
                    i = pivots.get(key)
                    if i is not None:
                        data.setdefault(i, {})[col] = x
                        image[i] = x
                if self.check:
                    rebuilt: dict[BaseCoord, Fraction] = {}
                    for i, x in image.items():
                        for j, y in dst.basis[i].items():
                            kk = dst.keys[j]
                            rebuilt[kk] = rebuilt.get(kk, 0) + x * y
                    if {k_: x for k_, x in rebuilt.items() if x} != dv:
                        raise AssertionError("differential left the truncated space")
            self._dr[r] = RationalMatrix(len(dst), len(src), data)
        return self._dr[r]

    def d(self, p: int) -> RationalMatrix:
        if p not in self._dmats:
            src, dst = self.basis(p), self._index(p + 1)
            data: dict[int, SparseVec] = {}

            def put(row, col, x):
                rr = data.setdefault(row, {})
                v = rr.get(col, 0) + x
                if v:
                    rr[col] = v
                else:
                    rr.pop(col, None)

            g = self.complex.fiber
            for col, (r, i, J) in enumerate(src):
                if r + 1 < len(self.spaces):
                    bd = self._base_d_matrix(r)
                    for i2 in range(bd.rows):
                        x = bd.data.get(i2, {}).get(i)
                        if x:
                            put(dst[(r + 1, i2, J)], col, x)
                if J and g.structure:
                    sign = -1 if r % 2 else 1
                    for J2, c in ce_differential_monomial(g, J).items():
                        put(dst[(r, i, J2)], col, sign * c)
            data = {i: row for i, row in data.items() if row}
            self._dmats[p] = RationalMatrix(self.dim(p + 1), self.dim(p), data)
        return self._dmats[p]

    # -- forms <-> coordinates ---------------------------------------------

    def basis_form(self, p: int, idx: int) -> PiecewiseForm:
        return self.to_form(p, {idx: Fraction(1)})

    def to_form(self, p: int, vec: SparseVec) -> PiecewiseForm:
        parts = {s: {} for s in self.complex.base.simplices}
        labels = self.basis(p)
        for idx, x in vec.items():
            if not x:
                continue
            r, i, J = labels[idx]
            sp = self.spaces[r]
            for j, y in sp.basis[i].items():
                s, m, I = sp.keys[j]
                t = parts[s]
                key = (m, I, J)
                v = t.get(key, 0) + x * y
                if v:
                    t[key] = v
                else:
                    t.pop(key, None)
        return PiecewiseForm(self.complex, p,
                             {s: PolyForm._raw(s, p, t) for s, t in parts.items()})

    def to_vector(self, w: PiecewiseForm) -> SparseVec:
        """Coordinates of a compatible form of weight <= N."""
        if w.complex.base != self.complex.base:
            raise ValueError("form lives on a different base")
        if w.weight > self.n:
            raise ValueError(f"form has weight {w.weight} > truncation {self.n}")
        p = w.degree
        vec: SparseVec = {}
        for idx, (r, i, J) in enumerate(self.basis(p)):
            s, m, I = self.spaces[r].pivot_key(i)
            x = w.parts[s].terms.get((m, I, J))
            if x:
                vec[idx] = x
        if self.check and self.to_form(p, vec) != w:
            raise ValueError("form is not a compatible piecewise form of this truncation")
        return vec

    # -- maps between truncations ------------------------------------------

    def restriction_matrix(self, other: "TruncatedComplex", p: int) -> RationalMatrix:
        """Matrix of restriction from this complex onto ``other`` (a subcomplex
        base with truncation >= this one), in degree ``p``."""
        if not other.complex.base.simplices <= self.complex.base.simplices:
            raise ValueError("target base is not a subcomplex")
        if other.n < self.n:
            raise ValueError("restriction target must have at least the same truncation")
        blocks: dict[int, dict[int, dict[int, Fraction]]] = {}
        for r, sp in enumerate(self.spaces):
            if r >= len(other.spaces):
                continue
            osp = other.spaces[r]
            blk: dict[int, dict[int, Fraction]] = {}
            for i2 in range(len(osp)):
                key = osp.pivot_key(i2)
                j = sp.index.get(key)
                if j is None:
                    continue
                row = {i: v[j] for i, v in enumerate(sp.basis) if j in v}
                if row:
                    blk[i2] = row
            blocks[r] = blk
        src, dst = self.basis(p), other._index(p)
        data: dict[int, SparseVec] = {}
        for col, (r, i, J) in enumerate(src):
            for i2, row in blocks.get(r, {}).items():
                x = row.get(i)
                if x:
                    data.setdefault(dst[(r, i2, J)], {})[col] = x
        return RationalMatrix(other.dim(p), self.dim(p), data)


class DirectSum(CochainComplex):
    def __init__(self, first: CochainComplex, second: CochainComplex) -> None:
        self.first, self.second = first, second
        self.max_degree = max(first.max_degree, second.max_degree)

    def dim(self, p: int) -> int:
        return self.first.dim(p) + self.second.dim(p)

    def d(self, p: int) -> RationalMatrix:
        a, b = self.first._d(p), self.second._d(p)
        data = {i: dict(r) for i, r in a.data.items()}
        for i, r in b.data.items():
            data[a.rows + i] = {a.cols + j: x for j, x in r.items()}
        return RationalMatrix(a.rows + b.rows, a.cols + b.cols, data)


def stack(top: RationalMatrix, bottom: RationalMatrix) -> RationalMatrix:
    if top.cols != bottom.cols:
        raise ValueError("column mismatch")
    data = {i: dict(r) for i, r in top.data.items()}
    for i, r in bottom.data.items():
        data[top.rows + i] = dict(r)
    return RationalMatrix(top.rows + bottom.rows, top.cols, data)


def side_by_side(left: RationalMatrix, right: RationalMatrix) -> RationalMatrix:
    if left.rows != right.rows:
        raise ValueError("row mismatch")
    data = {i: dict(r) for i, r in left.data.items()}
    for i, r in right.data.items():
        row = data.setdefault(i, {})
        row.update({left.cols + j: x for j, x in r.items()})
    return RationalMatrix(left.rows, left.cols + right.cols, data)


# -- public operations ---------------------------------------------------------

def assemble(a: AlgebroidComplex, p: int, n: int) -> list[PiecewiseForm]:
    """Basis of compatible piecewise forms of degree ``p`` and weight <= ``n``."""
    t = TruncatedComplex(a, n)
    return [t.basis_form(p, i) for i in range(t.dim(p))]


def betti(a: AlgebroidComplex, n: int) -> tuple[int, ...]:
    return TruncatedComplex(a, n).betti()


@dataclass(frozen=True)
class TruncationPolicy:
    start: int = 1
    window: int = 2
    ceiling: int = 6


def stabilized_betti(a: AlgebroidComplex, start: int = 1, window: int = 2,
                     ceiling: int = 6) -> tuple[tuple[int, ...], int]:
    """Raise the truncation until ``window`` consecutive Betti sequences agree;
    return the sequence and the first truncation of the stable window.

    Truncations below ``dim K`` cannot hold top-degree base forms and may
    agree with each other while still wrong, so the search starts at
    ``max(start, dim K)``.
    """
    if window < 2:
        raise ValueError("window must be at least 2")
    history: list[tuple[int, tuple[int, ...]]] = []
    n = max(start, a.base.dim, 0)
    while n <= ceiling:
        history.append((n, betti(a, n)))
        tail = history[-window:]
        if len(tail) == window and len({b for _, b in tail}) == 1:
            return tail[0][1], tail[0][0]
        n += 1
    raise NotStabilizedError(
        f"Betti numbers did not stabilize for N in [{start}, {ceiling}]: "
        + "; ".join(f"N={k}: {b}" for k, b in history), history)


@dataclass
class InducedMap:
    source: QuotientBasis
    target: QuotientBasis
    matrix: RationalMatrix

    @property
    def rank(self) -> int:
        return rank(self.matrix)


class CochainMapError(ValueError):
    pass


def induced_map(f: dict[int, RationalMatrix], src: CochainComplex,
                dst: CochainComplex) -> dict[int, InducedMap]:
    """Maps on cohomology induced by a cochain map given per degree."""
    top = max(src.max_degree, dst.max_degree)
    for p in range(top + 1):
        fp = f.get(p, RationalMatrix.zeros(dst.dim(p), src.dim(p)))
        fq = f.get(p + 1, RationalMatrix.zeros(dst.dim(p + 1), src.dim(p + 1)))
        if fp.shape != (dst.dim(p), src.dim(p)):
            raise CochainMapError(f"degree {p} map has shape {fp.shape}")
        if not (fq @ src._d(p) - dst._d(p) @ fp).is_zero():
            raise CochainMapError(f"map does not commute with d in degree {p}")
    out = {}
    for p in range(top + 1):
        fp = f.get(p, RationalMatrix.zeros(dst.dim(p), src.dim(p)))
        hs, ht = src.H(p), dst.H(p)
        cols = []
        for z in hs.representatives:
            coords = ht.class_coordinates(fp.apply(z))
            if coords is None:
                raise CochainMapError(f"image of a cocycle is not a cocycle in degree {p}")
            cols.append(coords)
        out[p] = InducedMap(hs, ht, RationalMatrix.from_columns(cols, ht.dim))
    return out
