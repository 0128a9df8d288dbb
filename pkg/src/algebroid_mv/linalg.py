"""Exact rational linear algebra.

Matrices are stored as sparse row dictionaries of :class:`~fractions.Fraction`
but behave as dense ``rows x cols`` arrays.  Elimination is fraction free:
rows are scaled to integers, reduced by cross multiplication and divided by
their content after every step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

SparseVec = dict[int, Fraction]


@dataclass(frozen=True, eq=False)
class RationalMatrix:
    rows: int
    cols: int
    data: dict[int, SparseVec] = field(default_factory=dict)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        data: dict[int, SparseVec] = {}
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise ValueError(f"row {i} has {len(row)} entries, expected {cols}")
            nz = {j: Fraction(x) for j, x in enumerate(row) if x != 0}
            if nz:
                data[i] = nz
        return cls(len(rows), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[SparseVec], rows: int) -> "RationalMatrix":
        data: dict[int, SparseVec] = {}
        for j, col in enumerate(columns):
            for i, x in col.items():
                if x:
                    data.setdefault(i, {})[j] = Fraction(x)
        return cls(rows, len(columns), data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, {i: {i: Fraction(1)} for i in range(n)})

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.data.get(i, {}).get(j, Fraction(0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.data == other.data

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out: dict[int, SparseVec] = {}
        for i, row in self.data.items():
            acc: SparseVec = {}
            for k, a in row.items():
                for j, b in other.data.get(k, {}).items():
                    acc[j] = acc.get(j, 0) + a * b
            acc = {j: x for j, x in acc.items() if x}
            if acc:
                out[i] = acc
        return RationalMatrix(self.rows, other.cols, out)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = {i: dict(r) for i, r in self.data.items()}
        for i, row in other.data.items():
            acc = out.setdefault(i, {})
            for j, x in row.items():
                v = acc.get(j, 0) + x
                if v:
                    acc[j] = v
                else:
                    acc.pop(j, None)
            if not acc:
                del out[i]
        return RationalMatrix(self.rows, self.cols, out)

    def __neg__(self) -> "RationalMatrix":
        return self.scale(-1)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + (-other)

    def scale(self, c) -> "RationalMatrix":
        c = Fraction(c)
        if c == 0:
            return RationalMatrix.zeros(self.rows, self.cols)
        return RationalMatrix(self.rows, self.cols,
                              {i: {j: c * x for j, x in r.items()} for i, r in self.data.items()})

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return not self.data

    def transpose(self) -> "RationalMatrix":
        out: dict[int, SparseVec] = {}
        for i, row in self.data.items():
            for j, x in row.items():
                out.setdefault(j, {})[i] = x
        return RationalMatrix(self.cols, self.rows, out)

    def row(self, i: int) -> SparseVec:
        return dict(self.data.get(i, {}))

    def columns(self) -> list[SparseVec]:
        cols: list[SparseVec] = [dict() for _ in range(self.cols)]
        for i, row in self.data.items():
            for j, x in row.items():
                cols[j][i] = x
        return cols

    def apply(self, vec: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for i, row in self.data.items():
            s = sum((x * vec[j] for j, x in row.items() if j in vec), Fraction(0))
            if s:
                out[i] = s
        return out

    def to_lists(self) -> list[list[Fraction]]:
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={sum(map(len, self.data.values()))})"


def dense(vec: SparseVec, n: int) -> list[Fraction]:
    return [vec.get(i, Fraction(0)) for i in range(n)]


def sparse(vec: Iterable) -> SparseVec:
    return {i: Fraction(x) for i, x in enumerate(vec) if x != 0}


# -- fraction-free incremental echelon form ----------------------------------

def _integerize(vec: SparseVec) -> dict[int, int]:
    den = 1
    for x in vec.values():
        den = lcm(den, Fraction(x).denominator)
    out = {j: int(Fraction(x) * den) for j, x in vec.items() if x}
    return _primitive(out)


def _primitive(vec: dict[int, int]) -> dict[int, int]:
    g = 0
    for x in vec.values():
        g = gcd(g, x)
        if g == 1:
            return vec
    if g > 1:
        return {j: x // g for j, x in vec.items()}
    return vec


class Echelon:
    """Incrementally built row echelon form over the integers.

    Every stored row is primitive and has a distinct leading (smallest) column.
    """

    def __init__(self) -> None:
        self.pivots: dict[int, dict[int, int]] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: dict[int, int]) -> dict[int, int]:
        vec = dict(vec)
        while vec:
            c = min(vec)
            piv = self.pivots.get(c)
            if piv is None:
                return vec
            a, p = vec[c], piv[c]
            g = gcd(a, p)
            fa, fp = p // g, a // g
            out = {j: fa * x for j, x in vec.items()}
            for j, x in piv.items():
                v = out.get(j, 0) - fp * x
                if v:
                    out[j] = v
                else:
                    out.pop(j, None)
            vec = _primitive(out)
        return vec

    def insert(self, vec: SparseVec | dict[int, int]) -> bool:
        """Add a vector; return True iff it was independent of the stored rows."""
        ivec = _integerize(vec)
        red = self.reduce(ivec)
        if not red:
            return False
        if red[min(red)] < 0:
            red = {j: -x for j, x in red.items()}
        self.pivots[min(red)] = red
        return True

    def rref(self) -> dict[int, SparseVec]:
        """Reduced rows keyed by pivot column, pivots normalized to 1."""
        rows = {c: {j: Fraction(x, r[c]) for j, x in r.items()} for c, r in self.pivots.items()}
        for c in sorted(rows, reverse=True):
            pr = rows[c]
            for c2 in rows:
                if c2 < c:
                    r2 = rows[c2]
                    a = r2.get(c)
                    if a:
                        for j, x in pr.items():
                            v = r2.get(j, 0) - a * x
                            if v:
                                r2[j] = v
                            else:
                                r2.pop(j, None)
        return rows


def rank(m: RationalMatrix) -> int:
    """Exact rank."""
    # eliminate along the shorter side
    src = m if m.rows <= m.cols else m.transpose()
    ech = Echelon()
    for row in src.data.values():
        ech.insert(row)
    return len(ech)


def nullspace_with_free(m: RationalMatrix) -> tuple[list[SparseVec], list[int]]:
    """Nullspace basis together with its free columns: vector ``i`` is 1 at
    ``free[i]`` and 0 at every other free column."""
    ech = Echelon()
    for i in sorted(m.data):
        ech.insert(m.data[i])
    rows = ech.rref()
    basis, free = [], []
    for f in range(m.cols):
        if f in rows:
            continue
        v: SparseVec = {f: Fraction(1)}
        for c, r in rows.items():
            x = r.get(f)
            if x:
                v[c] = -x
        basis.append(v)
        free.append(f)
    return basis, free


def nullspace(m: RationalMatrix) -> list[list[Fraction]]:
    """Basis of ``{v : m v = 0}``; one vector per free column, in column order."""
    return [dense(v, m.cols) for v in nullspace_with_free(m)[0]]


def nullspace_sparse(m: RationalMatrix) -> list[SparseVec]:
    return nullspace_with_free(m)[0]


class SpanSolver:
    """Exact membership and coefficients for the span of a fixed generator list."""

    def __init__(self, generators: Sequence[SparseVec]) -> None:
        self.n_gens = len(generators)
        # pivot column -> (row normalized to leading 1, combination over generators)
        self._rows: dict[int, tuple[SparseVec, SparseVec]] = {}
        for i, g in enumerate(generators):
            vec, combo = self._reduce({j: Fraction(x) for j, x in g.items() if x}, {i: Fraction(1)})
            if vec:
                c = min(vec)
                a = vec[c]
                self._rows[c] = ({j: x / a for j, x in vec.items()},
                                 {j: x / a for j, x in combo.items()})

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce(self, vec: SparseVec, combo: SparseVec) -> tuple[SparseVec, SparseVec]:
        while vec:
            c = min(vec)
            hit = self._rows.get(c)
            if hit is None:
                # leading column without a pivot: vec is outside the span
                return vec, combo
            row, rc = hit
            a = vec[c]
            for j, x in row.items():
                v = vec.get(j, 0) - a * x
                if v:
                    vec[j] = v
                else:
                    vec.pop(j, None)
            for j, x in rc.items():
                v = combo.get(j, 0) - a * x
                if v:
                    combo[j] = v
                else:
                    combo.pop(j, None)
        return vec, combo

    def solve(self, target: SparseVec) -> SparseVec | None:
        vec, combo = self._reduce({j: Fraction(x) for j, x in target.items() if x}, {})
        if vec:
            return None
        return {j: -x for j, x in combo.items() if x}


def solve_in_span(target: Sequence, generators: Sequence[Sequence]) -> list[Fraction] | None:
    """Coefficients ``c`` with ``sum(c_i * g_i) == target``, or None if not in the span."""
    solver = SpanSolver([sparse(g) for g in generators])
    sol = solver.solve(sparse(target))
    if sol is None:
        return None
    return dense(sol, len(generators))


@dataclass
class QuotientBasis:
    """Cocycles modulo coboundaries, with class coordinates for cocycles."""

    ambient_dim: int
    cocycles: list[SparseVec]
    coboundaries: list[SparseVec]
    representatives: list[SparseVec]

    def __post_init__(self) -> None:
        self._bnd = Echelon()
        for b in self.coboundaries:
            self._bnd.insert(b)
        self._solver = _ClassSolver(self._bnd, self.representatives)

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def class_coordinates(self, z: SparseVec) -> SparseVec | None:
        """Coefficients of ``z`` on the representatives, or None if ``z`` is not
        in cocycle span (reps + coboundaries)."""
        return self._solver.solve(z)

    def is_coboundary(self, z: SparseVec) -> bool:
        return not self._bnd.reduce(_integerize(z)) if z else True


class _ClassSolver:
    def __init__(self, bnd: Echelon, reps: Sequence[SparseVec]) -> None:
        self.bnd = bnd
        self.rows: dict[int, tuple[dict[int, int], SparseVec]] = {}
        for i, r in enumerate(reps):
            vec, den = self._scaled(r)
            vec, combo, scale = self._reduce(vec, {}, Fraction(1, den))
            if not vec:
                raise ValueError("representatives are dependent modulo coboundaries")
            # rep_i = scale*vec + combo.reps (mod coboundaries)
            pc = {j: -x / scale for j, x in combo.items()}
            pc[i] = pc.get(i, 0) + 1 / scale
            self.rows[min(vec)] = (vec, pc)

    @staticmethod
    def _scaled(z: SparseVec) -> tuple[dict[int, int], int]:
        den = 1
        for x in z.values():
            den = lcm(den, Fraction(x).denominator)
        return {j: int(Fraction(x) * den) for j, x in z.items() if x}, den

    def _reduce(self, vec: dict[int, int], combo: SparseVec, scale: Fraction):
        # invariant: original = scale * vec + sum(combo_i * rep_i) + (coboundary)
        def elim(c, piv):
            nonlocal vec, scale
            a, p = vec[c], piv[c]
            g = gcd(a, p)
            fa, fp = p // g, a // g
            out = {j: fa * x for j, x in vec.items()}
            for j, x in piv.items():
                v = out.get(j, 0) - fp * x
                if v:
                    out[j] = v
                else:
                    out.pop(j, None)
            # scale*vec = scale/fa * (fa*vec) = scale/fa * (out + fp*piv)
            scale = scale / fa
            return out, scale * fp

        while vec:
            c = min(vec)
            if c in self.bnd.pivots:
                vec, _ = elim(c, self.bnd.pivots[c])
            elif c in self.rows:
                piv, pc = self.rows[c]
                vec, factor = elim(c, piv)
                for j, x in pc.items():
                    combo[j] = combo.get(j, 0) + factor * x
            else:
                return vec, combo, scale
            g = 0
            for x in vec.values():
                g = gcd(g, x)
            if g > 1:
                vec = {j: x // g for j, x in vec.items()}
                scale *= g
        return vec, combo, scale

    def solve(self, z: SparseVec) -> SparseVec | None:
        if not z:
            return {}
        vec, den = self._scaled(z)
        vec, combo, _ = self._reduce(vec, {}, Fraction(1, den))
        if vec:
            return None
        return {j: x for j, x in combo.items() if x}


def quotient_basis(cocycle_matrix: RationalMatrix, coboundary_matrix: RationalMatrix) -> QuotientBasis:
    """Representatives of ``span(cocycle columns) / span(coboundary columns)``.

    Columns of both matrices are vectors of the same ambient space.  The
    representatives are the first cocycle columns that are independent modulo
    the coboundaries, so the choice is deterministic.
    """
    if cocycle_matrix.rows != coboundary_matrix.rows:
        raise ValueError("ambient dimensions differ")
    zs = [c for c in cocycle_matrix.columns()]
    bs = [c for c in coboundary_matrix.columns()]
    return quotient_from_vectors(cocycle_matrix.rows, zs, bs)


def quotient_from_vectors(ambient: int, cocycles: Sequence[SparseVec],
                          coboundaries: Sequence[SparseVec]) -> QuotientBasis:
    zspan = Echelon()
    for z in cocycles:
        zspan.insert(z)
    ech = Echelon()
    bnd_basis = []
    for b in coboundaries:
        if b and zspan.reduce(_integerize(b)):
            raise ValueError("coboundary not contained in cocycle span")
        if b and ech.insert(b):
            bnd_basis.append(dict(b))
    reps = []
    for z in cocycles:
        if z and ech.insert(z):
            reps.append(dict(z))
    return QuotientBasis(ambient, [dict(z) for z in cocycles], bnd_basis, reps)
