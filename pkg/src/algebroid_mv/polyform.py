"""Polynomial forms on one simplex with values in the exterior algebra of a
Lie algebra dual.

On a simplex with vertices ``v_0 < ... < v_k`` the barycentric coordinate
``t_0`` is eliminated (``t_0 = 1 - t_1 - ... - t_k``), so a form is a finite sum

    c * t^e * dt_I ^ theta_J

with ``e`` an exponent vector for ``t_1..t_k``, ``I`` a sorted subset of
``1..k`` and ``J`` a sorted subset of fiber indices ``0..n-1``.  The base
differentials are always written to the left of the fiber covectors.

The *weight* of a term is ``|e| + |I|``; the differential preserves it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .lie_algebra import LieAlgebra, ce_differential_monomial, sort_sign
from .simplicial import Simplex

Mono = tuple[int, ...]
Idx = tuple[int, ...]
Key = tuple[Mono, Idx, Idx]
BaseKey = tuple[Mono, Idx]


class FormError(ValueError):
    pass


def _acc(d: dict, key, val) -> None:
    v = d.get(key, 0) + val
    if v:
        d[key] = v
    else:
        d.pop(key, None)


@dataclass(frozen=True, eq=False)
class PolyForm:
    simplex: Simplex
    degree: int
    terms: Mapping[Key, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        k = self.simplex.dim
        clean: dict[Key, Fraction] = {}
        for (mono, I, J), c in dict(self.terms).items():
            if len(mono) != k or any(e < 0 for e in mono):
                raise FormError(f"bad exponent vector {mono} on a {k}-simplex")
            if list(I) != sorted(set(I)) or any(not 1 <= a <= k for a in I):
                raise FormError(f"bad base index set {I}")
            if list(J) != sorted(set(J)) or any(j < 0 for j in J):
                raise FormError(f"bad fiber index set {J}")
            if len(I) + len(J) != self.degree:
                raise FormError(f"term {(mono, I, J)} does not have degree {self.degree}")
            c = Fraction(c)
            if c:
                clean[(tuple(mono), tuple(I), tuple(J))] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def _raw(cls, simplex: Simplex, degree: int, terms: dict[Key, Fraction]) -> "PolyForm":
        obj = object.__new__(cls)
        object.__setattr__(obj, "simplex", simplex)
        object.__setattr__(obj, "degree", degree)
        object.__setattr__(obj, "terms", {key: c for key, c in terms.items() if c})
        return obj

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, simplex: Simplex, degree: int) -> "PolyForm":
        return cls._raw(simplex, degree, {})

    @classmethod
    def constant(cls, simplex: Simplex, c=1) -> "PolyForm":
        return cls._raw(simplex, 0, {((0,) * simplex.dim, (), ()): Fraction(c)})

    @classmethod
    def theta(cls, simplex: Simplex, J: Iterable[int]) -> "PolyForm":
        J = tuple(J)
        sign, key = sort_sign(J)
        return cls._raw(simplex, len(J), {((0,) * simplex.dim, (), key): Fraction(sign)})

    @classmethod
    def coordinate(cls, simplex: Simplex, a: int) -> "PolyForm":
        """Barycentric coordinate ``t_a`` (``a = 0`` is expressed through the others)."""
        k = simplex.dim
        z = (0,) * k
        if a == 0:
            terms = {(z, (), ()): Fraction(1)}
            for b in range(1, k + 1):
                terms[(_unit(k, b), (), ())] = Fraction(-1)
            return cls._raw(simplex, 0, terms)
        return cls._raw(simplex, 0, {(_unit(k, a), (), ()): Fraction(1)})

    @classmethod
    def coordinate_differential(cls, simplex: Simplex, a: int) -> "PolyForm":
        k = simplex.dim
        z = (0,) * k
        if a == 0:
            return cls._raw(simplex, 1, {(z, (b,), ()): Fraction(-1) for b in range(1, k + 1)})
        return cls._raw(simplex, 1, {(z, (a,), ()): Fraction(1)})

    # -- algebra -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyForm):
            return NotImplemented
        return (self.simplex == other.simplex and self.degree == other.degree
                and self.terms == other.terms)

    def _check_same(self, other: "PolyForm") -> None:
        if self.simplex != other.simplex:
            raise FormError(f"simplex mismatch: {list(self.simplex)} vs {list(other.simplex)}")

    def __add__(self, other: "PolyForm") -> "PolyForm":
        self._check_same(other)
        if self.degree != other.degree:
            raise FormError("cannot add forms of different degrees")
        out = dict(self.terms)
        for key, c in other.terms.items():
            _acc(out, key, c)
        return PolyForm._raw(self.simplex, self.degree, out)

    def __neg__(self) -> "PolyForm":
        return PolyForm._raw(self.simplex, self.degree, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "PolyForm") -> "PolyForm":
        return self + (-other)

    def __mul__(self, c) -> "PolyForm":
        c = Fraction(c)
        return PolyForm._raw(self.simplex, self.degree, {k: c * x for k, x in self.terms.items()})

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def coefficient_degree(self) -> int:
        return max((sum(m) for m, _, _ in self.terms), default=0)

    @property
    def weight(self) -> int:
        return max((sum(m) + len(I) for m, I, _ in self.terms), default=0)

    @property
    def base_degree(self) -> int:
        return max((len(I) for _, I, _ in self.terms), default=0)

    @property
    def fiber_span(self) -> int:
        """Smallest fiber dimension that can carry this form."""
        return max((J[-1] + 1 for _, _, J in self.terms if J), default=0)

    def __repr__(self) -> str:
        return f"PolyForm({list(self.simplex)}, deg={self.degree}: {format_form(self)})"


def _unit(k: int, a: int) -> Mono:
    return tuple(int(b == a) for b in range(1, k + 1))


def _mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def wedge(a: PolyForm, b: PolyForm) -> PolyForm:
    a._check_same(b)
    out: dict[Key, Fraction] = {}
    for (m1, I1, J1), c1 in a.terms.items():
        for (m2, I2, J2), c2 in b.terms.items():
            s1, I = sort_sign(I1 + I2)
            if not s1:
                continue
            s2, J = sort_sign(J1 + J2)
            if not s2:
                continue
            sign = s1 * s2 * (-1 if (len(J1) * len(I2)) % 2 else 1)
            _acc(out, (_mono_mul(m1, m2), I, J), sign * c1 * c2)
    return PolyForm._raw(a.simplex, a.degree + b.degree, out)


def _base_d(terms: Mapping[Key, Fraction], k: int) -> dict[Key, Fraction]:
    out: dict[Key, Fraction] = {}
    for (m, I, J), c in terms.items():
        for a in range(1, k + 1):
            e = m[a - 1]
            if not e or a in I:
                continue
            sign, newI = sort_sign((a,) + I)
            m2 = m[: a - 1] + (e - 1,) + m[a:]
            _acc(out, (m2, newI, J), sign * e * c)
    return out


def differential(w: PolyForm, g: LieAlgebra) -> PolyForm:
    """``d(P dt_I theta_J) = dP ^ dt_I theta_J + (-1)^|I| P dt_I d_CE(theta_J)``."""
    if w.fiber_span > g.dim:
        raise FormError(f"form uses {w.fiber_span} fiber covectors but the fiber has dim {g.dim}")
    out = _base_d(w.terms, w.simplex.dim)
    if g.structure:
        for (m, I, J), c in w.terms.items():
            if not J:
                continue
            sign = -1 if len(I) % 2 else 1
            for J2, c2 in ce_differential_monomial(g, J).items():
                _acc(out, (m, I, J2), sign * c * c2)
    return PolyForm._raw(w.simplex, w.degree + 1, out)


# -- affine substitution ------------------------------------------------------

# An affine function on a target simplex of dimension m: {0: constant, b: coef of s_b}.
Affine = dict[int, Fraction]


def _affine_poly(f: Affine, m: int) -> dict[Mono, Fraction]:
    out: dict[Mono, Fraction] = {}
    for b, c in f.items():
        if c:
            out[(0,) * m if b == 0 else _unit(m, b)] = Fraction(c)
    return out


def _poly_mul(p: Mapping[Mono, Fraction], q: Mapping[Mono, Fraction]) -> dict[Mono, Fraction]:
    out: dict[Mono, Fraction] = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            _acc(out, _mono_mul(m1, m2), c1 * c2)
    return out


def _substitute_base(mono: Mono, I: Idx, images: Sequence[Affine], m: int) -> dict[BaseKey, Fraction]:
    """Pull back ``t^mono dt_I`` along ``t_a -> images[a-1]`` (affine in the target)."""
    poly: dict[Mono, Fraction] = {(0,) * m: Fraction(1)}
    for a, e in enumerate(mono):
        if e:
            base = _affine_poly(images[a], m)
            for _ in range(e):
                poly = _poly_mul(poly, base)
            if not poly:
                return {}
    # wedge of the linear parts of the differentials
    dforms: dict[Idx, Fraction] = {(): Fraction(1)}
    for a in I:
        lin = {b: c for b, c in images[a - 1].items() if b != 0 and c}
        nxt: dict[Idx, Fraction] = {}
        for idx, c in dforms.items():
            for b, cb in lin.items():
                sign, key = sort_sign(idx + (b,))
                if sign:
                    _acc(nxt, key, sign * c * cb)
        dforms = nxt
        if not dforms:
            return {}
    out: dict[BaseKey, Fraction] = {}
    for mm, c in poly.items():
        for idx, c2 in dforms.items():
            out[(mm, idx)] = c * c2
    return out


@lru_cache(maxsize=None)
def _face_images(simplex: tuple[int, ...], face: tuple[int, ...]) -> tuple[tuple[tuple[int, Fraction], ...], ...]:
    pos = Simplex(face).positions_in(Simplex(simplex))
    m = len(face) - 1
    where = {p: b for b, p in enumerate(pos)}
    images = []
    for a in range(1, len(simplex)):
        b = where.get(a)
        if b is None:
            images.append(())
        elif b >= 1:
            images.append(((b, Fraction(1)),))
        else:
            images.append(((0, Fraction(1)),) + tuple((bb, Fraction(-1)) for bb in range(1, m + 1)))
    return tuple(images)


@lru_cache(maxsize=None)
def restrict_base_monomial(simplex: tuple[int, ...], face: tuple[int, ...],
                           mono: Mono, I: Idx) -> tuple[tuple[BaseKey, Fraction], ...]:
    images = [dict(im) for im in _face_images(simplex, face)]
    return tuple(_substitute_base(mono, I, images, len(face) - 1).items())


def restrict_to_face(w: PolyForm, f: Simplex) -> PolyForm:
    """Pull ``w`` back to the face ``f`` of its simplex, in ``f``'s coordinates."""
    f = Simplex(f)
    if not f.is_face_of(w.simplex):
        raise FormError(f"{list(f)} is not a face of {list(w.simplex)}")
    if f == w.simplex:
        return w
    sv, fv = tuple(w.simplex), tuple(f)
    out: dict[Key, Fraction] = {}
    for (m, I, J), c in w.terms.items():
        for (m2, I2), c2 in restrict_base_monomial(sv, fv, m, I):
            _acc(out, (m2, I2, J), c * c2)
    return PolyForm._raw(f, w.degree, out)


def affine_pullback(w: PolyForm, source: Simplex, target: Simplex) -> PolyForm:
    """Pull ``w`` (living on ``target``) back to ``source`` along the
    order-preserving vertex bijection."""
    source, target = Simplex(source), Simplex(target)
    if source.dim != target.dim:
        raise FormError(f"dimension mismatch: {source.dim} vs {target.dim}")
    if w.simplex != target:
        raise FormError("form does not live on the target simplex")
    return PolyForm._raw(source, w.degree, dict(w.terms))


# -- retraction onto a facet with polynomial cutoff ---------------------------

def required_cutoff(w: PolyForm) -> int:
    """Smallest exponent for which ``(1 - t_j)^m * phi^* w`` is polynomial and
    vanishes at the opposite vertex.

    A monomial of degree ``e`` contributes ``e`` powers of ``1 - t_j`` to the
    denominator; a product of ``r >= 1`` pulled-back differentials contributes
    ``r + 1``.
    """
    need = 1
    for m, I, _ in w.terms:
        r = len(I)
        need = max(need, sum(m) + (r + 1 if r else 0))
    return need


def retraction_pullback_with_cutoff(w: PolyForm, d: Simplex, j: int, m: int | None = None) -> PolyForm:
    """``(1 - t_j)^m * phi^* w`` on ``d``, where ``phi`` retracts ``d`` minus the
    vertex at position ``j`` onto the opposite facet, carrying ``w``.

    ``phi(t) = t_i / (1 - t_j)`` on the remaining coordinates; the fiber part is
    carried by the identity.
    """
    d = Simplex(d)
    k = d.dim
    if k < 1 or not 0 <= j <= k:
        raise FormError(f"no facet opposite position {j} in a {k}-simplex")
    alpha = Simplex(d[:j] + d[j + 1:])
    if w.simplex != alpha:
        raise FormError(f"form lives on {list(w.simplex)}, expected facet {list(alpha)}")
    need = required_cutoff(w)
    if m is None:
        m = need
    if m < need:
        raise FormError(f"cutoff exponent {m} too small; at least {need} is required")
    if not w.terms:
        return PolyForm.zero(d, w.degree)

    q = [i for i in range(k + 1) if i != j]  # position in d of alpha's vertex b
    T = [PolyForm.coordinate(d, i) for i in range(k + 1)]
    dT = [PolyForm.coordinate_differential(d, i) for i in range(k + 1)]
    S = PolyForm.coordinate(d, j) * -1 + PolyForm.constant(d, 1)
    dS = dT[j] * -1
    one = PolyForm.constant(d, 1)

    spow = [one]
    tpow: dict[tuple[int, int], PolyForm] = {}

    def s_power(n: int) -> PolyForm:
        while len(spow) <= n:
            spow.append(wedge(spow[-1], S))
        return spow[n]

    def t_power(i: int, e: int) -> PolyForm:
        if (i, e) not in tpow:
            tpow[(i, e)] = one if e == 0 else wedge(t_power(i, e - 1), T[i])
        return tpow[(i, e)]

    numerators: dict[Idx, PolyForm] = {}

    def numerator(B: Idx) -> PolyForm:
        # S * dT_B - sum_i T_{b_i} dT_{b_1} ^ .. (dS in slot i) .. ^ dT_{b_r}
        if B not in numerators:
            if not B:
                numerators[B] = one
            else:
                cols = [q[b] for b in B]
                top = one
                for c in cols:
                    top = wedge(top, dT[c])
                acc = wedge(S, top)
                for s, c in enumerate(cols):
                    f = T[c]
                    for s2, c2 in enumerate(cols):
                        f = wedge(f, dS if s2 == s else dT[c2])
                    acc = acc - f
                numerators[B] = acc
        return numerators[B]

    out = PolyForm.zero(d, w.degree)
    for (mono, I, J), c in w.terms.items():
        r = len(I)
        den = sum(mono) + (r + 1 if r else 0)
        piece = s_power(m - den)
        for b, e in enumerate(mono, start=1):
            if e:
                piece = wedge(piece, t_power(q[b], e))
        piece = wedge(piece, numerator(I))
        if J:
            piece = wedge(piece, PolyForm.theta(d, J))
        out = out + piece * c
    return out


# -- pointwise evaluation -----------------------------------------------------

def _det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    a = [list(r) for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                for cc in range(col, n):
                    a[r][cc] -= f * a[col][cc]
    return det


def evaluate(w: PolyForm, point: Sequence, vectors: Sequence[tuple[Sequence, Sequence]] = ()) -> Fraction:
    """Value of ``w`` at a barycentric point on ``p`` arguments.

    Each argument is ``(tangent, fiber)``: a tangent vector in barycentric
    components (summing to zero) and a vector of the fiber Lie algebra.
    """
    k = w.simplex.dim
    x = [Fraction(v) for v in point]
    if len(x) != k + 1 or any(v < 0 for v in x) or sum(x) != 1:
        raise FormError(f"not a point of the closed {k}-simplex: {point}")
    if len(vectors) != w.degree:
        raise FormError(f"{w.degree}-form needs {w.degree} arguments, got {len(vectors)}")
    args = []
    for tan, fib in vectors:
        tan = [Fraction(v) for v in tan]
        if len(tan) != k + 1 or sum(tan) != 0:
            raise FormError(f"not a tangent vector of the {k}-simplex: {tan}")
        args.append((tan, [Fraction(v) for v in fib]))
    total = Fraction(0)
    for (m, I, J), c in w.terms.items():
        val = c
        for a, e in enumerate(m, start=1):
            if e:
                val *= x[a] ** e
        if not val:
            continue
        rows = [[tan[a] for tan, _ in args] for a in I]
        for jj in J:
            rows.append([fib[jj] if jj < len(fib) else Fraction(0) for _, fib in args])
        total += val * (_det(rows) if rows else 1)
    return total


# -- text serialization -------------------------------------------------------

def _fmt_q(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_form(w: PolyForm) -> str:
    """``coef*t1^2*t3 * dt[1,2] ^ theta[1]`` terms joined by `` + ``; theta
    indices are 1-based.  The parser also accepts terms that leave out an
    empty ``dt[]`` or ``theta[]``."""
    if not w.terms:
        return "0"
    parts = []
    for (m, I, J), c in sorted(w.terms.items()):
        mono = "".join(f"*t{a}" + (f"^{e}" if e > 1 else "") for a, e in enumerate(m, start=1) if e)
        dt = ",".join(map(str, I))
        th = ",".join(str(j + 1) for j in J)
        parts.append(f"{_fmt_q(c)}{mono} * dt[{dt}] ^ theta[{th}]")
    return " + ".join(parts)


_TERM = re.compile(
    r"^(?P<coef>-?\d+(?:/\d+)?)(?P<mono>(?:\*t\d+(?:\^\d+)?)*)"
    r"(?: \* dt\[(?P<I>[\d,]*)\])?(?: (?:\^|\*) theta\[(?P<J>[\d,]*)\])?$"
)


def parse_form(text: str, simplex: Simplex, degree: int) -> PolyForm:
    simplex = Simplex(simplex)
    text = text.strip()
    if text == "0":
        return PolyForm.zero(simplex, degree)
    k = simplex.dim
    terms: dict[Key, Fraction] = {}
    for raw in text.split(" + "):
        mt = _TERM.match(raw.strip())
        if not mt:
            raise FormError(f"cannot parse term {raw!r}")
        mono = [0] * k
        for a, e in re.findall(r"\*t(\d+)(?:\^(\d+))?", mt["mono"]):
            a = int(a)
            if not 1 <= a <= k:
                raise FormError(f"coordinate t{a} does not exist on a {k}-simplex")
            mono[a - 1] += int(e) if e else 1
        I = tuple(int(s) for s in (mt["I"] or "").split(",") if s)
        J = tuple(int(s) - 1 for s in (mt["J"] or "").split(",") if s)
        if any(j < 0 for j in J):
            raise FormError(f"theta indices are 1-based in {raw!r}")
        _acc(terms, (tuple(mono), I, J), Fraction(mt["coef"]))
    return PolyForm(simplex, degree, terms)
