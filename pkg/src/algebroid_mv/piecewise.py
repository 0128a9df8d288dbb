"""Piecewise polynomial forms on the trivial complex ``T(D) + (D x g)`` over a
simplicial complex, and the extension algorithms built from facet retractions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .lie_algebra import LieAlgebra, require_valid
from .polyform import (FormError, PolyForm, differential, format_form, parse_form,
                       restrict_to_face, retraction_pullback_with_cutoff)
from .simplicial import Simplex, SimplicialComplex, boundary_complex, closure, is_subcomplex


class CompatibilityError(FormError):
    pass


@dataclass(frozen=True)
class AlgebroidComplex:
    """The trivial complex of Lie algebroids with fiber ``fiber`` over ``base``."""

    base: SimplicialComplex
    fiber: LieAlgebra

    def __post_init__(self) -> None:
        require_valid(self.fiber)

    def restrict(self, l: SimplicialComplex) -> "AlgebroidComplex":
        if not is_subcomplex(l, self.base):
            raise ValueError("not a subcomplex of the base")
        return AlgebroidComplex(l, self.fiber)


@dataclass(frozen=True, eq=False)
class PiecewiseForm:
    complex: AlgebroidComplex
    degree: int
    parts: Mapping[Simplex, PolyForm] = field(default_factory=dict)

    def __post_init__(self) -> None:
        parts = dict(self.parts)
        base = self.complex.base.simplices
        if set(parts) != set(base):
            missing = sorted(base - set(parts), key=len)
            extra = sorted(set(parts) - base, key=len)
            raise FormError(f"parts do not match the base (missing {missing[:3]}, extra {extra[:3]})")
        for s, w in parts.items():
            if w.simplex != s or w.degree != self.degree:
                raise FormError(f"part on {list(s)} has wrong simplex or degree")
            if w.fiber_span > self.complex.fiber.dim:
                raise FormError(f"part on {list(s)} uses covectors beyond the fiber")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def zero(cls, a: AlgebroidComplex, degree: int) -> "PiecewiseForm":
        return cls(a, degree, {s: PolyForm.zero(s, degree) for s in a.base.simplices})

    @classmethod
    def from_top(cls, a: AlgebroidComplex, w: PolyForm) -> "PiecewiseForm":
        """Restrictions of one form ``w`` to all faces; ``a.base`` must be the closure of ``w.simplex``."""
        return cls(a, w.degree, {s: restrict_to_face(w, s) for s in a.base.simplices})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PiecewiseForm):
            return NotImplemented
        return (self.complex.base == other.complex.base and self.degree == other.degree
                and all(self.parts[s] == other.parts[s] for s in self.parts))

    def _combine(self, other: "PiecewiseForm", sign: int) -> "PiecewiseForm":
        if self.complex.base != other.complex.base or self.degree != other.degree:
            raise FormError("forms live on different complexes or degrees")
        parts = {s: (w + other.parts[s]) if sign > 0 else (w - other.parts[s])
                 for s, w in self.parts.items()}
        return PiecewiseForm(self.complex, self.degree, parts)

    def __add__(self, other: "PiecewiseForm") -> "PiecewiseForm":
        return self._combine(other, 1)

    def __sub__(self, other: "PiecewiseForm") -> "PiecewiseForm":
        return self._combine(other, -1)

    def __mul__(self, c) -> "PiecewiseForm":
        return PiecewiseForm(self.complex, self.degree, {s: w * c for s, w in self.parts.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "PiecewiseForm":
        return self * -1

    def is_zero(self) -> bool:
        return not any(w.terms for w in self.parts.values())

    @property
    def weight(self) -> int:
        return max((w.weight for w in self.parts.values()), default=0)

    def __repr__(self) -> str:
        inner = ", ".join(f"{list(s)}: {format_form(w)}" for s, w in sorted(self.parts.items(), key=lambda kv: (len(kv[0]), kv[0])))
        return f"PiecewiseForm(deg={self.degree}, {{{inner}}})"


def incompatible_pairs(w: PiecewiseForm) -> list[tuple[Simplex, Simplex]]:
    bad = []
    for s in w.complex.base.sorted():
        for f in s.facets():
            if restrict_to_face(w.parts[s], f) != w.parts[f]:
                bad.append((s, f))
    return bad


def validate_compatibility(w: PiecewiseForm) -> bool:
    """Check the face condition on codimension-one pairs (transitivity covers the rest)."""
    return not incompatible_pairs(w)


def require_compatible(w: PiecewiseForm) -> PiecewiseForm:
    bad = incompatible_pairs(w)
    if bad:
        s, f = bad[0]
        raise CompatibilityError(f"part on {list(s)} does not restrict to the part on {list(f)}")
    return w


def global_differential(w: PiecewiseForm) -> PiecewiseForm:
    g = w.complex.fiber
    return PiecewiseForm(w.complex, w.degree + 1, {s: differential(p, g) for s, p in w.parts.items()})


def restrict_to_subcomplex(w: PiecewiseForm, l: SimplicialComplex) -> PiecewiseForm:
    if not is_subcomplex(l, w.complex.base):
        raise FormError("restriction target is not a subcomplex")
    return PiecewiseForm(w.complex.restrict(l), w.degree, {s: w.parts[s] for s in l.simplices})


# -- extension over the boundary of one simplex -------------------------------

@dataclass
class SweepStep:
    position: int            # vertex position opposite the processed facet
    facet: Simplex
    increment: PolyForm      # cutoff extension of the residual's part on the facet
    residual: dict[Simplex, PolyForm]   # boundary residual after this step


FacetOrder = Sequence[int] | str | None


def _check_order(order: FacetOrder, k: int) -> list[int]:
    """``None`` sweeps facets by ascending opposite position, ``"reversed"``
    by descending position; a sequence gives the positions explicitly.  A
    permutation of ``0..m`` with ``m >= k`` is used with positions above ``k``
    dropped, so one order serves every dimension."""
    if order is None:
        return list(range(k + 1))
    if order == "reversed":
        return list(range(k, -1, -1))
    order = list(order)
    if sorted(order) != list(range(len(order))) or len(order) < k + 1:
        raise ValueError(f"facet order must be a permutation of 0..m with m >= {k}")
    return [j for j in order if j <= k]


def facet_sweep(boundary_parts: Mapping[Simplex, PolyForm], d: Simplex,
                order: FacetOrder = None) -> list[SweepStep]:
    """Run the facet-by-facet cutoff extension; one step per facet of ``d``."""
    d = Simplex(d)
    k = d.dim
    faces = list(d.faces(proper=True))
    residual = {f: boundary_parts[f] for f in faces}
    steps = []
    for j in _check_order(order, k):
        alpha = Simplex(d[:j] + d[j + 1:])
        part = residual[alpha]
        inc = retraction_pullback_with_cutoff(part, d, j) if part.terms else PolyForm.zero(d, part.degree)
        if inc.terms:
            residual = {f: residual[f] - restrict_to_face(inc, f) for f in faces}
        steps.append(SweepStep(j, alpha, inc, dict(residual)))
    return steps


def _extend_part(boundary_parts: Mapping[Simplex, PolyForm], d: Simplex, degree: int,
                 order: FacetOrder = None) -> PolyForm:
    if d.dim == 0:
        return PolyForm.zero(d, degree)
    total = PolyForm.zero(d, degree)
    for step in facet_sweep(boundary_parts, d, order):
        total = total + step.increment
    return total


def extend_over_boundary(xi: PiecewiseForm, d: Simplex, fiber: LieAlgebra | None = None,
                         order: FacetOrder = None) -> PiecewiseForm:
    """Extend a compatible form on the boundary of ``d`` to the closed simplex."""
    d = Simplex(d)
    if xi.complex.base != boundary_complex(d):
        raise FormError(f"form is not defined on the boundary of {list(d)}")
    require_compatible(xi)
    fiber = fiber if fiber is not None else xi.complex.fiber
    top = _extend_part(xi.parts, d, xi.degree, order)
    parts = dict(xi.parts)
    parts[d] = top
    return PiecewiseForm(AlgebroidComplex(closure([d]), fiber), xi.degree, parts)


def extend_from_subcomplex(w: PiecewiseForm, k: SimplicialComplex,
                           order: FacetOrder = None) -> PiecewiseForm:
    """Extend ``w`` from its base ``L`` to ``k``, simplex by simplex in
    increasing dimension; vertices outside ``L`` get the zero form."""
    l = w.complex.base
    if not is_subcomplex(l, k):
        raise FormError("the form's base is not a subcomplex of the target")
    if l == k:
        return w
    parts = dict(w.parts)
    for s in k.sorted():
        if s in parts:
            continue
        if s.dim == 0:
            parts[s] = PolyForm.zero(s, w.degree)
            continue
        parts[s] = _extend_part(parts, s, w.degree, order)
    return PiecewiseForm(AlgebroidComplex(k, w.complex.fiber), w.degree, parts)


def extend_partial_boundary(facet_forms: Mapping[Simplex, PolyForm], d: Simplex,
                            fiber: LieAlgebra, order: FacetOrder = None,
                            degree: int = 0) -> PiecewiseForm:
    """Extend forms given on some facets of ``d`` to a piecewise form on ``closure{d}``."""
    d = Simplex(d)
    facets = set(d.facets())
    items = sorted(facet_forms.items())
    zero_degree, degree = degree, None
    for f, w in items:
        if f not in facets:
            raise FormError(f"{list(f)} is not a facet of {list(d)}")
        if w.simplex != f:
            raise FormError(f"form for facet {list(f)} lives on {list(w.simplex)}")
        if degree is None:
            degree = w.degree
        elif w.degree != degree:
            raise FormError("facet forms have different degrees")
    for a, (f1, w1) in enumerate(items):
        for f2, w2 in items[a + 1:]:
            common = Simplex(sorted(set(f1) & set(f2))) if set(f1) & set(f2) else None
            if common is not None and restrict_to_face(w1, common) != restrict_to_face(w2, common):
                raise CompatibilityError(f"facet forms on {list(f1)} and {list(f2)} disagree on {list(common)}")
    if degree is None:
        return PiecewiseForm.zero(AlgebroidComplex(closure([d]), fiber), zero_degree)
    l = closure(f for f, _ in items)
    parts = {}
    for s in l.simplices:
        owner = next(f for f, _ in items if s.is_face_of(f))
        parts[s] = restrict_to_face(facet_forms[owner], s)
    w = PiecewiseForm(AlgebroidComplex(l, fiber), degree, parts)
    return extend_from_subcomplex(w, closure([d]), order)


# -- serialization ------------------------------------------------------------

def form_to_json(w: PiecewiseForm) -> dict:
    return {
        "degree": w.degree,
        "parts": [{"simplex": list(s), "form": format_form(w.parts[s])} for s in w.complex.base.sorted()],
    }


def form_from_json(data: Mapping, a: AlgebroidComplex) -> PiecewiseForm:
    degree = int(data["degree"])
    given = {}
    for item in data["parts"]:
        s = Simplex(item["simplex"])
        given[s] = parse_form(item["form"], s, degree)
    parts = {s: given.get(s, PolyForm.zero(s, degree)) for s in a.base.simplices}
    unknown = set(given) - set(parts)
    if unknown:
        raise FormError(f"parts on simplices outside the complex: {[list(s) for s in unknown][:3]}")
    return PiecewiseForm(a, degree, parts)
