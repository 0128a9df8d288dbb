"""Mayer-Vietoris for a two-piece cover ``K = K0 u K1`` with ``L = K0 n K1``.

Short exact sequence of cochain complexes::

    0 -> Omega(K) --lambda--> Omega(K0) + Omega(K1) --mu--> Omega(L) -> 0

with lambda = (restrict, restrict) and mu(xi, eta) = eta|L - xi|L, its
connecting map by the zig-zag construction, and an exactness checker for the
long exact sequence in cohomology.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .cohomology import (CochainComplex, DirectSum, NotStabilizedError, TruncatedComplex,
                         betti, induced_map, side_by_side, stabilized_betti, stack)
from .lie_algebra import LieAlgebra
from .linalg import RationalMatrix, SparseVec, SpanSolver, nullspace_sparse, rank
from .piecewise import (AlgebroidComplex, FacetOrder, PiecewiseForm, extend_from_subcomplex,
                        global_differential, restrict_to_subcomplex)
from .polyform import FormError
from .simplicial import CoverDecomposition, SimplicialComplex, cover

SPACES = ("K", "K0", "K1", "L")


@dataclass
class MVSetup:
    cover: CoverDecomposition
    fiber: LieAlgebra
    truncations: Mapping[str, int]
    # smallest truncation proven stable per space, when known
    stable_at: Mapping[str, int] = field(default_factory=dict)
    _complexes: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self) -> None:
        n = dict(self.truncations)
        if set(n) != set(SPACES):
            raise ValueError(f"truncations needed for {SPACES}")
        # restriction must land in a truncation at least as large as its source
        if not (n["K"] <= n["K0"] <= n["L"] and n["K"] <= n["K1"] <= n["L"]):
            raise ValueError("truncations must satisfy N_K <= N_K0, N_K1 <= N_L")
        self.truncations = n

    @classmethod
    def build(cls, k0: SimplicialComplex, k1: SimplicialComplex, fiber: LieAlgebra,
              start: int = 1, window: int = 2, ceiling: int = 6) -> "MVSetup":
        """Stabilize each space separately and use the largest truncation for all four."""
        c = cover(k0, k1)
        stable = {}
        for name, base in zip(SPACES, (c.union, c.k0, c.k1, c.intersection)):
            stable[name] = stabilized_betti(AlgebroidComplex(base, fiber), start, window, ceiling)[1]
        n = max(stable.values())
        return cls(c, fiber, {name: n for name in SPACES}, stable)

    def base(self, name: str) -> SimplicialComplex:
        c = self.cover
        return {"K": c.union, "K0": c.k0, "K1": c.k1, "L": c.intersection}[name]

    def algebroid(self, name: str) -> AlgebroidComplex:
        return AlgebroidComplex(self.base(name), self.fiber)

    def complex(self, name: str, n: int | None = None) -> TruncatedComplex:
        n = self.truncations[name] if n is None else n
        key = (name, n)
        if key not in self._complexes:
            self._complexes[key] = TruncatedComplex(self.algebroid(name), n)
        return self._complexes[key]

    @property
    def top_degree(self) -> int:
        return max(self.cover.union.dim, 0) + self.fiber.dim


# -- the short exact sequence on forms ----------------------------------------

def lambda_map(w: PiecewiseForm, setup: MVSetup) -> tuple[PiecewiseForm, PiecewiseForm]:
    return (restrict_to_subcomplex(w, setup.cover.k0), restrict_to_subcomplex(w, setup.cover.k1))


def mu_map(xi: PiecewiseForm, eta: PiecewiseForm, setup: MVSetup) -> PiecewiseForm:
    if xi.degree != eta.degree:
        raise FormError(f"degree mismatch: {xi.degree} vs {eta.degree}")
    l = setup.cover.intersection
    return restrict_to_subcomplex(eta, l) - restrict_to_subcomplex(xi, l)


def mu_preimage(gamma: PiecewiseForm, setup: MVSetup,
                order: FacetOrder = None) -> tuple[PiecewiseForm, PiecewiseForm]:
    """Split gamma as -gamma/2 extended over K0 and +gamma/2 extended over K1."""
    half = Fraction(1, 2)
    alpha = extend_from_subcomplex(gamma * -half, setup.cover.k0, order)
    beta = extend_from_subcomplex(gamma * half, setup.cover.k1, order)
    return alpha, beta


def glue(xi: PiecewiseForm, eta: PiecewiseForm, setup: MVSetup) -> PiecewiseForm:
    if xi.degree != eta.degree:
        raise FormError(f"degree mismatch: {xi.degree} vs {eta.degree}")
    for s in setup.cover.intersection.sorted():
        if xi.parts[s] != eta.parts[s]:
            raise FormError(f"forms disagree on the shared simplex {list(s)}")
    parts = dict(xi.parts)
    parts.update(eta.parts)
    return PiecewiseForm(setup.algebroid("K"), xi.degree, parts)


def connecting_hom(gamma: PiecewiseForm, setup: MVSetup, order: FacetOrder = None) -> PiecewiseForm:
    if not global_differential(gamma).is_zero():
        raise FormError("connecting map needs a closed form")
    alpha, beta = mu_preimage(gamma, setup, order)
    return glue(global_differential(alpha), global_differential(beta), setup)


# -- cochain-level matrices ---------------------------------------------------

def lambda_matrix(setup: MVSetup, p: int) -> RationalMatrix:
    tk = setup.complex("K")
    return stack(tk.restriction_matrix(setup.complex("K0"), p),
                 tk.restriction_matrix(setup.complex("K1"), p))


def mu_matrix(setup: MVSetup, p: int) -> RationalMatrix:
    tl = setup.complex("L")
    r0 = setup.complex("K0").restriction_matrix(tl, p)
    r1 = setup.complex("K1").restriction_matrix(tl, p)
    return side_by_side(r0.scale(-1), r1)


def sum_complex(setup: MVSetup) -> DirectSum:
    return DirectSum(setup.complex("K0"), setup.complex("K1"))


# -- long exact sequence --------------------------------------------------------

def _frac(x: Fraction) -> str:
    return str(x)


def _matrix_json(m: RationalMatrix) -> list[list[str]]:
    return [[_frac(x) for x in row] for row in m.to_lists()]


@dataclass
class NodeVerdict:
    node: str
    dim: int
    exact: bool
    witness: dict | None = None

    def to_json(self) -> dict:
        return {"node": self.node, "dim": self.dim, "exact": self.exact, "witness": self.witness}


@dataclass
class LESReport:
    truncations: dict[str, int]
    connecting_truncation: int
    dims: list[dict[str, int]]
    maps: dict[str, dict[int, RationalMatrix]]
    nodes: list[NodeVerdict]

    @property
    def all_exact(self) -> bool:
        return all(v.exact for v in self.nodes)

    def rank(self, name: str, p: int) -> int:
        return rank(self.maps[name][p])

    def to_json(self) -> dict:
        return {
            "all_exact": self.all_exact,
            "truncations": dict(self.truncations),
            "connecting_truncation": self.connecting_truncation,
            "dims": self.dims,
            "maps": {name: {str(p): _matrix_json(m) for p, m in per.items()}
                     for name, per in self.maps.items()},
            "nodes": [v.to_json() for v in self.nodes],
        }


def check_stabilized(setup: MVSetup) -> None:
    for name in SPACES:
        n = setup.truncations[name]
        known = setup.stable_at.get(name)
        if known is not None and n >= known:
            continue
        a = setup.algebroid(name)
        if n < a.base.dim:
            raise NotStabilizedError(
                f"truncation N={n} for {name} is below its dimension {a.base.dim}; raise N")
        b0, b1 = betti(a, n), betti(a, n + 1)
        if b0 != b1:
            raise NotStabilizedError(
                f"truncation N={n} for {name} is not stable (Betti {b0} at N, {b1} at N+1); raise N",
                [(n, b0), (n + 1, b1)])


def _connecting_matrices(setup: MVSetup, order: FacetOrder = None) -> tuple[dict[int, RationalMatrix], int]:
    tl, tk = setup.complex("L"), setup.complex("K")
    top = setup.top_degree
    images: dict[int, list[PiecewiseForm]] = {}
    for p in range(top + 1):
        images[p] = [connecting_hom(tl.to_form(p, z), setup, order) for z in tl.H(p).representatives]
    weight = max([c.weight for cs in images.values() for c in cs], default=0)
    n_big = max(tk.n, weight)
    big = setup.complex("K", n_big)
    inclusion = {p: tk.restriction_matrix(big, p) for p in range(top + 2)}
    iso = induced_map(inclusion, tk, big)
    out = {}
    for p in range(top + 1):
        target = iso.get(p + 1)
        src_dim = len(images[p])
        if target is None:
            out[p] = RationalMatrix.zeros(0, src_dim)
            continue
        m = target.matrix
        if m.rows != m.cols or rank(m) != m.rows:
            raise NotStabilizedError(
                f"H^{p + 1}(K) changes between N={tk.n} and N={n_big}; raise the truncation")
        solver = SpanSolver(m.columns())
        cols = []
        for c in images[p]:
            coords = big.H(p + 1).class_coordinates(big.to_vector(c))
            if coords is None:
                raise AssertionError("connecting map produced a non-closed form")
            x = solver.solve(coords)
            if x is None:
                raise AssertionError("class not reached by the stabilization isomorphism")
            cols.append(x)
        out[p] = RationalMatrix.from_columns(cols, m.cols)
    return out, n_big


def _node_verdict(name: str, dim: int, incoming: RationalMatrix | None,
                  outgoing: RationalMatrix | None, reps: list[SparseVec]) -> NodeVerdict:
    if incoming is None:
        incoming = RationalMatrix.zeros(dim, 0)
    if outgoing is None:
        outgoing = RationalMatrix.zeros(0, dim)
    comp = outgoing @ incoming
    if not comp.is_zero():
        col = min(j for row in comp.data.values() for j in row)
        return NodeVerdict(name, dim, False, {
            "kind": "composite_nonzero",
            "incoming_class_index": col,
        })
    kernel = nullspace_sparse(outgoing)
    r_in = rank(incoming)
    if r_in == len(kernel):
        return NodeVerdict(name, dim, True)
    solver = SpanSolver(incoming.columns())
    for v in kernel:
        if solver.solve(v) is None:
            cocycle: dict[int, Fraction] = {}
            for i, c in v.items():
                for j, x in reps[i].items():
                    cocycle[j] = cocycle.get(j, 0) + c * x
            return NodeVerdict(name, dim, False, {
                "kind": "kernel_not_image",
                "class_coordinates": {str(i): _frac(c) for i, c in sorted(v.items())},
                "cocycle": {str(j): _frac(x) for j, x in sorted(cocycle.items()) if x},
            })
    return NodeVerdict(name, dim, False, {"kind": "rank_mismatch", "rank_in": r_in, "dim_kernel": len(kernel)})


def verify_les_exactness(setup: MVSetup, order: FacetOrder = None) -> LESReport:
    check_stabilized(setup)
    tk, tl = setup.complex("K"), setup.complex("L")
    ts = sum_complex(setup)
    top = setup.top_degree
    lam = induced_map({p: lambda_matrix(setup, p) for p in range(top + 1)}, tk, ts)
    mu = induced_map({p: mu_matrix(setup, p) for p in range(top + 1)}, ts, tl)
    delta, n_big = _connecting_matrices(setup, order)

    # nodes in sequence order with the map leaving each one
    chain: list[tuple[str, CochainComplex, int, RationalMatrix | None]] = []
    for p in range(top + 1):
        chain.append((f"H^{p}(K)", tk, p, lam[p].matrix))
        chain.append((f"H^{p}(K0)+H^{p}(K1)", ts, p, mu[p].matrix))
        chain.append((f"H^{p}(L)", tl, p, delta[p] if p < top else None))
    nodes = []
    for i, (name, cx, p, out) in enumerate(chain):
        h = cx.H(p)
        incoming = chain[i - 1][3] if i else None
        nodes.append(_node_verdict(name, h.dim, incoming, out, h.representatives))
    dims = [{"p": p, "K": tk.H(p).dim, "K0+K1": ts.H(p).dim, "L": tl.H(p).dim} for p in range(top + 1)]
    maps = {"lambda": {p: lam[p].matrix for p in lam if p <= top},
            "mu": {p: mu[p].matrix for p in mu if p <= top},
            "delta": delta}
    return LESReport(dict(setup.truncations), n_big, dims, maps, nodes)
