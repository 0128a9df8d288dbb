"""Piecewise polynomial cohomology of trivial Lie algebroid complexes over
simplicial complexes, with constructive Mayer-Vietoris verification."""

from .cohomology import TruncatedComplex, betti, stabilized_betti
from .lie_algebra import LieAlgebra, validate
from .mayer_vietoris import MVSetup, verify_les_exactness
from .oracle import oracle_betti
from .piecewise import AlgebroidComplex, PiecewiseForm
from .polyform import PolyForm
from .simplicial import Simplex, SimplicialComplex, closure

__all__ = [
    "AlgebroidComplex", "LieAlgebra", "MVSetup", "PiecewiseForm", "PolyForm", "Simplex",
    "SimplicialComplex", "TruncatedComplex", "betti", "closure", "oracle_betti",
    "stabilized_betti", "validate", "verify_les_exactness",
]
