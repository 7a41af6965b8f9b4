"""codual: an exact finite-model checker for quotient vector bundles,
linearized locales/colocales and annihilator duality.

Everything is decidable by construction: base spaces are finite
topological spaces, vector spaces are GF(p)^n with a non-degenerate
pairing, and every categorical statement reduces to table equalities that
the harness verifies exhaustively.
"""

from .bundles import (Bundle, BundleMorphism, check_morphism, classify,
                      codual, dualize_morphism)
from .fintop import FinTop, generate_topology
from .gflinalg import DualPair, Subspace, span, sub_lattice
from .lattice import FinLattice, MonotoneMap

__all__ = [
    "Bundle", "BundleMorphism", "check_morphism", "classify", "codual",
    "dualize_morphism", "FinTop", "generate_topology", "DualPair",
    "Subspace", "span", "sub_lattice", "FinLattice", "MonotoneMap",
]

__version__ = "0.1.0"
