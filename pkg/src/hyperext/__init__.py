"""Hyperext.

Exact computations on affine hyperplane arrangements: intersection
semi-lattices, characteristic and Whitney polynomials, broken circuits, and
the classification of one-element extensions by the strata of the induced
adjoint arrangement.
"""

from hyperext.arrangement import Arrangement, InvariantBundle, build_semilattice, invariants
from hyperext.exactq import GF, QQ, Flat, Hyperplane

__all__ = [
    "Arrangement",
    "Flat",
    "GF",
    "Hyperplane",
    "InvariantBundle",
    "QQ",
    "build_semilattice",
    "invariants",
]
