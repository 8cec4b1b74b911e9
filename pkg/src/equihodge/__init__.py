"""equihodge: exact cyclic cohomology and window Hodge theory for discrete
group actions on simplicial complexes.

Everything is computed over the rationals with no floating point, so every
dimension, rank and operator identity reported by this package is exact.
"""

__version__ = "0.1.0"

from .groups import FiniteGroup, FreeAbelianGroup
from .algebras import (
    GradedAlgebra,
    GradedElement,
    build_exterior_algebra,
    build_function_algebra,
    average_projector,
    verify_cdga_axioms,
)
from .hopf import HopfAlgebroid, check_hopf_axioms, corrupted_antipode
from .report import Check, Report

__all__ = [
    "FiniteGroup",
    "FreeAbelianGroup",
    "GradedAlgebra",
    "GradedElement",
    "HopfAlgebroid",
    "Check",
    "Report",
    "build_exterior_algebra",
    "build_function_algebra",
    "average_projector",
    "verify_cdga_axioms",
    "check_hopf_axioms",
    "corrupted_antipode",
]
