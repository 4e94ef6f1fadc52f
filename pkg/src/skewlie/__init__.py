"""skewlie: exact reconstruction and stress-testing of 2-local inner
derivations on Lie rings of skew-symmetric matrices.

Every 2-local inner derivation of the skew-symmetric n x n matrices
over a commutative unital ring with 1/2 (n >= 4) is inner, and the
implementing generator can be read off the map's values on the basis
elements s_ij.  This package computes that reconstruction exactly over
pluggable rings, verifies it against brute-force oracles, and exposes a
deterministic CLI for fuzzing the detection guarantees.
"""

from . import _kernel
from .errors import SkewlieError
from .lie import apply_lie_derivation, bracket, check_lie_leibniz
from .matrices import SkewMatrix, SquareMatrix, matrix_unit, random_skew, s_unit
from .oracle import enumerate_skew
from .reconstruct import BasisImageTable, assemble_generator, verify_globality
from .rings import (
    PolynomialRing,
    PrimeField,
    ProductRing,
    Rationals,
    parse_ring,
    ring_from_descriptor,
)
from .twolocal import TwoLocalModel, check_two_local, find_pair_witness

__version__ = "0.1.0"

KERNEL_BACKEND = _kernel.BACKEND_NAME

__all__ = [
    "SkewlieError",
    "SkewMatrix",
    "SquareMatrix",
    "matrix_unit",
    "s_unit",
    "random_skew",
    "bracket",
    "apply_lie_derivation",
    "check_lie_leibniz",
    "Rationals",
    "PrimeField",
    "PolynomialRing",
    "ProductRing",
    "parse_ring",
    "ring_from_descriptor",
    "BasisImageTable",
    "assemble_generator",
    "verify_globality",
    "TwoLocalModel",
    "check_two_local",
    "find_pair_witness",
    "enumerate_skew",
    "KERNEL_BACKEND",
    "__version__",
]
