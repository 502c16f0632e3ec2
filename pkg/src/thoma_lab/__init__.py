"""Exact finite-stage computations for Thoma characters of the infinite
symmetric group and the invariants of the stabilizer subfactor they induce."""

from .errors import CapExceededError, ParameterError, ParseError
from .perm import Permutation, from_cycles, identity, parse_permutation, transposition
from .thoma import ThomaParameter, character, classify_irreducible, theta_dual, validate

__all__ = [
    "CapExceededError",
    "ParameterError",
    "ParseError",
    "Permutation",
    "ThomaParameter",
    "character",
    "classify_irreducible",
    "from_cycles",
    "identity",
    "parse_permutation",
    "theta_dual",
    "transposition",
    "validate",
]

__version__ = "0.1.0"
