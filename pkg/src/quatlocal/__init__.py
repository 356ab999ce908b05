"""Exact local constants for quaternionic unitary dual pairs.

Values live in Q(q^(1/2), q^(-s)) extended by root-number symbols; every
constant is available along several independent routes so that the
identities between them can be checked by exact equality.
"""

from .exactring import (ConstantValue, Pole, QValue, RatFunc, S, SArg, SValue, canonicalize,
                        evaluate_numeric, q_power, substitute_s, x_power)
from .localdata import (TRIVIAL, UNRAMIFIED, DualPair, FieldParams, HermitianSpace,
                        QuadraticCharacter, ValidationError, companion_space, make_pair,
                        make_space, ramified)
from .doubling import alpha1
from .theta import alpha2, alpha3

__version__ = "0.1.0"

__all__ = [
    "ConstantValue", "Pole", "QValue", "RatFunc", "S", "SArg", "SValue", "canonicalize",
    "evaluate_numeric", "q_power", "substitute_s", "x_power",
    "TRIVIAL", "UNRAMIFIED", "DualPair", "FieldParams", "HermitianSpace",
    "QuadraticCharacter", "ValidationError", "companion_space", "make_pair", "make_space",
    "ramified", "alpha1", "alpha2", "alpha3",
]
