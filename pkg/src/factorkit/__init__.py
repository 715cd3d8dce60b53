"""Purity classification, (co)purification and lifting checks for four process theories."""
from .core import (
    DEFAULT_TOL,
    THEORIES,
    ClassFlags,
    FactorPair,
    FactorkitError,
    InvalidMorphism,
    LiftingSquare,
    NotEnumerable,
    ObjectMismatch,
    SizeGuardError,
    SquareError,
    TheoryMismatch,
    UnsupportedFamily,
    classify,
    compose,
    discard,
    equal,
    identity,
    mix,
    swap,
    tensor,
)

__version__ = "0.1.0"
