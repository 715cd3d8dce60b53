"""Theory-independent vocabulary shared by every process theory.

A morphism of any theory is an immutable value carrying ``theory``, ``dom``
and ``cod``.  Objects are plain natural numbers: the cardinality of a finite
set for ``fstoch``/``frel``/``fset`` and the Hilbert space dimension for
``quant``.  The tensor of objects multiplies dimensions and the pair
``(i, j)`` of ``A (x) B`` is stored at index ``i * dim(B) + j``.

Matrices are stored codomain-by-domain, so composition is a matrix product.
"""
from __future__ import annotations

import importlib
from dataclasses import dataclass
from typing import Any, Optional

THEORIES = ("fstoch", "frel", "fset", "quant")

DEFAULT_TOL = 1e-9


class FactorkitError(Exception):
    """Base class for domain errors raised by this package."""


class TheoryMismatch(FactorkitError):
    pass


class ObjectMismatch(FactorkitError):
    pass


class InvalidMorphism(FactorkitError, ValueError):
    """The payload violates the theory's constraints (e.g. a negative entry)."""


class UnsupportedFamily(FactorkitError):
    """The theory has no morphism of the requested family (e.g. mixing in fset)."""


class SquareError(FactorkitError):
    """A lifting square does not commute or its legs are in the wrong classes."""


class NotEnumerable(FactorkitError):
    pass


class SizeGuardError(FactorkitError):
    pass


def theory_module(theory: str):
    if theory not in THEORIES:
        raise TheoryMismatch(f"unknown theory {theory!r}")
    return importlib.import_module(f"factorkit.{theory}")


def check_dim(n: Any, theory: str) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise ObjectMismatch(f"object dimension must be an int, got {n!r}")
    lo = 1 if theory == "quant" else 0
    if n < lo:
        raise ObjectMismatch(f"{theory} objects need dimension >= {lo}, got {n}")
    return n


def _same_theory(f, g) -> str:
    if f.theory != g.theory:
        raise TheoryMismatch(f"cannot combine {f.theory} with {g.theory}")
    return f.theory


def compose(g, f):
    """Return ``g . f`` (first ``f``, then ``g``)."""
    theory = _same_theory(f, g)
    if f.cod != g.dom:
        raise ObjectMismatch(f"cannot compose: cod(f)={f.cod} but dom(g)={g.dom}")
    return theory_module(theory).compose(g, f)


def tensor(f, g):
    return theory_module(_same_theory(f, g)).tensor(f, g)


def identity(a: int, theory: str):
    return theory_module(theory).identity(check_dim(a, theory))


def swap(a: int, b: int, theory: str):
    return theory_module(theory).swap(check_dim(a, theory), check_dim(b, theory))


def mix(a: int, theory: str):
    """The completely mixed state ``I -> a``."""
    mod = theory_module(theory)
    if not hasattr(mod, "mix"):
        raise UnsupportedFamily(
            f"{theory} has no completely mixed states"
        )
    return mod.mix(check_dim(a, theory))


def discard(a: int, theory: str):
    """The discarding effect ``a -> I``."""
    return theory_module(theory).discard(check_dim(a, theory))


def equal(f, g, tol: float = DEFAULT_TOL) -> bool:
    theory = _same_theory(f, g)
    if (f.dom, f.cod) != (g.dom, g.cod):
        raise ObjectMismatch(f"shape mismatch: {f.dom}->{f.cod} vs {g.dom}->{g.cod}")
    return theory_module(theory).equal(f, g, tol)


def classify(m, tol: float = DEFAULT_TOL) -> "ClassFlags":
    mod = theory_module(m.theory)
    if m.theory == "quant":
        return mod.classify(m, tol)
    return mod.classify(m)


@dataclass(frozen=True)
class ClassFlags:
    """Membership in the pure, copure, mixing and discarding classes.

    ``None`` marks a class the theory does not define (pure/mixing in fset).
    """

    pure: Optional[bool]
    copure: Optional[bool]
    mixing: Optional[bool]
    discarding: Optional[bool]

    def as_dict(self) -> dict:
        return {
            "pure": self.pure,
            "copure": self.copure,
            "mixing": self.mixing,
            "discarding": self.discarding,
        }


@dataclass(frozen=True)
class LiftingSquare:
    """A square ``right . top == bottom . left``.

    ::

        W --top--> Y
        |          |
      left       right
        v          v
        X -bottom-> Z

    A fill-in is ``h: X -> Y`` with ``h . left == top`` and
    ``right . h == bottom``.  Construction checks the shape only;
    call :meth:`commutes` for the equation.
    """

    left: Any
    right: Any
    top: Any
    bottom: Any

    def __post_init__(self):
        legs = (self.left, self.right, self.top, self.bottom)
        if len({m.theory for m in legs}) != 1:
            raise TheoryMismatch("all four sides of a square must share a theory")
        if self.top.dom != self.left.dom:
            raise ObjectMismatch("top and left must share their domain")
        if self.top.cod != self.right.dom:
            raise ObjectMismatch("cod(top) must equal dom(right)")
        if self.bottom.dom != self.left.cod:
            raise ObjectMismatch("dom(bottom) must equal cod(left)")
        if self.bottom.cod != self.right.cod:
            raise ObjectMismatch("bottom and right must share their codomain")

    @property
    def theory(self) -> str:
        return self.left.theory

    def commutes(self, tol: float = DEFAULT_TOL) -> bool:
        return equal(compose(self.right, self.top), compose(self.bottom, self.left), tol)

    def is_fill_in(self, h, tol: float = DEFAULT_TOL) -> bool:
        if (h.dom, h.cod) != (self.left.cod, self.right.dom):
            return False
        return equal(compose(h, self.left), self.top, tol) and equal(
            compose(self.right, h), self.bottom, tol
        )


@dataclass(frozen=True)
class FactorPair:
    """``left`` followed by ``right``; ``ancilla`` is the auxiliary object."""

    left: Any
    right: Any
    ancilla: int

    @property
    def composite(self):
        return compose(self.right, self.left)
