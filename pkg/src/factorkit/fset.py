"""Finite functions: the deterministic theory.

Only the discarding effect is defined (``mix`` is absent), so classification
covers copure (injective) and discarding (surjective) morphisms.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .core import (
    ClassFlags,
    FactorPair,
    LiftingSquare,
    ObjectMismatch,
    SquareError,
    check_dim,
)

theory = "fset"


@dataclass(frozen=True)
class FinFunction:
    dom: int
    cod: int
    table: tuple  # table[a] is the image of a

    theory = theory

    def __post_init__(self):
        check_dim(self.dom, theory)
        check_dim(self.cod, theory)
        table = tuple(self.table)
        if len(table) != self.dom:
            raise ObjectMismatch(f"table must have {self.dom} entries, got {len(table)}")
        for v in table:
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < self.cod:
                raise ObjectMismatch(f"table value {v!r} outside [0, {self.cod})")
        object.__setattr__(self, "table", table)

    def __call__(self, a: int) -> int:
        return self.table[a]

    def __repr__(self):
        return f"FinFunction({self.dom}->{self.cod}, {list(self.table)})"


def function(table: Sequence[int], cod: int) -> FinFunction:
    return FinFunction(len(table), cod, tuple(table))


def all_functions(dom: int, cod: int) -> Iterator[FinFunction]:
    for t in itertools.product(range(cod), repeat=dom):
        yield FinFunction(dom, cod, t)


def identity(a: int) -> FinFunction:
    return FinFunction(a, a, tuple(range(a)))


def swap(a: int, b: int) -> FinFunction:
    return FinFunction(a * b, a * b, tuple((k % b) * a + k // b for k in range(a * b)))


def discard(a: int) -> FinFunction:
    return FinFunction(a, 1, (0,) * a)


def compose(g: FinFunction, f: FinFunction) -> FinFunction:
    if f.cod != g.dom:
        raise ObjectMismatch(f"cannot compose: cod(f)={f.cod} but dom(g)={g.dom}")
    return FinFunction(f.dom, g.cod, tuple(g.table[v] for v in f.table))


def tensor(f: FinFunction, g: FinFunction) -> FinFunction:
    return FinFunction(
        f.dom * g.dom,
        f.cod * g.cod,
        tuple(f.table[a] * g.cod + g.table[c] for a in range(f.dom) for c in range(g.dom)),
    )


def equal(f: FinFunction, g: FinFunction, tol: float = 0.0) -> bool:
    return (f.dom, f.cod, f.table) == (g.dom, g.cod, g.table)


def is_injective(f: FinFunction) -> bool:
    return len(set(f.table)) == f.dom


def is_surjective(f: FinFunction) -> bool:
    return len(set(f.table)) == f.cod


def classify(f: FinFunction) -> ClassFlags:
    return ClassFlags(pure=None, copure=is_injective(f), mixing=None, discarding=is_surjective(f))


def copurify(f: FinFunction) -> FactorPair:
    """``f: A -> B`` as ``a |-> (a, f(a))`` followed by the projection onto ``B``."""
    A, B = f.dom, f.cod
    left = FinFunction(A, A * B, tuple(a * B + f.table[a] for a in range(A)))
    right = tensor(discard(A), identity(B))
    return FactorPair(left=left, right=right, ancilla=A)


def inj_surj_factor(f: FinFunction) -> tuple[FinFunction, FinFunction]:
    """``f = s . i`` through ``A + (B minus im f)``: ``i`` injective, ``s`` surjective."""
    missing = [b for b in range(f.cod) if b not in set(f.table)]
    mid = f.dom + len(missing)
    i = FinFunction(f.dom, mid, tuple(range(f.dom)))
    s = FinFunction(mid, f.cod, f.table + tuple(missing))
    return i, s


def injectivity_witness(f: FinFunction) -> LiftingSquare:
    """For a non-injective ``f = s . i``: the square ``(f, s; i, id)``, which has no fill-in.

    The top separates two points that ``f`` identifies.
    """
    if is_injective(f):
        raise SquareError("f is injective; every such square has a fill-in")
    i, s = inj_surj_factor(f)
    return LiftingSquare(left=f, right=s, top=i, bottom=identity(f.cod))


def surjectivity_witness(f: FinFunction) -> LiftingSquare:
    """For a non-surjective ``f = s . i``: the square ``(i, f; id, s)``, which has no fill-in.

    The bottom reaches a point outside the image of ``f``.
    """
    if is_surjective(f):
        raise SquareError("f is surjective; every such square has a fill-in")
    i, s = inj_surj_factor(f)
    return LiftingSquare(left=i, right=f, top=identity(f.dom), bottom=s)


def fill_in_plain(sq: LiftingSquare) -> FinFunction:
    """Fill an injection-against-surjection square.

    On the image of the injection ``h`` is forced; elsewhere it picks the
    smallest preimage of the bottom value under the surjection.
    """
    i, s, j, k = sq.left, sq.right, sq.top, sq.bottom
    if not all(m.theory == theory for m in (i, s, j, k)):
        raise SquareError("fill_in_plain expects an fset square")
    if not is_injective(i):
        raise SquareError("left leg is not injective")
    if not is_surjective(s):
        raise SquareError("right leg is not surjective")
    if not sq.commutes():
        raise SquareError("square does not commute")
    inverse = {b: a for a, b in enumerate(i.table)}
    first_pre: dict = {}
    for c, d in enumerate(s.table):
        first_pre.setdefault(d, c)
    table = tuple(
        j.table[inverse[b]] if b in inverse else first_pre[k.table[b]] for b in range(i.cod)
    )
    return FinFunction(i.cod, s.dom, table)


def fill_in_monoidal_copure(sq: LiftingSquare, *, c: int, d: int) -> FinFunction:
    """Fill the square ``(f x id_C)`` against the projection ``D x E -> E``.

    ``c`` and ``d`` are the sizes of ``C`` and ``D``; the left leg must equal
    ``f x id_C`` for an injective ``f`` and the right leg
    ``discard_D x id_E``.  Points outside the image go to ``(0, h(b, c))``.
    """
    left, right, g, h = sq.left, sq.right, sq.top, sq.bottom
    if not all(m.theory == theory for m in (left, right, g, h)):
        raise SquareError("fill_in_monoidal_copure expects an fset square")
    if c <= 0 or left.dom % c or left.cod % c:
        raise SquareError(f"left leg is not of the form f x id_C with |C| = {c}")
    A, B = left.dom // c, left.cod // c
    f = FinFunction(A, B, tuple(left.table[a * c] // c for a in range(A)))
    if not equal(tensor(f, identity(c)), left):
        raise SquareError(f"left leg is not of the form f x id_C with |C| = {c}")
    if not is_injective(f):
        raise SquareError("f is not injective")
    E = right.cod
    if right.dom != d * E or not equal(tensor(discard(d), identity(E)), right):
        raise SquareError(f"right leg is not the projection D x E -> E with |D| = {d}")
    if not sq.commutes():
        raise SquareError("square does not commute")
    inverse = {b: a for a, b in enumerate(f.table)}
    if d == 0 and len(inverse) < B and c > 0:
        raise SquareError("D is empty but f is not surjective; no point of D to use")
    table = []
    for b in range(B):
        for cc in range(c):
            if b in inverse:
                table.append(g.table[inverse[b] * c + cc])
            else:
                table.append(h.table[b * c + cc])  # (0, e) sits at index e
    return FinFunction(B * c, d * E, tuple(table))
