"""Finite relations: the possibilistic theory.

A relation ``r: A -> B`` is a ``B x A`` boolean matrix, ``adj[b][a]`` true
iff ``a`` is related to ``b``.  The column view ``cols()`` gives, for each
source element, the bitmask of its targets; the lifting kernels work on it.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .core import (
    ClassFlags,
    FactorPair,
    LiftingSquare,
    ObjectMismatch,
    SquareError,
    check_dim,
)

theory = "frel"


@dataclass(frozen=True)
class Relation:
    dom: int
    cod: int
    adj: tuple  # cod rows of dom bools

    theory = theory

    def __post_init__(self):
        check_dim(self.dom, theory)
        check_dim(self.cod, theory)
        rows = tuple(tuple(bool(x) for x in row) for row in self.adj)
        if len(rows) != self.cod or any(len(r) != self.dom for r in rows):
            raise ObjectMismatch(f"adjacency must be a {self.cod}x{self.dom} matrix")
        object.__setattr__(self, "adj", rows)

    @classmethod
    def from_pairs(cls, dom: int, cod: int, pairs: Iterable[tuple[int, int]]) -> "Relation":
        rows = [[False] * dom for _ in range(cod)]
        for a, b in pairs:
            if not (0 <= a < dom and 0 <= b < cod):
                raise ObjectMismatch(f"pair {(a, b)} out of range for {dom}->{cod}")
            rows[b][a] = True
        return cls(dom, cod, tuple(map(tuple, rows)))

    @classmethod
    def from_cols(cls, dom: int, cod: int, cols) -> "Relation":
        return cls(dom, cod, tuple(tuple(bool(cols[a] >> b & 1) for a in range(dom)) for b in range(cod)))

    def pairs(self) -> frozenset:
        return frozenset((a, b) for b, row in enumerate(self.adj) for a, x in enumerate(row) if x)

    def cols(self) -> tuple:
        return tuple(
            sum(1 << b for b in range(self.cod) if self.adj[b][a]) for a in range(self.dom)
        )

    def image(self, a: int) -> list[int]:
        return [b for b in range(self.cod) if self.adj[b][a]]

    def preimage(self, b: int) -> list[int]:
        return [a for a, x in enumerate(self.adj[b]) if x]

    def __len__(self):
        return sum(sum(row) for row in self.adj)

    def __repr__(self):
        return f"Relation({self.dom}->{self.cod}, {sorted(self.pairs())})"


def all_relations(dom: int, cod: int) -> Iterator[Relation]:
    """Every relation ``dom -> cod``, in increasing order of their column masks."""
    import itertools

    for cols in itertools.product(range(1 << cod), repeat=dom):
        yield Relation.from_cols(dom, cod, cols)


def identity(a: int) -> Relation:
    return Relation.from_pairs(a, a, ((i, i) for i in range(a)))


def swap(a: int, b: int) -> Relation:
    return Relation.from_pairs(a * b, a * b, ((i * b + j, j * a + i) for i in range(a) for j in range(b)))


def mix(a: int) -> Relation:
    """The point related to every element of ``a``."""
    return Relation.from_pairs(1, a, ((0, i) for i in range(a)))


def discard(a: int) -> Relation:
    return Relation.from_pairs(a, 1, ((i, 0) for i in range(a)))


def compose(g: Relation, f: Relation) -> Relation:
    if f.cod != g.dom:
        raise ObjectMismatch(f"cannot compose: cod(f)={f.cod} but dom(g)={g.dom}")
    fp, gp = f.pairs(), g.pairs()
    return Relation.from_pairs(f.dom, g.cod, {(a, c) for a, b in fp for b2, c in gp if b == b2})


def tensor(f: Relation, g: Relation) -> Relation:
    return Relation.from_pairs(
        f.dom * g.dom,
        f.cod * g.cod,
        ((a * g.dom + c, b * g.cod + d) for a, b in f.pairs() for c, d in g.pairs()),
    )


def converse(r: Relation) -> Relation:
    return Relation.from_pairs(r.cod, r.dom, ((b, a) for a, b in r.pairs()))


def equal(f: Relation, g: Relation, tol: float = 0.0) -> bool:
    return (f.dom, f.cod) == (g.dom, g.cod) and f.adj == g.adj


def _out_degrees(r: Relation) -> list[int]:
    return [sum(r.adj[b][a] for b in range(r.cod)) for a in range(r.dom)]


def _in_degrees(r: Relation) -> list[int]:
    return [sum(row) for row in r.adj]


def is_partial_function(r: Relation) -> bool:
    return all(d <= 1 for d in _out_degrees(r))


def is_injective(r: Relation) -> bool:
    """Every target is related to at most one source."""
    return all(d <= 1 for d in _in_degrees(r))


def classify(r: Relation) -> ClassFlags:
    out, inn = _out_degrees(r), _in_degrees(r)
    return ClassFlags(
        pure=all(d <= 1 for d in out),
        copure=all(d <= 1 for d in inn),
        mixing=all(d == 1 for d in inn) and all(d >= 1 for d in out),
        discarding=all(d == 1 for d in out) and all(d >= 1 for d in inn),
    )


def is_pure_chiribella(r: Relation) -> bool:
    """Relates at most one pair of elements."""
    return len(r) <= 1


def is_pure_selby_coecke(r: Relation) -> bool:
    """A partial injection."""
    return is_partial_function(r) and is_injective(r)


def purify(r: Relation) -> FactorPair:
    """``r: A -> B`` as ``p . (id_A (x) mix_B)``; ``p`` sends ``(a, b)`` to ``b`` iff ``a r b``."""
    A, B = r.dom, r.cod
    right = Relation.from_pairs(A * B, B, ((a * B + b, b) for a, b in r.pairs()))
    left = tensor(identity(A), mix(B))
    return FactorPair(left=left, right=right, ancilla=B)


def copurify(r: Relation) -> FactorPair:
    """``r: A -> B`` as ``(discard_A (x) id_B) . c`` with ``c`` relating ``a`` to ``(a, b)`` iff ``a r b``."""
    A, B = r.dom, r.cod
    left = Relation.from_pairs(A, A * B, ((a, a * B + b) for a, b in r.pairs()))
    right = tensor(discard(A), identity(B))
    return FactorPair(left=left, right=right, ancilla=A)


def _purify_nonempty(r: Relation) -> FactorPair:
    """:func:`purify` with a one-point ancilla when the codomain is empty."""
    if r.cod:
        return purify(r)
    return FactorPair(left=identity(r.dom), right=Relation.from_pairs(r.dom, 0, ()), ancilla=1)


def fill_in(sq: LiftingSquare) -> Relation:
    """Fill-in for a square whose left leg is mixing and right leg is a partial function.

    Top and bottom are purified first; the reduced square has mixing
    ``m: W->X``, ``m2: W->Y`` and partial functions ``p: X->Z``,
    ``p2: Y->Z``, filled by::

        h = {(x, y) : src(x) & src(y) and (not tgt(y) or tgt(x) & tgt(y))}
    """
    m, g, a, b = sq.left, sq.right, sq.top, sq.bottom
    if not all(s.theory == theory for s in (m, g, a, b)):
        raise SquareError("fill_in expects an frel square")
    flags_m, flags_g = classify(m), classify(g)
    if not flags_m.mixing:
        raise SquareError("left leg is not mixing (surjective, injective and total)")
    if not flags_g.pure:
        raise SquareError("right leg is not a partial function")
    if not sq.commutes():
        raise SquareError("square does not commute")

    fa, fb = _purify_nonempty(a), _purify_nonempty(b)
    m2 = fa.left
    p2 = compose(g, fa.right)
    m1 = compose(fb.left, m)
    p1 = fb.right
    h = _fill_reduced(m1, m2, p2, p1)
    return compose(fa.right, compose(h, fb.left))


def _fill_reduced(m: Relation, m2: Relation, p2: Relation, p: Relation) -> Relation:
    X, Y = m.cod, m2.cod
    src_x = [set(m.preimage(x)) for x in range(X)]
    src_y = [set(m2.preimage(y)) for y in range(Y)]
    tgt_x = [set(p.image(x)) for x in range(X)]
    tgt_y = [set(p2.image(y)) for y in range(Y)]
    pairs = [
        (x, y)
        for x in range(X)
        for y in range(Y)
        if src_x[x] & src_y[y] and (tgt_x[x] & tgt_y[y] or not tgt_y[y])
    ]
    return Relation.from_pairs(X, Y, pairs)
