"""Nonnegative rational matrices: the probabilistic theory.

Columns are indexed by the domain and rows by the codomain.  Entries are
:class:`fractions.Fraction` so every factorisation and fill-in is checked
by exact equality.  No column normalisation is imposed, so the completely
mixed state on ``n`` points is the all-ones column.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import (
    ClassFlags,
    FactorPair,
    InvalidMorphism,
    LiftingSquare,
    ObjectMismatch,
    SquareError,
    check_dim,
)

theory = "fstoch"

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class StochMorphism:
    dom: int
    cod: int
    entries: tuple  # cod rows of dom Fractions

    theory = theory

    def __post_init__(self):
        check_dim(self.dom, theory)
        check_dim(self.cod, theory)
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        if len(rows) != self.cod or any(len(r) != self.dom for r in rows):
            raise ObjectMismatch(f"entries must be a {self.cod}x{self.dom} matrix")
        if any(x < 0 for r in rows for x in r):
            raise InvalidMorphism("fstoch entries must be nonnegative")
        object.__setattr__(self, "entries", rows)

    def __getitem__(self, idx):
        row, col = idx
        return self.entries[row][col]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.entries)
        return f"StochMorphism({self.dom}->{self.cod}: [{body}])"


def matrix(rows: Sequence[Sequence], dom: int | None = None) -> StochMorphism:
    """Build a morphism from a list of rows (the codomain is ``len(rows)``)."""
    rows = [list(r) for r in rows]
    if dom is None:
        if not rows:
            raise ObjectMismatch("cannot infer the domain of an empty matrix; pass dom=")
        dom = len(rows[0])
    return StochMorphism(dom, len(rows), tuple(tuple(r) for r in rows))


def _build(dom: int, cod: int, cells: dict) -> StochMorphism:
    rows = [[_ZERO] * dom for _ in range(cod)]
    for (i, j), v in cells.items():
        rows[i][j] = v
    return StochMorphism(dom, cod, tuple(map(tuple, rows)))


def zeros(dom: int, cod: int) -> StochMorphism:
    return _build(dom, cod, {})


def identity(a: int) -> StochMorphism:
    return _build(a, a, {(i, i): _ONE for i in range(a)})


def swap(a: int, b: int) -> StochMorphism:
    # (i, j) in a x b  ->  (j, i) in b x a
    return _build(a * b, a * b, {(j * a + i, i * b + j): _ONE for i in range(a) for j in range(b)})


def mix(a: int) -> StochMorphism:
    return _build(1, a, {(i, 0): _ONE for i in range(a)})


def discard(a: int) -> StochMorphism:
    return _build(a, 1, {(0, i): _ONE for i in range(a)})


def compose(g: StochMorphism, f: StochMorphism) -> StochMorphism:
    if f.cod != g.dom:
        raise ObjectMismatch(f"cannot compose: cod(f)={f.cod} but dom(g)={g.dom}")
    out = [[_ZERO] * f.dom for _ in range(g.cod)]
    fe = f.entries
    for i, grow in enumerate(g.entries):
        orow = out[i]
        for k, gik in enumerate(grow):
            if not gik:
                continue
            for j, fkj in enumerate(fe[k]):
                if fkj:
                    orow[j] += gik * fkj
    return StochMorphism(f.dom, g.cod, tuple(map(tuple, out)))


def tensor(f: StochMorphism, g: StochMorphism) -> StochMorphism:
    cells = {}
    for b, frow in enumerate(f.entries):
        for a, x in enumerate(frow):
            if not x:
                continue
            for d, grow in enumerate(g.entries):
                for c, y in enumerate(grow):
                    if y:
                        cells[(b * g.cod + d, a * g.dom + c)] = x * y
    return _build(f.dom * g.dom, f.cod * g.cod, cells)


def transpose(m: StochMorphism) -> StochMorphism:
    return _build(
        m.cod, m.dom, {(j, i): v for i, row in enumerate(m.entries) for j, v in enumerate(row) if v}
    )


def equal(f: StochMorphism, g: StochMorphism, tol: float = 0.0) -> bool:
    return (f.dom, f.cod) == (g.dom, g.cod) and f.entries == g.entries


def _row_counts(m: StochMorphism) -> list[int]:
    return [sum(1 for x in row if x) for row in m.entries]


def _col_counts(m: StochMorphism) -> list[int]:
    counts = [0] * m.dom
    for row in m.entries:
        for j, x in enumerate(row):
            if x:
                counts[j] += 1
    return counts


def is_pure(m: StochMorphism) -> bool:
    return all(c <= 1 for c in _col_counts(m))


def is_copure(m: StochMorphism) -> bool:
    return all(c <= 1 for c in _row_counts(m))


def is_mixing(m: StochMorphism) -> bool:
    return all(c == 1 for c in _row_counts(m)) and all(c >= 1 for c in _col_counts(m))


def is_discarding(m: StochMorphism) -> bool:
    return all(c == 1 for c in _col_counts(m)) and all(c >= 1 for c in _row_counts(m))


def classify(m: StochMorphism) -> ClassFlags:
    """Classify by nonzero pattern.

    pure: at most one nonzero per column.  copure: at most one per row.
    mixing: exactly one per row and at least one per column.
    discarding: exactly one per column and at least one per row.
    """
    rows, cols = _row_counts(m), _col_counts(m)
    return ClassFlags(
        pure=all(c <= 1 for c in cols),
        copure=all(c <= 1 for c in rows),
        mixing=all(c == 1 for c in rows) and all(c >= 1 for c in cols),
        discarding=all(c == 1 for c in cols) and all(c >= 1 for c in rows),
    )


def purify(f: StochMorphism) -> FactorPair:
    """Factor ``f: I -> J`` as ``p . (id_I (x) mix_J)`` with ``p`` pure.

    ``p`` sends column ``(i, j)`` to row ``j`` with weight ``f[j][i]``.
    """
    I, J = f.dom, f.cod
    cells = {(j, i * J + j): f.entries[j][i] for i in range(I) for j in range(J) if f.entries[j][i]}
    right = _build(I * J, J, cells)
    left = tensor(identity(I), mix(J))
    return FactorPair(left=left, right=right, ancilla=J)


def copurify(f: StochMorphism) -> FactorPair:
    """Factor ``f: I -> J`` as ``(id_J (x) discard_I) . c`` with ``c`` copure.

    Obtained by transposing the purification of the transpose of ``f``.
    """
    dual = purify(transpose(f))
    return FactorPair(left=transpose(dual.right), right=transpose(dual.left), ancilla=f.dom)


def _purify_nonempty(f: StochMorphism) -> FactorPair:
    """Like :func:`purify` but with a one-point ancilla when the codomain is empty,
    so that the mixing factor still has an entry in every column."""
    if f.cod:
        return purify(f)
    return FactorPair(left=identity(f.dom), right=zeros(f.dom, 0), ancilla=1)


def fill_in(sq: LiftingSquare) -> StochMorphism:
    """Diagonal fill-in for a square with a mixing left leg and a pure right leg.

    Top and bottom are first purified, which reduces the problem to a square
    whose top is mixing and whose bottom is pure; that square is filled by
    distributing each block weight ``c[w, z]`` proportionally.
    """
    m, p_right, a, b = sq.left, sq.right, sq.top, sq.bottom
    if not all(s.theory == theory for s in (m, p_right, a, b)):
        raise SquareError("fill_in expects an fstoch square")
    if not is_mixing(m):
        raise SquareError("left leg is not mixing")
    if not is_pure(p_right):
        raise SquareError("right leg is not pure")
    if not sq.commutes():
        raise SquareError("square does not commute")

    fa, fb = _purify_nonempty(a), _purify_nonempty(b)
    top = fa.left                           # W -> W x Y, mixing
    right = compose(p_right, fa.right)      # W x Y -> Z, pure
    left = compose(fb.left, m)              # W -> X x Z, mixing
    bottom = fb.right                       # X x Z -> Z, pure
    h = _fill_reduced(left, top, right, bottom)
    return compose(fa.right, compose(h, fb.left))


def _fill_reduced(m, m2, p2, p) -> StochMorphism:
    """Fill ``m: W->X``, ``m2: W->Y`` (mixing) against ``p2: Y->Z``, ``p: X->Z`` (pure)."""
    W, X, Y, Z = m.dom, m.cod, m2.cod, p.cod
    me, m2e, pe, p2e = m.entries, m2.entries, p.entries, p2.entries

    def owner(e, row):  # the unique nonzero column of a mixing row
        return next(w for w, v in enumerate(e[row]) if v)

    def target(e, col, nrows):  # the unique nonzero row of a pure column, or None
        return next((z for z in range(nrows) if e[z][col]), None)

    x_owner = [owner(me, x) for x in range(X)]
    x_target = [target(pe, x, Z) for x in range(X)]
    cells = {}
    blocks: dict = {}
    for y in range(Y):
        w = owner(m2e, y)
        z = target(p2e, y, Z)
        if z is None:
            x = min(x for x in range(X) if me[x][w])
            cells[(y, x)] = m2e[y][w] / me[x][w]
        else:
            blocks.setdefault((w, z), []).append(y)
    for (w, z), ys in blocks.items():
        c = sum((p2e[z][y] * m2e[y][w] for y in ys), _ZERO)
        for x in range(X):
            if x_owner[x] == w and x_target[x] == z:
                for y in ys:
                    cells[(y, x)] = pe[z][x] * m2e[y][w] / c
    return _build(X, Y, cells)

