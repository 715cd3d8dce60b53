"""Exhaustive lifting checks for the finite theories.

These searches are the ground truth that the pattern-based classifiers in
``frel`` and ``fset`` are validated against.  The monoidal lifting
relation quantifies over every object used to pad the two legs; here the
padding objects are bounded by ``max_object``, so a ``holds=True`` verdict
from :func:`check_monoidal_lift` is only a necessary condition.  A
``holds=False`` verdict always carries a commuting square that has no
fill-in.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from . import frel, fset, fstoch, quant
from .core import (
    LiftingSquare,
    NotEnumerable,
    SizeGuardError,
    SquareError,
    UnsupportedFamily,
    compose,
    discard,
    identity,
    mix,
    tensor,
)
from .kernels import fun_lift_witness, fun_solve, rel_lift_witness, rel_solve

ENUMERABLE = ("frel", "fset")

MAX_FILL_BITS = 20      # |X|*|Y| for frel fill-in candidates
MAX_PAIR_BITS = 27      # log2 of the number of (top, bottom) pairs


@dataclass(frozen=True)
class BoundedLiftConfig:
    max_object: int = 2
    max_square: int = 16
    seed: int = 0

    def __post_init__(self):
        if self.max_object < 1:
            raise ValueError("max_object must be >= 1")


@dataclass(frozen=True)
class LiftVerdict:
    holds: bool
    witness_square: Optional[LiftingSquare] = None
    fill_in: Any = None


def _require_enumerable(*ms):
    for m in ms:
        if m.theory not in ENUMERABLE:
            raise NotEnumerable(f"{m.theory} hom-sets are not finite; cannot enumerate")


def _guard_square(theory: str, nW: int, nX: int, nY: int, nZ: int, max_square: int):
    if max(nW, nX, nY, nZ) > max_square:
        raise SizeGuardError(f"square corner larger than max_square={max_square}")
    if theory == "frel":
        if nX * nY > MAX_FILL_BITS or nX * nZ > MAX_FILL_BITS:
            raise SizeGuardError(f"relation space too large: |X||Y|={nX * nY}, |X||Z|={nX * nZ}")
        if nW * nY + nX * nZ > MAX_PAIR_BITS:
            raise SizeGuardError("too many candidate squares to enumerate")
    else:
        limit = 1 << MAX_FILL_BITS
        if nY ** nX > limit or nZ ** nX > limit:
            raise SizeGuardError("function space too large to enumerate")
        if nY ** nW * nZ ** nX > 1 << MAX_PAIR_BITS:
            raise SizeGuardError("too many candidate squares to enumerate")


def solve_square(sq: LiftingSquare) -> LiftVerdict:
    """Search every ``h: X -> Y`` and return the lexicographically first fill-in."""
    _require_enumerable(sq.left)
    nX, nY = sq.left.cod, sq.right.dom
    if sq.theory == "frel" and nX * nY > MAX_FILL_BITS:
        raise SizeGuardError(f"|X||Y| = {nX * nY} exceeds {MAX_FILL_BITS}")
    if not sq.commutes():
        raise SquareError("square does not commute")
    if sq.theory == "frel":
        h = rel_solve(sq.left.cols(), sq.right.cols(), sq.top.cols(), sq.bottom.cols(), nX, nY)
        h = None if h is None else frel.Relation.from_cols(nX, nY, h)
    else:
        if nY ** nX > 1 << MAX_FILL_BITS:
            raise SizeGuardError("function space too large to enumerate")
        h = fun_solve(sq.left.table, sq.right.table, sq.top.table, sq.bottom.table, nX, nY)
        h = None if h is None else fset.FinFunction(nX, nY, h)
    if h is None:
        return LiftVerdict(holds=False, witness_square=sq)
    return LiftVerdict(holds=True, fill_in=h)


def check_lift(f, g, cfg: BoundedLiftConfig | None = None) -> LiftVerdict:
    """Decide ``f`` has the left lifting property against ``g`` over all commuting squares."""
    cfg = cfg or BoundedLiftConfig()
    _require_enumerable(f, g)
    if f.theory != g.theory:
        raise SquareError("legs from different theories")
    nW, nX, nY, nZ = f.dom, f.cod, g.dom, g.cod
    _guard_square(f.theory, nW, nX, nY, nZ, cfg.max_square)
    if f.theory == "frel":
        found = rel_lift_witness(f.cols(), nX, g.cols(), nY, nZ)
        if found is None:
            return LiftVerdict(holds=True)
        top = frel.Relation.from_cols(nW, nY, found[0])
        bottom = frel.Relation.from_cols(nX, nZ, found[1])
    else:
        found = fun_lift_witness(f.table, nX, g.table, nY, nZ)
        if found is None:
            return LiftVerdict(holds=True)
        top = fset.FinFunction(nW, nY, found[0])
        bottom = fset.FinFunction(nX, nZ, found[1])
    return LiftVerdict(holds=False, witness_square=LiftingSquare(left=f, right=g, top=top, bottom=bottom))


def check_monoidal_lift(f, g, cfg: BoundedLiftConfig | None = None) -> LiftVerdict:
    """``f (x) id_A`` against ``g (x) id_B`` for every ``A, B <= max_object``.

    Paddings are tried smallest first, so the returned witness is the one
    found at the smallest padding.
    """
    cfg = cfg or BoundedLiftConfig()
    _require_enumerable(f, g)
    pads = sorted(
        itertools.product(range(cfg.max_object + 1), repeat=2), key=lambda ab: (max(ab), ab)
    )
    for A, B in pads:
        verdict = check_lift(tensor(f, identity(A, f.theory)), tensor(g, identity(B, g.theory)), cfg)
        if not verdict.holds:
            return verdict
    return LiftVerdict(holds=True)


def _first_failure(pairs: Iterable, cfg: BoundedLiftConfig) -> LiftVerdict:
    for f, g in pairs:
        verdict = check_monoidal_lift(f, g, cfg)
        if not verdict.holds:
            return verdict
    return LiftVerdict(holds=True)


def in_right_complement(g, family: Iterable, cfg: BoundedLiftConfig | None = None) -> bool:
    return _first_failure(((f, g) for f in family), cfg or BoundedLiftConfig()).holds


def in_left_complement(f, family: Iterable, cfg: BoundedLiftConfig | None = None) -> bool:
    return _first_failure(((f, g) for g in family), cfg or BoundedLiftConfig()).holds


def mixed_states(theory: str, cfg: BoundedLiftConfig) -> list:
    # The state on the empty set is left out: against it nothing with an
    # empty column lifts, not even the empty relation.
    if theory == "fset":
        raise UnsupportedFamily("fset has no completely mixed states")
    return [mix(k, theory) for k in range(1, cfg.max_object + 1)]


def discarding_effects(theory: str, cfg: BoundedLiftConfig) -> list:
    return [discard(k, theory) for k in range(1, cfg.max_object + 1)]


def injections(cfg: BoundedLiftConfig) -> list:
    n = cfg.max_object + 1
    return [f for a in range(n) for b in range(n) for f in fset.all_functions(a, b) if fset.is_injective(f)]


def partial_functions(cfg: BoundedLiftConfig) -> list:
    n = cfg.max_object + 1
    return [r for a in range(n) for b in range(n) for r in frel.all_relations(a, b) if frel.is_partial_function(r)]


FAMILIES = ("pure", "copure", "mixing", "discarding")


def check_family(m, family: str, cfg: BoundedLiftConfig | None = None) -> LiftVerdict:
    """Bounded membership test of ``m`` in one of the four classes.

    ``pure``: right lifting against completely mixed states.  ``copure``:
    left lifting against discarding effects.  ``mixing`` (frel) and
    ``discarding`` (fset) are the complements of the pattern-defined pure
    and copure classes, tested against all partial functions or injections
    between sets of size at most ``max_object``.  The first failing verdict
    is returned, with its witness square.
    """
    cfg = cfg or BoundedLiftConfig()
    _require_enumerable(m)
    if family == "pure":
        pairs = ((s, m) for s in mixed_states(m.theory, cfg))
    elif family == "copure":
        pairs = ((m, e) for e in discarding_effects(m.theory, cfg))
    elif family == "mixing":
        if m.theory != "frel":
            raise UnsupportedFamily("the mixing oracle is implemented for frel")
        pairs = ((m, p) for p in partial_functions(cfg))
    elif family == "discarding":
        if m.theory != "fset":
            raise UnsupportedFamily("the discarding oracle is implemented for fset")
        pairs = ((i, m) for i in injections(cfg))
    else:
        raise ValueError(f"unknown family {family!r}")
    return _first_failure(pairs, cfg)


def pure_by_oracle(g, cfg: BoundedLiftConfig | None = None) -> bool:
    return check_family(g, "pure", cfg).holds


def copure_by_oracle(f, cfg: BoundedLiftConfig | None = None) -> bool:
    return check_family(f, "copure", cfg).holds


def mixing_by_oracle(m, cfg: BoundedLiftConfig | None = None) -> bool:
    return check_family(m, "mixing", cfg).holds


def discarding_by_oracle(g, cfg: BoundedLiftConfig | None = None) -> bool:
    return check_family(g, "discarding", cfg).holds


# -- Galois connection checks -------------------------------------------------


@dataclass
class GaloisReport:
    samples: int = 0
    checks: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def lift_table(universe: Sequence, cfg: BoundedLiftConfig) -> np.ndarray:
    n = len(universe)
    table = np.zeros((n, n), dtype=bool)
    for i, f in enumerate(universe):
        for j, g in enumerate(universe):
            table[i, j] = check_monoidal_lift(f, g, cfg).holds
    return table


def _right(table, A) -> frozenset:
    return frozenset(j for j in range(table.shape[1]) if all(table[i, j] for i in A))


def _left(table, A) -> frozenset:
    return frozenset(i for i in range(table.shape[0]) if all(table[i, j] for j in A))


def galois_laws(universe: Sequence, cfg: BoundedLiftConfig | None = None, samples: int = 50,
                table: np.ndarray | None = None) -> GaloisReport:
    """Check order reversal, the unit inclusions and idempotence on random subsets.

    Complements are taken inside ``universe`` with the bounded monoidal
    lifting relation.  Subsets ``A <= B`` are drawn from ``cfg.seed``.
    """
    cfg = cfg or BoundedLiftConfig(max_object=1)
    if table is None:
        table = lift_table(universe, cfg)
    rng = np.random.default_rng(cfg.seed)
    n = len(universe)
    report = GaloisReport()
    for s in range(samples):
        size_a = int(rng.integers(0, min(n, 6) + 1))
        A = frozenset(int(i) for i in rng.choice(n, size=size_a, replace=False))
        extra = int(rng.integers(0, min(n, 4) + 1))
        B = A | frozenset(int(i) for i in rng.choice(n, size=extra, replace=False))
        R, L = (lambda X: _right(table, X)), (lambda X: _left(table, X))
        checks = {
            "right complement reverses order": R(A) >= R(B),
            "left complement reverses order": L(A) >= L(B),
            "A within R(L(A))": A <= R(L(A)),
            "A within L(R(A))": A <= L(R(A)),
            "L(R(L(A))) == L(A)": L(R(L(A))) == L(A),
            "R(L(R(A))) == R(A)": R(L(R(A))) == R(A),
        }
        report.samples += 1
        for name, ok in checks.items():
            report.checks += 1
            if not ok:
                report.violations.append({"sample": s, "law": name, "A": sorted(A), "B": sorted(B)})
    return report


def small_universe(theory: str, max_size: int = 2) -> list:
    """Every morphism between sets of size at most ``max_size``."""
    _require_enumerable(type("m", (), {"theory": theory}))
    gen = frel.all_relations if theory == "frel" else fset.all_functions
    return [m for a in range(max_size + 1) for b in range(max_size + 1) for m in gen(a, b)]


# -- random generators --------------------------------------------------------


def _rational(rng) -> fstoch.Fraction:
    return fstoch.Fraction(int(rng.integers(1, 10)), int(rng.integers(1, 5)))


def gen_morphism(theory: str, dom: int, cod: int, seed: int):
    """A random morphism ``dom -> cod``; the same seed gives the same value."""
    rng = np.random.default_rng(seed)
    if theory == "fstoch":
        rows = [
            [_rational(rng) if rng.random() < 0.6 else 0 for _ in range(dom)] for _ in range(cod)
        ]
        return fstoch.StochMorphism(dom, cod, tuple(map(tuple, rows)))
    if theory == "frel":
        return frel.Relation(dom, cod, tuple(tuple(bool(x) for x in rng.random(dom) < 0.5) for _ in range(cod)))
    if theory == "fset":
        if cod == 0 and dom > 0:
            raise SquareError("there is no function from a nonempty set to the empty set")
        return fset.FinFunction(dom, cod, tuple(int(x) for x in rng.integers(0, max(cod, 1), size=dom)))
    if theory == "quant":
        r = int(rng.integers(1, dom * cod + 1))
        ops = [
            rng.standard_normal((cod, dom)) + 1j * rng.standard_normal((cod, dom)) for _ in range(r)
        ]
        return quant.from_kraus(ops, dom, cod)
    raise UnsupportedFamily(f"unknown theory {theory!r}")


def _pattern_mixing(rng, W: int, X: int) -> list[int]:
    """Owner ``w`` of each row ``x``: onto ``range(W)``."""
    owners = list(rng.permutation(W)) + [int(rng.integers(0, W)) for _ in range(X - W)]
    return [int(o) for o in rng.permutation(owners)]


def _pattern_pure(rng, Y: int, Z: int) -> list:
    return [int(rng.integers(0, Z)) if Z and rng.random() < 0.8 else None for _ in range(Y)]


def gen_mixing(theory: str, W: int, X: int, seed: int):
    if X < W or (W == 0 and X > 0):
        raise ValueError("a mixing map W -> X needs X >= W and W > 0 unless X = 0")
    rng = np.random.default_rng(seed)
    owners = _pattern_mixing(rng, W, X)
    if theory == "fstoch":
        cells = {(x, w): _rational(rng) for x, w in enumerate(owners)}
        return fstoch._build(W, X, cells)
    return frel.Relation.from_pairs(W, X, ((w, x) for x, w in enumerate(owners)))


def gen_pure(theory: str, Y: int, Z: int, seed: int):
    rng = np.random.default_rng(seed)
    targets = _pattern_pure(rng, Y, Z)
    if theory == "fstoch":
        return fstoch._build(Y, Z, {(z, y): _rational(rng) for y, z in enumerate(targets) if z is not None})
    return frel.Relation.from_pairs(Y, Z, ((y, z) for y, z in enumerate(targets) if z is not None))


def gen_injection(W: int, X: int, seed: int) -> fset.FinFunction:
    rng = np.random.default_rng(seed)
    return fset.FinFunction(W, X, tuple(int(v) for v in rng.permutation(X)[:W]))


def gen_surjection(Y: int, Z: int, seed: int) -> fset.FinFunction:
    rng = np.random.default_rng(seed)
    values = list(range(Z)) + [int(rng.integers(0, Z)) for _ in range(Y - Z)]
    return fset.FinFunction(Y, Z, tuple(int(v) for v in rng.permutation(values)))


def gen_commuting_square(theory: str, seed: int, max_dim: int = 3) -> LiftingSquare:
    """A square that commutes by construction, with legs that admit a fill-in.

    fstoch/frel: mixing left leg, pure right leg.  fset: injective left leg,
    surjective right leg.  The top and bottom are ``h . left`` and
    ``right . h`` for a random ``h``.
    """
    rng = np.random.default_rng(seed)
    sub = [int(s) for s in rng.integers(0, 2**31, size=5)]
    if theory in ("fstoch", "frel"):
        W = int(rng.integers(1, max_dim + 1))
        X = int(rng.integers(W, max_dim + 1))
        Y = int(rng.integers(0, max_dim + 1))
        Z = int(rng.integers(0, max_dim + 1))
        left = gen_mixing(theory, W, X, sub[0])
        right = gen_pure(theory, Y, Z, sub[1])
        h = gen_morphism(theory, X, Y, sub[2])
    elif theory == "fset":
        Z = int(rng.integers(0, max_dim + 1))
        Y = int(rng.integers(Z, max_dim + 1)) if Z else 0
        X = int(rng.integers(0, max_dim + 1)) if Y else 0
        W = int(rng.integers(0, X + 1))
        left = gen_injection(W, X, sub[0])
        right = gen_surjection(Y, Z, sub[1])
        h = gen_morphism(theory, X, Y, sub[2])
    else:
        raise NotEnumerable(f"no square generator for {theory}")
    return LiftingSquare(left=left, right=right, top=compose(h, left), bottom=compose(right, h))
