"""JSON morphism documents.

A document is ``{"theory": t, "dom": n, "cod": m, "payload": ...}`` where the
payload is a row-major array whose shape is fixed by ``dom`` and ``cod``:

=========  ==================================================================
fstoch     ``cod*dom`` rational strings ``"p/q"`` (integers are accepted)
frel       ``cod*dom`` entries 0/1; entry ``(y, x)`` is 1 iff ``x`` relates to ``y``
fset       ``dom`` integers in ``[0, cod)``
quant      ``(dom*cod)**2`` pairs ``[re, im]`` forming the Choi matrix
=========  ==================================================================

Parsers also accept the nested list-of-rows form.  Writers always emit the
flat form, so ``loads(dumps(m))`` is equal to ``m``.
"""
from __future__ import annotations

import json
import numbers
from fractions import Fraction
from typing import Any

import numpy as np

from . import frel, fset, fstoch, quant
from .core import DEFAULT_TOL, THEORIES, FactorkitError, FactorPair, LiftingSquare


class MalformedInput(FactorkitError):
    """The input is not a well-formed morphism document."""


def _flatten(payload: Any, rows: int, cols: int, what: str) -> list:
    if not isinstance(payload, list):
        raise MalformedInput(f"{what} payload must be an array")
    if payload and all(isinstance(r, list) for r in payload) and what != "quant":
        if len(payload) != rows or any(len(r) != cols for r in payload):
            raise MalformedInput(f"{what} payload must be {rows} rows of {cols} entries")
        payload = [v for r in payload for v in r]
    if len(payload) != rows * cols:
        raise MalformedInput(f"{what} payload must have {rows * cols} entries, got {len(payload)}")
    return payload


def _rational(v: Any) -> Fraction:
    if isinstance(v, bool):
        raise MalformedInput(f"not a rational: {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise MalformedInput(f"not a rational string 'p/q': {v!r}")


def _complex(v: Any) -> complex:
    if (
        isinstance(v, list)
        and len(v) == 2
        and all(isinstance(x, numbers.Real) and not isinstance(x, bool) for x in v)
    ):
        return complex(float(v[0]), float(v[1]))
    raise MalformedInput(f"complex entries are [re, im] pairs, got {v!r}")


def _dim(doc: dict, key: str) -> int:
    n = doc.get(key)
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise MalformedInput(f"{key!r} must be a natural number, got {n!r}")
    return n


def from_doc(doc: Any, tol: float = DEFAULT_TOL):
    """Parse a document (already decoded from JSON) into a morphism."""
    if not isinstance(doc, dict):
        raise MalformedInput("a morphism document must be a JSON object")
    missing = {"theory", "dom", "cod", "payload"} - doc.keys()
    if missing:
        raise MalformedInput(f"morphism document lacks {sorted(missing)}")
    theory = doc["theory"]
    if theory not in THEORIES:
        raise MalformedInput(f"unknown theory {theory!r}")
    dom, cod, payload = _dim(doc, "dom"), _dim(doc, "cod"), doc["payload"]
    try:
        if theory == "fstoch":
            flat = [_rational(v) for v in _flatten(payload, cod, dom, theory)]
            return fstoch.StochMorphism(dom, cod, tuple(tuple(flat[r * dom:(r + 1) * dom]) for r in range(cod)))
        if theory == "frel":
            flat = _flatten(payload, cod, dom, theory)
            if any(v not in (0, 1) or isinstance(v, float) for v in flat):
                raise MalformedInput("frel entries must be 0 or 1")
            return frel.Relation(dom, cod, tuple(tuple(bool(v) for v in flat[r * dom:(r + 1) * dom]) for r in range(cod)))
        if theory == "fset":
            if not isinstance(payload, list):
                raise MalformedInput("fset payload must be an array")
            return fset.FinFunction(dom, cod, tuple(payload))
        n = dom * cod
        flat = [_complex(v) for v in _flatten(_unnest_quant(payload, n), n, n, theory)]
        return quant.CPMap(dom, cod, np.array(flat, dtype=complex).reshape(n, n), tol=tol)
    except MalformedInput:
        raise
    except FactorkitError as e:
        raise MalformedInput(str(e)) from e


def _unnest_quant(payload: Any, n: int) -> Any:
    # rows of [re, im] pairs; a flat payload holds the pairs directly
    if isinstance(payload, list) and len(payload) == n and all(
        isinstance(r, list) and r and isinstance(r[0], list) for r in payload
    ):
        if any(len(r) != n for r in payload):
            raise MalformedInput(f"quant payload must be {n} rows of {n} entries")
        return [v for r in payload for v in r]
    return payload


def _num(x: float) -> float:
    x = float(x)
    if x == 0:
        return 0.0  # no negative zero in the output
    return x


def to_doc(m) -> dict:
    if m.theory == "fstoch":
        payload = [f"{v.numerator}/{v.denominator}" for row in m.entries for v in row]
    elif m.theory == "frel":
        payload = [int(v) for row in m.adj for v in row]
    elif m.theory == "fset":
        payload = list(m.table)
    else:
        payload = [[_num(z.real), _num(z.imag)] for z in np.asarray(m.choi).reshape(-1)]
    return {"theory": m.theory, "dom": m.dom, "cod": m.cod, "payload": payload}


def square_from_doc(doc: Any, tol: float = DEFAULT_TOL) -> LiftingSquare:
    if not isinstance(doc, dict) or not {"left", "right", "top", "bottom"} <= doc.keys():
        raise MalformedInput("a square document needs 'left', 'right', 'top' and 'bottom'")
    legs = {k: from_doc(doc[k], tol) for k in ("left", "right", "top", "bottom")}
    try:
        return LiftingSquare(**legs)
    except FactorkitError as e:
        raise MalformedInput(str(e)) from e


def square_to_doc(sq: LiftingSquare) -> dict:
    return {k: to_doc(getattr(sq, k)) for k in ("left", "right", "top", "bottom")}


def factor_pair_to_doc(fp: FactorPair) -> dict:
    return {"left": to_doc(fp.left), "right": to_doc(fp.right), "ancilla": fp.ancilla}


def loads(text: str, tol: float = DEFAULT_TOL):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInput(f"invalid JSON: {e}") from e
    return from_doc(doc, tol)


def dumps(m) -> str:
    return json.dumps(to_doc(m), sort_keys=True)
