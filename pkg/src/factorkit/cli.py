"""``factorkit`` command line.

Every verb prints one JSON document (sorted keys) on stdout.  Exit status is
0 on success, 1 for domain errors (unsupported family, square that does not
commute, size guard, a verification suite that found failures) and 2 for
malformed input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any

import numpy as np

from . import frel, fset, fstoch, oracle, quant
from .core import DEFAULT_TOL, THEORIES, FactorkitError, UnsupportedFamily, classify, compose, equal
from .serialize import (
    MalformedInput,
    factor_pair_to_doc,
    from_doc,
    square_from_doc,
    square_to_doc,
    to_doc,
)

SUITES = ("oracle", "roundtrip", "fill-in", "galois")
ROUNDTRIP_CASES = 100
FILL_IN_CASES = 100
GALOIS_SAMPLES = 50


class CommandError(FactorkitError):
    pass


def _read_json(path: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as e:
        raise MalformedInput(f"cannot read {path}: {e.strerror}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInput(f"invalid JSON in {path}: {e}") from e


def _check_theory(m, theory: str | None):
    if theory is not None and m.theory != theory:
        raise MalformedInput(f"document is {m.theory} but --theory {theory} was given")
    return m


def _morphism(args) -> Any:
    return _check_theory(from_doc(_read_json(args.input), args.tol), args.theory)


# -- verbs --------------------------------------------------------------------


def cmd_classify(args) -> dict:
    return classify(_morphism(args), args.tol).as_dict()


def cmd_factor(args) -> dict:
    m = _morphism(args)
    mod = {"fstoch": fstoch, "frel": frel, "fset": fset, "quant": quant}[m.theory]
    if args.mode == "purify" and m.theory == "fset":
        raise UnsupportedFamily(
            "fset has no completely mixed states, so purification is undefined; "
            "use --mode copurify"
        )
    fp = mod.purify(m) if args.mode == "purify" else mod.copurify(m)
    return factor_pair_to_doc(fp)


def _fill_square(sq):
    if sq.theory == "fstoch":
        return fstoch.fill_in(sq)
    if sq.theory == "quant":
        raise UnsupportedFamily("quant squares are not solved; hom-sets are not finite")
    if sq.theory == "frel":
        flags_l, flags_r = frel.classify(sq.left), frel.classify(sq.right)
        if flags_l.mixing and flags_r.pure:
            return frel.fill_in(sq)
    elif fset.is_injective(sq.left) and fset.is_surjective(sq.right):
        return fset.fill_in_plain(sq)
    return oracle.solve_square(sq).fill_in


def cmd_lift(args) -> dict:
    doc = _read_json(args.input)
    if isinstance(doc, dict) and {"top", "bottom"} <= doc.keys():
        sq = square_from_doc(doc, args.tol)
        _check_theory(sq.left, args.theory)
        if not sq.commutes(args.tol):
            raise FactorkitError("square does not commute")
        h = _fill_square(sq)
        return {
            "holds": h is not None,
            "fill_in": None if h is None else to_doc(h),
            "witness": None if h is not None else square_to_doc(sq),
        }
    if not isinstance(doc, dict) or not {"left", "right"} <= doc.keys():
        raise MalformedInput("lift expects a square or a {'left', 'right'} pair")
    f = _check_theory(from_doc(doc["left"], args.tol), args.theory)
    g = _check_theory(from_doc(doc["right"], args.tol), args.theory)
    if args.max_size < 1:
        raise CommandError("lifting checks need --max-size >= 1")
    cfg = oracle.BoundedLiftConfig(max_object=args.max_size, seed=args.seed)
    check = oracle.check_monoidal_lift if doc.get("monoidal") else oracle.check_lift
    verdict = check(f, g, cfg)
    return {
        "holds": verdict.holds,
        "fill_in": None,
        "witness": None if verdict.witness_square is None else square_to_doc(verdict.witness_square),
    }


def cmd_verify(args) -> dict:
    if args.theory is None:
        raise CommandError("verify needs --theory")
    report = run_suite(args.suite, args.theory, args.max_size, args.seed, args.tol)
    return report


def cmd_compare(args) -> dict:
    if args.theory not in (None, "frel"):
        raise UnsupportedFamily("the purity comparison is defined for frel only")
    return compare_definitions(args.max_size)


# -- suites -------------------------------------------------------------------


def compare_definitions(max_size: int) -> dict:
    rows = []
    summary = {
        "chiribella_within_selby_coecke": True,
        "selby_coecke_within_pure": True,
        "selby_coecke_is_pure_and_copure": True,
        "relations": 0,
    }
    for r in oracle.small_universe("frel", max_size):
        flags = frel.classify(r)
        ch, sc = frel.is_pure_chiribella(r), frel.is_pure_selby_coecke(r)
        rows.append({"relation": to_doc(r), "chiribella": ch, "selby_coecke": sc,
                     "pure": flags.pure, "copure": flags.copure})
        summary["relations"] += 1
        summary["chiribella_within_selby_coecke"] &= sc or not ch
        summary["selby_coecke_within_pure"] &= flags.pure or not sc
        summary["selby_coecke_is_pure_and_copure"] &= sc == (flags.pure and flags.copure)
    return {"rows": rows, "summary": summary}


def _report(suite: str, theory: str, seed: int) -> dict:
    return {"suite": suite, "theory": theory, "seed": seed, "cases": 0, "failures": [], "witnesses": []}


def _oracle_suite(theory: str, max_size: int, seed: int) -> dict:
    rep = _report("oracle", theory, seed)
    cfg = oracle.BoundedLiftConfig(max_object=2, seed=seed)
    if theory == "frel":
        checks = [
            ("pure", frel.is_partial_function, lambda r: oracle.check_family(r, "pure", cfg)),
            ("copure", frel.is_injective,
             lambda r: oracle.check_family(frel.converse(r), "pure", cfg)),
        ]
    elif theory == "fset":
        checks = [
            ("copure", fset.is_injective, lambda f: oracle.check_family(f, "copure", cfg)),
            ("discarding", fset.is_surjective, lambda f: oracle.check_family(f, "discarding", cfg)),
        ]
    else:
        raise UnsupportedFamily(f"{theory} hom-sets are not finite; the oracle suite needs frel or fset")
    for m in oracle.small_universe(theory, max_size):
        for prop, classifier, by_oracle in checks:
            rep["cases"] += 1
            verdict = by_oracle(m)
            expected = classifier(m)
            if verdict.holds != expected:
                rep["failures"].append({"morphism": to_doc(m), "property": prop,
                                        "classifier": expected, "oracle": verdict.holds})
            if not verdict.holds:
                sq = verdict.witness_square
                if oracle.solve_square(sq).holds:
                    rep["failures"].append({"morphism": to_doc(m), "property": prop,
                                            "reason": "witness square has a fill-in"})
                rep["witnesses"].append({"morphism": to_doc(m), "property": prop,
                                         "square": square_to_doc(sq)})
    return rep


def _roundtrip_suite(theory: str, max_size: int, seed: int, tol: float) -> dict:
    rep = _report("roundtrip", theory, seed)
    rng = np.random.default_rng(seed)
    lo = 1 if theory == "quant" else 0
    mod = {"fstoch": fstoch, "frel": frel, "fset": fset, "quant": quant}[theory]
    modes = ["copurify"] if theory == "fset" else ["purify", "copurify"]
    for case in range(ROUNDTRIP_CASES):
        dom = int(rng.integers(lo, max_size + 1))
        cod = int(rng.integers(max(lo, 1 if theory == "fset" and dom else 0), max_size + 1))
        m = oracle.gen_morphism(theory, dom, cod, int(rng.integers(0, 2**63)))
        for mode in modes:
            rep["cases"] += 1
            fp = getattr(mod, mode)(m)
            flags = (classify(fp.left, tol), classify(fp.right, tol))
            leg_ok = flags[1].pure if mode == "purify" else flags[0].copure
            if not (equal(compose(fp.right, fp.left), m, tol) and leg_ok):
                rep["failures"].append({"case": case, "mode": mode, "morphism": to_doc(m)})
    return rep


def _fill_in_suite(theory: str, max_size: int, seed: int) -> dict:
    rep = _report("fill-in", theory, seed)
    if theory == "quant":
        raise UnsupportedFamily("no square generator for quant")
    for case in range(FILL_IN_CASES):
        sq = oracle.gen_commuting_square(theory, seed * FILL_IN_CASES + case, max_dim=max_size)
        rep["cases"] += 1
        h = _fill_square(sq)
        if h is None or not sq.is_fill_in(h):
            rep["failures"].append({"case": case, "square": square_to_doc(sq)})
    return rep


def _galois_suite(theory: str, max_size: int, seed: int) -> dict:
    rep = _report("galois", theory, seed)
    universe = oracle.small_universe(theory, max_size)
    cfg = oracle.BoundedLiftConfig(max_object=1, seed=seed)
    laws = oracle.galois_laws(universe, cfg, samples=GALOIS_SAMPLES)
    rep["cases"] = laws.checks
    rep["failures"] = laws.violations
    return rep


def run_suite(suite: str, theory: str, max_size: int, seed: int, tol: float = DEFAULT_TOL) -> dict:
    if suite == "oracle":
        return _oracle_suite(theory, max_size, seed)
    if suite == "roundtrip":
        return _roundtrip_suite(theory, max_size, seed, tol)
    if suite == "fill-in":
        return _fill_in_suite(theory, max_size, seed)
    if suite == "galois":
        if theory not in oracle.ENUMERABLE:
            raise UnsupportedFamily(f"{theory} hom-sets are not finite; the galois suite needs frel or fset")
        return _galois_suite(theory, max_size, seed)
    raise CommandError(f"unknown suite {suite!r}")


# -- plumbing -----------------------------------------------------------------


def _default_seed() -> int:
    raw = os.environ.get("FACTORKIT_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"factorkit: FACTORKIT_SEED must be an integer, got {raw!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--theory", choices=THEORIES)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--seed", type=int, default=None, help="default: $FACTORKIT_SEED or 0")
    common.add_argument("--max-size", type=int, default=2)
    common.add_argument("--pretty", action="store_true", help="indented output; tables where it helps")

    p = argparse.ArgumentParser(prog="factorkit", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="verb", required=True)
    s = sub.add_parser("classify", parents=[common], help="pure/copure/mixing/discarding flags")
    s.add_argument("input", nargs="?", default="-")
    s = sub.add_parser("factor", parents=[common], help="purify or copurify a morphism")
    s.add_argument("input", nargs="?", default="-")
    s.add_argument("--mode", choices=("purify", "copurify"), required=True)
    s = sub.add_parser("lift", parents=[common], help="fill a square or decide a lifting property")
    s.add_argument("input", nargs="?", default="-")
    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("--suite", choices=SUITES, required=True)
    sub.add_parser("compare-definitions", parents=[common], help="purity notions on small relations")
    return p


VERBS = {
    "classify": cmd_classify,
    "factor": cmd_factor,
    "lift": cmd_lift,
    "verify": cmd_verify,
    "compare-definitions": cmd_compare,
}


def _pretty(verb: str, out: dict) -> str:
    if verb == "classify":
        return "\n".join(f"{k:<11}{'-' if v is None else v}" for k, v in sorted(out.items()))
    if verb == "compare-definitions":
        lines = [f"{'dom':>3} {'cod':>3}  {'pairs':<24} chiribella selby_coecke pure  copure"]
        for row in out["rows"]:
            r = from_doc(row["relation"])
            pairs = " ".join(f"{a}{b}" for a, b in r.pairs()) or "-"
            lines.append(
                f"{r.dom:>3} {r.cod:>3}  {pairs:<24} {row['chiribella']!s:<10} "
                f"{row['selby_coecke']!s:<12} {row['pure']!s:<5} {row['copure']!s}"
            )
        lines += [f"{k}: {v}" for k, v in sorted(out["summary"].items())]
        return "\n".join(lines)
    return json.dumps(out, sort_keys=True, indent=2)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed is None:
        args.seed = _default_seed()
    try:
        if args.max_size < 0:
            raise CommandError("--max-size must be >= 0")
        out = VERBS[args.verb](args)
    except MalformedInput as e:
        print(f"factorkit: malformed input: {e}", file=sys.stderr)
        return 2
    except FactorkitError as e:
        print(f"factorkit: {e}", file=sys.stderr)
        return 1
    print(_pretty(args.verb, out) if args.pretty else json.dumps(out, sort_keys=True))
    if args.verb == "verify" and out["failures"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
