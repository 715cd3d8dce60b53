"""Compare the compiled and pure-Python lifting kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Each workload is a single exhaustive lift decision; the table reports the
best time over ``--repeat`` runs and checks that both backends agree.
"""
import argparse
import importlib
import time

from factorkit import _lift_kernels_py as py
from factorkit import frel, fset
from factorkit.core import identity, mix, tensor


def workloads():
    pf = frel.Relation.from_pairs(4, 4, [(0, 1), (1, 1), (2, 3)])
    nonpf = frel.Relation.from_pairs(2, 2, [(0, 0), (0, 1), (1, 1)])
    m2 = tensor(mix(2, "frel"), identity(2, "frel"))
    yield "rel: mix(2)xid2 vs partial fn 4->4", "rel", m2, pf
    yield "rel: mix(2)xid2 vs relation 2->2 x id2", "rel", m2, tensor(nonpf, identity(2, "frel"))
    yield "rel: id3 vs id3", "rel", identity(3, "frel"), identity(3, "frel")
    inj = fset.function([0, 2], 4)
    surj = fset.function([0, 1, 1, 2, 0], 3)
    yield "fun: injection 2->4 vs surjection 5->3", "fun", inj, surj
    yield "fun: constant 3->1 vs id5", "fun", fset.function([0, 0, 0], 1), identity(5, "fset")


def run(impl, kind, f, g):
    if kind == "rel":
        return impl.rel_lift_witness(f.cols(), f.cod, g.cols(), g.dom, g.cod)
    return impl.fun_lift_witness(f.table, f.cod, g.table, g.dom, g.cod)


def best_of(repeat, fn):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    try:
        cy = importlib.import_module("factorkit._lift_kernels")
    except ImportError:
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")

    print(f"{'workload':<42} {'python':>10} {'cython':>10} {'speedup':>8}")
    for name, kind, f, g in workloads():
        tp, rp = best_of(args.repeat, lambda: run(py, kind, f, g))
        tc, rc = best_of(args.repeat, lambda: run(cy, kind, f, g))
        assert rp == rc, f"backends disagree on {name}"
        print(f"{name:<42} {tp * 1e3:>8.2f}ms {tc * 1e3:>8.2f}ms {tp / max(tc, 1e-9):>7.0f}x")


if __name__ == "__main__":
    main()
