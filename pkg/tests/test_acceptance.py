"""Acceptance criteria, each at its stated tolerance and runtime budget.

The conftest prints one PASS/FAIL line per criterion at the end of the run.
"""
import time

import numpy as np
import pytest

from factorkit import frel, fset, fstoch, oracle, quant
from factorkit.core import compose, mix, tensor, identity

import reference as ref


class Budget:
    def __init__(self, request, limit):
        self.request, self.limit = request, limit

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        self.request.node.user_properties.append(("elapsed", self.elapsed))
        return False

    def check(self):
        assert self.elapsed < self.limit, f"took {self.elapsed:.2f}s, budget {self.limit}s"


@pytest.mark.criterion(1, "fstoch purify/copurify round-trip, 200 matrices", 2)
def test_fstoch_factorisation_roundtrip(request):
    rng = np.random.default_rng(20240601)
    with Budget(request, 2) as b:
        for _ in range(200):
            dom, cod = (int(x) for x in rng.integers(1, 6, size=2))
            f = oracle.gen_morphism("fstoch", dom, cod, int(rng.integers(2**63)))
            fp = fstoch.purify(f)
            assert fstoch.equal(compose(fp.right, fp.left), f)
            assert fstoch.is_pure(fp.right)
            assert fstoch.is_mixing(fp.left)
            assert fp.ancilla == cod
            fc = fstoch.copurify(f)
            assert fstoch.equal(compose(fc.right, fc.left), f)
            assert fstoch.is_copure(fc.left) and fstoch.is_discarding(fc.right)
    b.check()


@pytest.mark.criterion(2, "fstoch fill-in, 200 mixing/pure squares", 2)
def test_fstoch_fill_in(request):
    with Budget(request, 2) as b:
        for seed in range(200):
            sq = oracle.gen_commuting_square("fstoch", seed, max_dim=5)
            assert fstoch.is_mixing(sq.left) and fstoch.is_pure(sq.right)
            h = fstoch.fill_in(sq)
            assert fstoch.equal(compose(h, sq.left), sq.top)
            assert fstoch.equal(compose(sq.right, h), sq.bottom)
    b.check()


@pytest.mark.criterion(3, "frel brute-force purity agrees with partial functions, sizes <= 2", 60)
def test_frel_oracle_equivalence(request):
    cfg = oracle.BoundedLiftConfig(max_object=2)
    cases = 0
    with Budget(request, 60) as b:
        for a in range(3):
            for c in range(3):
                for r in frel.all_relations(a, c):
                    pairs = ref.pairs_of(r)
                    assert oracle.pure_by_oracle(r, cfg) == ref.is_partial_function(pairs) == frel.classify(r).pure
                    assert oracle.pure_by_oracle(frel.converse(r), cfg) == ref.is_injective_rel(pairs)
                    assert frel.classify(r).copure == ref.is_injective_rel(pairs)
                    cases += 1
    assert cases == 31
    b.check()


@pytest.mark.criterion(4, "fset copure = injective, discarding = surjective, sizes <= 3", 30)
def test_fset_weak_factorisation(request):
    cfg = oracle.BoundedLiftConfig(max_object=2)
    with Budget(request, 30) as b:
        for a in range(4):
            for c in range(4):
                for f in fset.all_functions(a, c):
                    injective = len(set(f.table)) == len(f.table)
                    surjective = set(f.table) == set(range(c))
                    flags = fset.classify(f)
                    assert flags.copure == injective == oracle.copure_by_oracle(f, cfg)
                    assert flags.discarding == surjective == oracle.discarding_by_oracle(f, cfg)
                    fc = fset.copurify(f)
                    assert fset.equal(compose(fc.right, fc.left), f)
                    assert fset.is_injective(fc.left)
                    if not injective:
                        sq = fset.injectivity_witness(f)
                        assert sq.commutes()
                        assert not oracle.solve_square(sq).holds
                        verdict = oracle.check_lift(sq.left, sq.right)
                        assert not verdict.holds and verdict.witness_square.commutes()
                        assert not oracle.solve_square(verdict.witness_square).holds
                    if not surjective:
                        sq = fset.surjectivity_witness(f)
                        assert sq.commutes()
                        assert not oracle.solve_square(sq).holds
                        verdict = oracle.check_lift(sq.left, sq.right)
                        assert not verdict.holds and verdict.witness_square.commutes()
                        assert not oracle.solve_square(verdict.witness_square).holds
    b.check()


def _random_density(rng, d):
    x = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return x @ x.conj().T


def _coisometry(rng, r, n):
    """``r x n`` with orthonormal rows."""
    q, _ = np.linalg.qr(rng.standard_normal((n, r)) + 1j * rng.standard_normal((n, r)))
    return q.conj().T


def _kraus_set(stacked, dom, cod):
    return quant.KrausSet(dom, cod, tuple(quant.unvec(stacked[:, i], dom, cod) for i in range(stacked.shape[1])))


@pytest.mark.criterion(5, "quant Choi/Kraus, (co)purification, dilation extension, 100 channels", 30)
def test_quant_numerics(request):
    rng = np.random.default_rng(7)
    with Budget(request, 30) as b:
        for seed in range(100):
            dom, cod = (int(x) for x in rng.integers(1, 4, size=2))
            ch = oracle.gen_morphism("quant", dom, cod, seed)
            k = quant.kraus_from_choi(ch)
            assert np.max(np.abs(quant.choi_from_kraus(k).choi - ch.choi)) <= 1e-9
            assert quant.minimal_dilation(ch).ancilla == quant.choi_rank(ch) == np.linalg.matrix_rank(ch.choi, tol=1e-9 * np.abs(ch.choi).max())
            composites = [compose(fp.right, fp.left) for fp in (quant.purify(ch), quant.copurify(ch))]
            for _ in range(20):
                rho = _random_density(rng, dom)
                expected = quant.apply_choi(ch, rho)
                for comp in composites:
                    assert np.max(np.abs(quant.apply_choi(comp, rho) - expected)) <= 1e-9
            M = k.stacked()
            r = M.shape[1]
            n = r + int(rng.integers(0, 3))
            m = n + int(rng.integers(0, 3))
            p = _kraus_set(M @ _coisometry(rng, r, n), dom, cod)
            p2 = _kraus_set(M @ _coisometry(rng, r, m), dom, cod)
            j = quant.extend_dilation(p, p2)
            assert j.shape == (n, m)
            assert np.max(np.abs(j @ j.conj().T - np.eye(n))) <= 1e-8
            assert np.max(np.abs(p.stacked() @ j - p2.stacked())) <= 1e-8
    b.check()


@pytest.mark.criterion(6, "quant classification of pure, rank >= 2 and simple mixing maps", 10)
def test_quant_classification(request):
    rng = np.random.default_rng(11)
    with Budget(request, 10) as b:
        samples = []
        for _ in range(100):
            dom, cod = (int(x) for x in rng.integers(1, 4, size=2))
            f = rng.standard_normal((cod, dom)) + 1j * rng.standard_normal((cod, dom))
            c = quant.from_linear(f)
            assert quant.classify(c).pure
            samples.append(c)
        for _ in range(100):
            dom, cod = (int(x) for x in rng.integers(1, 4, size=2))
            r = int(rng.integers(2, dom * cod + 1)) if dom * cod >= 2 else None
            if r is None:
                continue
            ops = [rng.standard_normal((cod, dom)) + 1j * rng.standard_normal((cod, dom)) for _ in range(r)]
            c = quant.from_kraus(ops)
            assert quant.choi_rank(c) >= 2
            assert not quant.classify(c).pure
            samples.append(c)
        for a in range(1, 4):
            for anc in range(1, 4):
                m = tensor(identity(a, "quant"), mix(anc, "quant"))
                assert quant.classify(m).mixing
                assert quant.classify(m).pure == (anc == 1)
                samples.append(m)
        for c in samples:
            flags = quant.classify(c)
            assert flags.pure == flags.copure
    b.check()


@pytest.mark.criterion(7, "purity notions on relations of size <= 3", 60)
def test_purity_definitions_comparison(request):
    count = 0
    with Budget(request, 60) as b:
        for a in range(4):
            for c in range(4):
                for r in frel.all_relations(a, c):
                    pairs = ref.pairs_of(r)
                    flags = frel.classify(r)
                    ch, sc = frel.is_pure_chiribella(r), frel.is_pure_selby_coecke(r)
                    assert not ch or sc
                    assert not sc or flags.pure
                    assert sc == (flags.pure and flags.copure)
                    assert ch == (len(pairs) <= 1)
                    assert sc == (ref.is_partial_function(pairs) and ref.is_injective_rel(pairs))
                    count += 1
    assert count == sum(2 ** (a * c) for a in range(4) for c in range(4))
    b.check()


@pytest.mark.criterion(8, "Galois laws of bounded lifting complements, 50 sets per theory", 60)
def test_galois_laws(request):
    with Budget(request, 60) as b:
        for theory in ("frel", "fset"):
            universe = oracle.small_universe(theory, 2)
            report = oracle.galois_laws(universe, oracle.BoundedLiftConfig(max_object=1, seed=3), samples=50)
            assert report.samples == 50
            assert report.ok, report.violations[:3]
    b.check()
