import pytest
from hypothesis import given

from factorkit import frel, oracle
from factorkit.core import LiftingSquare, SquareError, compose, identity, mix, tensor

import reference as ref
from strategies import morphisms, seeds

R = frel.Relation.from_pairs


def flags(r):
    return frel.classify(r).as_dict()


def test_classify_examples():
    assert flags(identity(2, "frel")) == dict(pure=True, copure=True, mixing=True, discarding=True)
    assert flags(mix(2, "frel")) == dict(pure=False, copure=True, mixing=True, discarding=False)
    assert flags(R(2, 2, [(0, 0), (0, 1), (1, 0)])) == dict(pure=False, copure=False, mixing=False, discarding=False)


def test_classify_matches_degree_definitions_exhaustively():
    for a in range(4):
        for b in range(4):
            for r in frel.all_relations(a, b):
                pairs = ref.pairs_of(r)
                out = [sum(1 for p in pairs if p[0] == x) for x in range(a)]
                inn = [sum(1 for p in pairs if p[1] == y) for y in range(b)]
                f = frel.classify(r)
                assert f.pure == all(d <= 1 for d in out)
                assert f.copure == all(d <= 1 for d in inn)
                assert f.mixing == (all(d == 1 for d in inn) and all(d >= 1 for d in out))
                assert f.discarding == (all(d == 1 for d in out) and all(d >= 1 for d in inn))


def test_all_relations_order():
    rels = list(frel.all_relations(2, 2))
    assert len(rels) == 16
    assert [r.cols() for r in rels] == sorted(r.cols() for r in rels)


def test_purify_examples():
    r = R(2, 2, [(0, 0), (0, 1)])
    fp = frel.purify(r)
    assert fp.right.pairs() == {(0, 0), (1, 1)}  # (a0,b0) -> b0, (a0,b1) -> b1
    assert frel.equal(compose(fp.right, fp.left), r)
    n = 3
    fi = frel.purify(identity(n, "frel"))
    assert fi.right.pairs() == {(a * n + a, a) for a in range(n)}
    e = R(2, 2, [])
    fe = frel.purify(e)
    assert len(fe.right) == 0 and frel.equal(compose(fe.right, fe.left), e)


def test_copurify_example():
    r = R(2, 2, [(0, 0), (0, 1), (1, 1)])
    fc = frel.copurify(r)
    assert fc.left.pairs() == {(0, 0), (0, 1), (1, 3)}
    assert frel.equal(fc.right, tensor(frel.discard(2), identity(2, "frel")))
    assert frel.equal(compose(fc.right, fc.left), r)


def test_roundtrips_exhaustive():
    for a in range(4):
        for b in range(4):
            for r in frel.all_relations(a, b):
                for fp in (frel.purify(r), frel.copurify(r)):
                    assert frel.equal(compose(fp.right, fp.left), r)
                assert frel.is_partial_function(frel.purify(r).right)
                assert frel.is_injective(frel.copurify(r).left)


@given(morphisms("frel", hi=5))
def test_roundtrips_random(r):
    for fp in (frel.purify(r), frel.copurify(r)):
        assert frel.equal(compose(fp.right, fp.left), r)


def test_converse():
    for n in range(4):
        assert frel.equal(frel.converse(mix(n, "frel")), frel.discard(n))
    r = R(3, 2, [(0, 1), (2, 0)])
    assert frel.equal(frel.converse(frel.converse(r)), r)
    assert frel.is_injective(frel.converse(r))


@given(morphisms("frel", hi=4))
def test_converse_duality(r):
    c = frel.converse(r)
    assert frel.classify(r).pure == frel.classify(c).copure
    assert frel.classify(r).mixing == frel.classify(c).discarding


def test_rival_purity_examples():
    assert not frel.is_pure_chiribella(identity(2, "frel"))
    assert frel.is_pure_selby_coecke(identity(2, "frel"))
    single = R(2, 2, [(0, 0)])
    assert frel.is_pure_chiribella(single) and frel.is_pure_selby_coecke(single)
    total = R(2, 2, [(a, b) for a in range(2) for b in range(2)])
    assert not frel.is_pure_chiribella(total)
    assert not frel.is_pure_selby_coecke(total)
    assert not frel.classify(total).pure


def test_fill_in_identity_legs():
    r = R(2, 2, [(0, 1), (1, 1)])
    i2 = identity(2, "frel")
    assert frel.equal(frel.fill_in(LiftingSquare(left=i2, right=i2, top=r, bottom=r)), r)


def test_fill_in_purification_square():
    r = R(2, 3, [(0, 0), (0, 2), (1, 1)])
    fp = frel.purify(r)
    # left: mix-introduction, right: the pure factor; top/bottom close the square
    sq = LiftingSquare(left=fp.left, right=fp.right, top=fp.left, bottom=fp.right)
    h = frel.fill_in(sq)
    assert sq.is_fill_in(h)


@given(seeds)
def test_fill_in_agrees_with_search(seed):
    sq = oracle.gen_commuting_square("frel", seed, max_dim=3)
    h = frel.fill_in(sq)
    assert sq.is_fill_in(h)
    assert oracle.solve_square(sq).holds


def test_fill_in_errors():
    i2 = identity(2, "frel")
    with pytest.raises(SquareError):
        frel.fill_in(LiftingSquare(left=i2, right=i2, top=R(2, 2, [(0, 0)]), bottom=R(2, 2, [(1, 1)])))
    with pytest.raises(SquareError):
        d = frel.discard(2)
        frel.fill_in(LiftingSquare(left=d, right=identity(1, "frel"), top=d, bottom=identity(1, "frel")))
