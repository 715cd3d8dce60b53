import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from factorkit import fset, oracle
from factorkit.core import LiftingSquare, ObjectMismatch, SquareError, compose, identity, tensor

from strategies import seeds

F = fset.function


def test_classify_examples():
    assert fset.classify(identity(3, "fset")).as_dict() == dict(pure=None, copure=True, mixing=None, discarding=True)
    c = fset.classify(F([0, 0], 1))
    assert (c.copure, c.discarding) == (False, True)
    c = fset.classify(F([1], 2))
    assert (c.copure, c.discarding) == (True, False)


def test_table_validation():
    with pytest.raises(ObjectMismatch):
        F([0, 2], 2)
    with pytest.raises(ObjectMismatch):
        fset.FinFunction(2, 1, (0,))


def test_copurify_examples():
    swap2 = F([1, 0], 2)
    fc = fset.copurify(swap2)
    assert fc.left.cod == 4 and fc.left.table == (0 * 2 + 1, 1 * 2 + 0)
    assert fset.equal(fc.right, tensor(fset.discard(2), identity(2, "fset")))
    assert fset.equal(compose(fc.right, fc.left), swap2)
    f1 = fset.copurify(identity(1, "fset"))
    assert f1.left.table == (0,) and fset.equal(compose(f1.right, f1.left), identity(1, "fset"))
    const = F([1, 1, 1], 2)
    fc = fset.copurify(const)
    assert fc.left.cod == 6 and fset.is_injective(fc.left)
    assert fset.equal(compose(fc.right, fc.left), const)


def test_copurify_exhaustive():
    for a in range(4):
        for b in range(4):
            for f in fset.all_functions(a, b):
                fc = fset.copurify(f)
                assert fset.equal(compose(fc.right, fc.left), f)
                assert fset.is_injective(fc.left)
                assert fset.is_surjective(fc.right) == (a > 0 or b == 0)


def test_inj_surj_factor_exhaustive():
    for a in range(4):
        for b in range(4):
            for f in fset.all_functions(a, b):
                i, s = fset.inj_surj_factor(f)
                assert fset.is_injective(i) and fset.is_surjective(s)
                assert fset.equal(compose(s, i), f)


def test_fill_in_plain_identity_legs():
    j = F([1, 0, 1], 2)
    sq = LiftingSquare(left=identity(3, "fset"), right=identity(2, "fset"), top=j, bottom=j)
    assert fset.equal(fset.fill_in_plain(sq), j)


def test_fill_in_plain_all_small_squares():
    i = F([1], 2)        # 1 >-> 2
    s = F([0, 0], 1)     # 2 ->> 1
    for j_tab in itertools.product(range(2), repeat=1):
        for k_tab in itertools.product(range(1), repeat=2):
            sq = LiftingSquare(left=i, right=s, top=F(list(j_tab), 2), bottom=F(list(k_tab), 1))
            if sq.commutes():
                h = fset.fill_in_plain(sq)
                assert sq.is_fill_in(h)
                assert h.table[0] == 0  # smallest preimage off the image


@given(seeds)
def test_fill_in_plain_random(seed):
    sq = oracle.gen_commuting_square("fset", seed)
    assert sq.is_fill_in(fset.fill_in_plain(sq))


def test_fill_in_plain_errors():
    with pytest.raises(SquareError):
        fset.fill_in_plain(LiftingSquare(left=F([0, 0], 1), right=identity(1, "fset"),
                                         top=F([0, 0], 1), bottom=identity(1, "fset")))
    with pytest.raises(SquareError):
        fset.fill_in_plain(LiftingSquare(left=identity(1, "fset"), right=F([0], 2),
                                         top=F([0], 1), bottom=F([0], 2)))


def _copure_square(f, c, d, e, g_tab, h_tab):
    left = tensor(f, identity(c, "fset"))
    right = tensor(fset.discard(d), identity(e, "fset"))
    return LiftingSquare(left=left, right=right, top=F(g_tab, d * e), bottom=F(h_tab, e))


def test_fill_in_monoidal_copure_left_inverse():
    f = F([1], 2)  # injective 1 -> 2, C = D = E = 1
    sq = _copure_square(f, 1, 1, 1, [0], [0, 0])
    k = fset.fill_in_monoidal_copure(sq, c=1, d=1)
    assert sq.is_fill_in(k)
    assert fset.equal(compose(k, f), identity(1, "fset"))


def test_fill_in_monoidal_copure_identity():
    f = identity(2, "fset")
    sq = _copure_square(f, 2, 2, 2, [3, 0, 1, 2], [1, 0, 1, 0])
    assert fset.equal(fset.fill_in_monoidal_copure(sq, c=2, d=2), sq.top)


@given(st.integers(0, 3), st.integers(1, 2), st.integers(1, 2), st.integers(1, 2), seeds)
def test_fill_in_monoidal_copure_random(a, c, d, e, seed):
    import numpy as np

    rng = np.random.default_rng(seed)
    b = a + int(rng.integers(0, 2))
    f = oracle.gen_injection(a, b, int(rng.integers(2**32)))
    g = [int(x) for x in rng.integers(0, d * e, size=a * c)]
    # bottom must agree with the projection of the top on the image of f
    h = [int(x) for x in rng.integers(0, e, size=b * c)]
    for x in range(a):
        for cc in range(c):
            h[f.table[x] * c + cc] = g[x * c + cc] % e
    sq = _copure_square(f, c, d, e, g, h)
    assert sq.commutes()
    assert sq.is_fill_in(fset.fill_in_monoidal_copure(sq, c=c, d=d))


def test_fill_in_monoidal_copure_needs_point_of_d():
    f = F([], 1)
    sq = _copure_square(f, 1, 0, 1, [], [0])
    with pytest.raises(SquareError):
        fset.fill_in_monoidal_copure(sq, c=1, d=0)


def test_fill_in_monoidal_copure_shape_errors():
    f = F([0, 0], 1)
    sq = _copure_square(f, 1, 2, 1, [0, 1], [0])
    with pytest.raises(SquareError):
        fset.fill_in_monoidal_copure(sq, c=1, d=2)
    sq = _copure_square(identity(1, "fset"), 1, 1, 1, [0], [0])
    with pytest.raises(SquareError):
        fset.fill_in_monoidal_copure(sq, c=1, d=2)


def test_witness_squares():
    f = F([0, 0], 1)
    sq = fset.injectivity_witness(f)
    assert sq.commutes() and not oracle.solve_square(sq).holds
    g = F([0], 2)
    sq = fset.surjectivity_witness(g)
    assert sq.commutes() and not oracle.solve_square(sq).holds
    with pytest.raises(SquareError):
        fset.injectivity_witness(identity(2, "fset"))
    with pytest.raises(SquareError):
        fset.surjectivity_witness(identity(2, "fset"))
