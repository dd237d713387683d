from fractions import Fraction
from itertools import product

import pytest

from chopcone import bz
from chopcone.csc import validate
from chopcone.errors import NotLongestWord, UnsupportedType, WeightNotInRep
from chopcone.liealg import cartan, langlands_dual, weyl_dimension


@pytest.mark.parametrize("tag", ["A1", "A2", "A3", "B2", "C2", "A1xA1"])
def test_fundamental_reps(tag):
    cd = cartan(tag)
    dual = langlands_dual(cd)
    for i in range(1, cd.n + 1):
        rep = bz.fundamental_rep(cd, i)
        assert rep.dim == weyl_dimension(dual, rep.highest_weight)
        # e_j maps the mu block into the mu + alpha_j block
        for j, M in enumerate(rep.raising_ops):
            alpha = dual.simple_root(j)
            for row in range(rep.dim):
                for col in range(rep.dim):
                    if M[row][col]:
                        w = rep.basis_weights[col]
                        assert rep.basis_weights[row] == tuple(x + a for x, a in zip(w, alpha))


def test_defining_rep_a2():
    rep = bz.fundamental_rep(cartan("A2"), 1)
    assert set(rep.basis_weights) == {(1, 0), (-1, 1), (0, -1)}
    with pytest.raises(UnsupportedType):
        bz.fundamental_rep(cartan("G2"), 1)


def test_itrails_basic():
    cd = cartan("A2")
    rep = bz.fundamental_rep(cd, 1)
    word = (1, 2, 1)
    trails = bz.itrails(rep, rep.highest_weight, rep.highest_weight, word)
    assert [t.c for t in trails] == [(0, 0, 0)]
    assert bz.itrails(rep, (0, -1), (1, 0), word) == []
    with pytest.raises(WeightNotInRep):
        bz.itrails(rep, (2, 0), (1, 0), word)


@pytest.mark.parametrize("tag", ["A2", "B2", "C2", "A3"])
def test_trails_reconstruct(tag):
    cd = cartan(tag)
    sysb = bz.build_bz_csc(cd)
    dual = langlands_dual(cd)
    for i, trails in {**sysb.trails}.items():
        rep = bz.fundamental_rep(cd, i)
        for tr in trails:
            diff = [0] * cd.n
            for ck, ik in zip(tr.c, sysb.word):
                for k, a in enumerate(dual.simple_root(ik - 1)):
                    diff[k] += ck * a
            assert tuple(diff) == tuple(g - d for g, d in zip(tr.from_weight, tr.to_weight))
            assert bz.composite_is_nonzero(rep, sysb.word, tr.c, tr.to_weight)


def test_a2_string_cone_from_trails():
    rows = bz.string_cone_rows(cartan("A2"), (1, 2, 1))
    assert sorted(rows) == sorted([(1, 0, 0), (0, 1, -1), (0, 0, 1)])


def test_a1_clebsch_gordan():
    sysb = bz.build_bz_csc(cartan("A1"))
    for lam, nu, beta in product(range(5), range(5), range(-1, 7)):
        assert bz.lr_coefficient(sysb, (lam,), (nu,), (beta,)) == int(0 <= beta <= min(lam, nu))
    assert bz.lr_table(sysb, (2,), (2,)) == {(0,): 1, (1,): 1, (2,): 1}


def test_a2_examples():
    sysb = bz.build_bz_csc(cartan("A2"))
    assert validate(sysb.csc)
    assert bz.lr_coefficient(sysb, (1, 0), (1, 0), (1, 0)) == 1
    assert bz.lr_table(sysb, (1, 0), (0, 1)) == {(0, 0): 1, (1, 1): 1}
    assert bz.lr_table(sysb, (2, 1), (0, 0)) == {(0, 0): 1}
    assert bz.lr_coefficient(sysb, (1, 1), (1, 1), (-1, 0)) == 0
    assert bz.lr_coefficient(sysb, (1, 1), (1, 1), (1, 1)) == 2


def test_word_errors():
    with pytest.raises(NotLongestWord):
        bz.build_bz_csc(cartan("A2"), (1, 2))
    with pytest.raises(UnsupportedType):
        bz.build_bz_csc(cartan("G2"))


@pytest.mark.parametrize("tag,word", [("A2", (2, 1, 2)), ("B2", (1, 2, 1, 2)),
                                      ("B2", (2, 1, 2, 1)), ("C2", (1, 2, 1, 2)),
                                      ("C2", (2, 1, 2, 1)), ("A1xA1", (1, 2))])
def test_oracle_agreement_other_words(tag, word):
    cd = cartan(tag)
    sysb = bz.build_bz_csc(cd, word)
    grid = [l for l in product(range(3), repeat=cd.n)]
    for lam in grid:
        for nu in grid:
            assert bz.lr_table(sysb, lam, nu) == bz.lr_table_oracle(cd, lam, nu)


def test_midpoint_coefficients():
    # <(g_{k-1} + g_k) / 2, alpha_{i_k}> with the dual Cartan pairing
    cd = cartan("B2")
    dual = langlands_dual(cd)
    sysb = bz.build_bz_csc(cd)
    for trails in sysb.trails.values():
        for tr in trails:
            path = tr.path(dual, sysb.word)
            for k, ik in enumerate(sysb.word):
                mid = Fraction(path[k][ik - 1] + path[k + 1][ik - 1], 2)
                assert tr.coefficients[k] == mid
