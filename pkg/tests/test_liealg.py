from itertools import product

import pytest

from chopcone.errors import NotDominant, NotFiniteType, NotReduced, TooLarge
from chopcone.liealg import (CartanData, apply_word, cartan, character_product, check_word,
                             demazure_character, demazure_operator, dominant_rep, freudenthal,
                             inner, is_longest_word, is_reduced, langlands_dual, longest_word,
                             positive_roots, reflect_weight, tensor_decompose, to_root_coords,
                             weyl_dimension, weyl_orbit)

TYPES = ["A1", "A2", "A3", "B2", "C2", "G2", "A1xA1", "B3", "C3", "D4"]


def test_cartan_conventions():
    assert cartan("B2").a == ((2, -1), (-2, 2))
    assert cartan("C2").a == ((2, -2), (-1, 2))
    assert langlands_dual(cartan("B2")) == cartan("C2")
    assert langlands_dual(cartan("B2")).type_tag == "C2"
    assert cartan("A1xA1").a == ((2, 0), (0, 2))
    assert cartan("B2").symmetrizer == (2, 1)  # alpha_1 long
    with pytest.raises(ValueError):
        cartan("Q2")
    with pytest.raises(ValueError):
        CartanData(((2, 1), (-1, 2)))


def test_affine_rejected():
    affine = CartanData(((2, -2), (-2, 2)), "A1~")
    assert affine.symmetrizer == (1, 1)
    assert not affine.is_finite_type()
    with pytest.raises(NotFiniteType):
        freudenthal(affine, (1, 0))


@pytest.mark.parametrize("tag,count,word", [
    ("A1", 1, (1,)), ("A2", 3, (1, 2, 1)), ("B2", 4, (1, 2, 1, 2)),
    ("G2", 6, (1, 2, 1, 2, 1, 2)), ("A3", 6, (1, 2, 1, 3, 2, 1)), ("D4", 12, None)])
def test_roots_and_longest_word(tag, count, word):
    cd = cartan(tag)
    assert len(positive_roots(cd)) == count
    w0 = longest_word(cd)
    if word:
        assert w0 == word
    assert is_longest_word(cd, w0)
    rho = (1,) * cd.n
    assert apply_word(cd, w0, rho) == tuple(-v for v in rho)


def test_words():
    cd = cartan("A2")
    assert is_reduced(cd, (1, 2, 1)) and not is_reduced(cd, (1, 1))
    assert is_longest_word(cd, (2, 1, 2)) and not is_longest_word(cd, (1, 2))
    with pytest.raises(NotReduced):
        check_word(cd, (1, 2, 1, 2))
    with pytest.raises(NotReduced):
        check_word(cd, (3,))


def test_reflections():
    cd = cartan("A2")
    assert reflect_weight(cd, 0, (1, 0)) == (-1, 1)
    assert dominant_rep(cd, (-1, 1)) == (1, 0)
    assert weyl_orbit(cd, (1, 0)) == {(1, 0), (-1, 1), (0, -1)}
    assert to_root_coords(cd, (1, 1)) == (1, 1)
    assert inner(cd, (1, 0), (1, 0)) == pytest.approx(2 / 3)


@pytest.mark.parametrize("tag,lam,dim", [
    ("A2", (1, 1), 8), ("B2", (0, 1), 4), ("B2", (1, 0), 5), ("C2", (1, 0), 4),
    ("G2", (1, 0), 14), ("G2", (0, 1), 7), ("A3", (1, 0, 1), 15), ("D4", (0, 1, 0, 0), 28)])
def test_weyl_dimension(tag, lam, dim):
    assert weyl_dimension(cartan(tag), lam) == dim


@pytest.mark.parametrize("tag", TYPES)
def test_freudenthal_consistency(tag):
    cd = cartan(tag)
    for lam in product(range(3), repeat=cd.n):
        if sum(lam) > 3:
            continue
        table = freudenthal(cd, lam)
        assert sum(table.values()) == weyl_dimension(cd, lam)
        for mu, m in table.items():
            assert table[dominant_rep(cd, mu)] == m
        assert demazure_character(cd, longest_word(cd), lam) == table


def test_known_multiplicities():
    assert freudenthal(cartan("A2"), (1, 1))[(0, 0)] == 2
    assert freudenthal(cartan("B2"), (0, 2))[(0, 0)] == 2
    assert freudenthal(cartan("G2"), (1, 0))[(0, 0)] == 2
    with pytest.raises(NotDominant):
        freudenthal(cartan("A2"), (-1, 0))
    with pytest.raises(TooLarge):
        freudenthal(cartan("A2"), (30, 30))


def test_demazure():
    cd = cartan("A2")
    assert demazure_operator(cd, 1, {(1, 0): 1}) == {(1, 0): 1, (-1, 1): 1}
    assert demazure_character(cd, (), (1, 1)) == {(1, 1): 1}
    assert demazure_character(cd, (1,), (1, 1)) == {(1, 1): 1, (-1, 2): 1}
    # reduced-word independence at w0
    for lam in product(range(4), repeat=2):
        assert demazure_character(cd, (1, 2, 1), lam) == demazure_character(cd, (2, 1, 2), lam)


def test_tensor_products():
    assert tensor_decompose(cartan("A1"), (2,), (2,)) == {(4,): 1, (2,): 1, (0,): 1}
    assert tensor_decompose(cartan("A2"), (1, 0), (0, 1)) == {(1, 1): 1, (0, 0): 1}
    assert tensor_decompose(cartan("A2"), (1, 1), (1, 1))[(1, 1)] == 2
    with pytest.raises(TooLarge):
        tensor_decompose(cartan("A2"), (5, 5), (5, 5), cap=1000)
    with pytest.raises(ValueError):
        tensor_decompose(cartan("A2"), (1, 0), (1, 0), method="guess")


@pytest.mark.parametrize("tag", ["A2", "B2", "C2", "G2", "A3"])
def test_tensor_methods_agree(tag):
    cd = cartan(tag)
    grid = [l for l in product(range(3), repeat=cd.n) if sum(l) <= 2]
    for lam in grid:
        for nu in grid:
            a = tensor_decompose(cd, lam, nu)
            assert a == tensor_decompose(cd, lam, nu, method="peel")
            dims = sum(m * weyl_dimension(cd, mu) for mu, m in a.items())
            assert dims == weyl_dimension(cd, lam) * weyl_dimension(cd, nu)


def test_character_product():
    a = {(1,): 1, (-1,): 1}
    assert character_product(a, a) == {(2,): 1, (0,): 2, (-2,): 1}
