from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import scan_points
from chopcone.errors import DegenerateBox, Infeasible, Unbounded
from chopcone.polyhedra import (InequalitySystem, bounding_box, cone_is_trivial,
                                count_lattice_points, eliminate, enumerate_lattice_points,
                                is_bounded, is_feasible, projection_chain, recession_witness,
                                sample_uniform)


@st.composite
def boxed_systems(draw, with_eqs=False):
    """Random rows intersected with a box, so the set is bounded."""
    n = draw(st.integers(1, 3))
    lo = draw(st.lists(st.integers(-3, 1), min_size=n, max_size=n))
    hi = [l + draw(st.integers(0, 4)) for l in lo]
    m = draw(st.integers(0, 3))
    A = draw(st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=m,
                      max_size=m))
    b = draw(st.lists(st.integers(-4, 4), min_size=m, max_size=m))
    C, d = [], []
    if with_eqs:
        k = draw(st.integers(0, min(2, n)))
        C = draw(st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=k,
                          max_size=k))
        d = draw(st.lists(st.integers(-3, 3), min_size=k, max_size=k))
    for i in range(n):
        e = [int(i == j) for j in range(n)]
        A += [e, [-v for v in e]]
        b += [lo[i], -hi[i]]
    return n, A, b, C, d


@settings(max_examples=120)
@given(boxed_systems())
def test_enumeration_matches_scan(data):
    n, A, b, C, d = data
    system = InequalitySystem.from_matrices(A, b, dim=n)
    got = list(enumerate_lattice_points(system))
    assert got == sorted(scan_points(A, b, dim=n))
    assert count_lattice_points(system) == len(got)


@settings(max_examples=120)
@given(boxed_systems(with_eqs=True))
def test_enumeration_with_equalities(data):
    n, A, b, C, d = data
    system = InequalitySystem.from_matrices(A, b, C, d, dim=n)
    want = sorted(scan_points(A, b, C, d, n)) if C else sorted(scan_points(A, b, dim=n))
    assert list(enumerate_lattice_points(system)) == want
    assert count_lattice_points(system) == len(want)


def test_rational_bounds():
    # 2x >= 1, 3x <= 7  ->  x in {1, 2}
    s = InequalitySystem(1, (((2,), 1), ((-3,), -7)))
    assert list(enumerate_lattice_points(s)) == [(1,), (2,)]
    s = InequalitySystem(1, (((1,), Fraction(1, 3)), ((-1,), Fraction(-2, 3))))
    assert count_lattice_points(s) == 0
    assert is_feasible(s)


def test_unbounded_and_empty():
    half_line = InequalitySystem(1, (((1,), 0),))
    assert not is_bounded(half_line)
    with pytest.raises(Unbounded):
        count_lattice_points(half_line)
    empty = InequalitySystem(2, (((1, 0), 1), ((-1, 0), 0), ((0, 1), 0)))
    assert not is_feasible(empty)
    assert is_bounded(empty)
    assert count_lattice_points(empty) == 0
    no_int = InequalitySystem(2, (((1, 0), 0), ((-1, 0), -1), ((0, 1), 0), ((0, -1), -1)),
                              (((2, 2), 1),))
    assert count_lattice_points(no_int) == 0


def test_fourier_motzkin():
    # x >= 0, y >= 0, x + y <= 2 ; eliminating y leaves 0 <= x <= 2
    rows = [(1, 0, 0), (0, 1, 0), (-1, -1, -2)]
    out, ok = eliminate(rows, 1)
    assert ok
    assert sorted(out) == [(-1, 0, -2), (1, 0, 0)]
    levels, ok = projection_chain(rows, 2)
    assert ok and levels[2] and levels[0] == []
    # Chvatal-Gomory tightening: 2x >= 1 becomes x >= 1 in integral mode
    assert projection_chain([(2, 0, 1), (0, 1, 0)], 2, integral=True)[0][1] == [(1, 0, 1)]
    assert projection_chain([(2, 0, 1), (0, 1, 0)], 2, integral=False)[0][1] == [(2, 0, 1)]
    # combined rows are tightened too: x - y >= 0, y >= 1/2 (as 2y >= 1)
    assert eliminate([(1, -1, 0), (0, 2, 1)], 1, integral=True)[0] == [(1, 0, 1)]


def test_cone_triviality():
    assert cone_is_trivial([(1, 0, 0), (0, 1, 0), (-1, -1, 0)], 2)
    assert not cone_is_trivial([(1, 0, 0), (0, 1, 0)], 2)
    ray = recession_witness([(1, -1, 0), (1, 1, 0)], 2)
    assert ray is not None and ray[0] - ray[1] >= 0 and ray[0] + ray[1] >= 0 and any(ray)
    assert recession_witness([], 2) is not None
    assert recession_witness([(1, 0, 0)], 2) is not None


def test_bounding_box():
    s = InequalitySystem(2, (((1, 0), 0), ((0, 1), 0), ((-1, -2), -4)))
    lo, hi = bounding_box(s)
    assert lo == (0, 0) and hi == (4, 2)
    with pytest.raises(Infeasible):
        bounding_box(InequalitySystem(1, (((1,), 1), ((-1,), 0))))


def test_sampling_is_deterministic_and_uniform():
    tri = InequalitySystem(2, (((1, 0), 0), ((0, 1), 0), ((-1, -1), -1)))
    a = sample_uniform(tri, 20000, seed=3)
    b = sample_uniform(tri, 20000, seed=3)
    assert np.array_equal(a.points, b.points) and a.n_proposals == b.n_proposals
    assert a.box_volume == 1
    assert abs(a.acceptance_rate - 0.5) < 0.02
    assert np.allclose(a.points.mean(axis=0), [1 / 3, 1 / 3], atol=0.01)
    assert (a.points.sum(axis=1) <= 1 + 1e-12).all()
    with pytest.raises(DegenerateBox):
        sample_uniform(tri.with_constraints(eqs=[((1, 0), 0)]), 10, seed=0)
    flat = InequalitySystem(2, (((1, 0), 0), ((-1, 0), 0), ((0, 1), 0), ((0, -1), -1)))
    with pytest.raises(DegenerateBox):
        sample_uniform(flat, 10, seed=0)


@st.composite
def wide_systems(draw):
    """Dimension up to 4 inside a box of side up to 12."""
    n = draw(st.integers(1, 4))
    side = 12 if n <= 2 else (8 if n == 3 else 4)
    lo = draw(st.lists(st.integers(-6, 0), min_size=n, max_size=n))
    hi = [l + draw(st.integers(0, side)) for l in lo]
    m = draw(st.integers(0, 3))
    A = draw(st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=m,
                      max_size=m))
    b = draw(st.lists(st.integers(-6, 6), min_size=m, max_size=m))
    for i in range(n):
        e = [int(i == j) for j in range(n)]
        A += [e, [-v for v in e]]
        b += [lo[i], -hi[i]]
    return n, A, b


@settings(max_examples=200)
@given(wide_systems())
def test_counts_on_wider_boxes(data):
    n, A, b = data
    system = InequalitySystem.from_matrices(A, b, dim=n)
    assert count_lattice_points(system) == len(scan_points(A, b, dim=n))


def test_side_twelve_in_four_dimensions():
    # a 13^4 box cut by two random rows, checked once at full size
    A = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1],
         [-1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1],
         [-1, -2, 1, -1], [3, -1, -1, 2]]
    b = [0, 0, 0, 0, -12, -12, -12, -12, -20, -5]
    system = InequalitySystem.from_matrices(A, b, dim=4)
    assert count_lattice_points(system) == len(scan_points(A, b, dim=4))


@settings(max_examples=100)
@given(boxed_systems(), st.integers(-2, 2), st.integers(0, 10 ** 6))
def test_count_invariant_under_unimodular_change(data, shear, seed):
    n, A, b, _, _ = data
    if n < 2:
        return
    import random
    rng = random.Random(seed)
    i, j = rng.sample(range(n), 2)
    # x = U x' with U = I + shear e_i e_j^T, so the system becomes (A U) x' >= b
    AU = [list(row) for row in A]
    for row in AU:
        row[j] += shear * row[i]
    before = count_lattice_points(InequalitySystem.from_matrices(A, b, dim=n))
    assert count_lattice_points(InequalitySystem.from_matrices(AU, b, dim=n)) == before


@settings(max_examples=100)
@given(boxed_systems(), st.lists(st.integers(-3, 3), min_size=4, max_size=4),
       st.integers(-3, 3))
def test_adding_a_row_never_increases_count(data, row, rhs):
    n, A, b, _, _ = data
    big = count_lattice_points(InequalitySystem.from_matrices(A, b, dim=n))
    small = count_lattice_points(InequalitySystem.from_matrices(A + [row[:n]], b + [rhs], dim=n))
    assert small <= big


def test_small_examples():
    assert count_lattice_points(InequalitySystem(0, ())) == 1
    ray = InequalitySystem(2, (((1, 0), 0), ((0, 1), 0)), (((1, -1), 0),))
    assert not is_bounded(ray)
    with pytest.raises(Unbounded):
        count_lattice_points(ray)
    t = 5
    simplex = InequalitySystem(2, (((1, 0), 0), ((0, 1), 0), ((-1, -1), -t)))
    assert count_lattice_points(simplex) == (t + 1) * (t + 2) // 2 == 21
    square = InequalitySystem(2, (((1, 0), 0), ((0, 1), 0), ((-1, 0), -1), ((0, -1), -1)))
    assert sample_uniform(square, 1000, seed=1).acceptance_rate == 1.0
    with pytest.raises(Infeasible):
        sample_uniform(InequalitySystem(1, (((1,), 1), ((-1,), 0))), 10, seed=0)
