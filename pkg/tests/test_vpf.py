import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import naive_phi, random_pointed_csc
from chopcone.csc import ChoppedSlicedCone, measure, slice_count
from chopcone.errors import KernelConditionViolated, NoFit, NotPointed
from chopcone.exact import det
from chopcone.liealg import cartan, freudenthal
from chopcone.littelmann import build_csc, builtin_string_cone
from chopcone.vpf import (QuasiPolynomial, VPFProblem, fit_quasipolynomial, phi, ray_scan,
                          reduce_to_vpf, transformed_cone, verify_reduction)


def test_phi_examples():
    assert phi(VPFProblem([[1, 1]]), [4]) == 5
    assert phi(VPFProblem([[1, 0], [0, 1]]), [2, 3]) == 1
    assert phi(VPFProblem([[1, 2]]), [5]) == 3
    assert phi(VPFProblem([[1, 2]]), [-1]) == 0
    assert phi(VPFProblem([[1, 1, 0], [0, 1, 1]]), [0, 0]) == 1


def test_kernel_condition():
    with pytest.raises(KernelConditionViolated):
        VPFProblem([[1, -1]])
    with pytest.raises(KernelConditionViolated):
        VPFProblem([[1, 0, 0]], 3)


@settings(max_examples=60)
@given(st.integers(1, 2).flatmap(lambda m: st.tuples(
    st.lists(st.lists(st.integers(0, 3), min_size=3, max_size=3), min_size=m, max_size=m),
    st.lists(st.integers(0, 6), min_size=m, max_size=m))))
def test_phi_against_scan(data):
    E, y = data
    try:
        p = VPFProblem(E)
    except KernelConditionViolated:
        return
    assert phi(p, y) == naive_phi(E, y)


def test_box_reduction(box_cone):
    pair = reduce_to_vpf(box_cone)
    # r is already the identity, so every r row is dropped
    assert pair.r_tilde == ()
    assert pair.problem.E == ((1, 0, 1, 0), (0, 1, 0, 1), (1, 1, 0, 0))
    assert pair.B == ((1, 0), (1, 0), (0, 1))
    assert pair.count(2, 2) == 3
    assert verify_reduction(pair, box_cone, 2, 2)
    assert verify_reduction(pair, box_cone, 2, 7)


def test_reduction_with_embedding():
    c = ChoppedSlicedCone(2, 1, 2, 1, 2, [[1, 0], [0, 1]], [[1, 1]], [[1, 1], [1, -1]],
                          [[1], [1]])
    pair = reduce_to_vpf(c)
    assert abs(det(pair.embedding)) == 1
    for lam in range(5):
        for beta in range(5):
            assert verify_reduction(pair, c, lam, beta)
    t = transformed_cone(c, pair.embedding)
    for lam in range(4):
        assert measure(t, lam).entries == measure(c, lam).entries


def test_not_pointed():
    c = ChoppedSlicedCone(2, 1, 2, 1, 1, [[1, 0], [-1, 0]], [[1, 1]], [[0, 1]], [[1], [1]])
    with pytest.raises(NotPointed):
        reduce_to_vpf(c)


def test_random_reductions():
    rng = random.Random(3)
    for _ in range(8):
        c = random_pointed_csc(rng)
        pair = reduce_to_vpf(c)
        for _ in range(15):
            lam = [rng.randint(0, 4) for _ in range(c.rank_Lambda)]
            beta = [rng.randint(-3, 6) for _ in range(c.rank_Q)]
            assert slice_count(c, lam, beta) == pair.count(lam, beta)


def test_fit_dilation():
    qp = fit_quasipolynomial(lambda t: (t + 1) * (t + 2) // 2, 20, 1, 2)
    assert qp.period == 1 and qp.degree == 2
    assert qp.components == ((1, Fraction(3, 2), Fraction(1, 2)),)
    assert all(qp(t) == (t + 1) * (t + 2) // 2 for t in range(40))


def test_fit_period_two():
    qp = fit_quasipolynomial(lambda t: t // 2 + 1, 20, 4, 1)
    assert qp.period == 2 and qp.degree == 1
    assert qp.components == ((1, Fraction(1, 2)), (Fraction(1, 2), Fraction(1, 2)))
    assert qp == fit_quasipolynomial(lambda t: t // 2 + 1, 40, 4, 1)


def test_fit_zero_and_failures():
    qp = fit_quasipolynomial(lambda t: 0, 12, 2, 1)
    assert qp.period == 1 and qp.components == ((),) and qp(7) == 0
    with pytest.raises(NoFit) as info:
        fit_quasipolynomial(lambda t: min(t, 12), 20, 2, 1)
    assert info.value.window == (0, 12)
    with pytest.raises(ValueError):
        fit_quasipolynomial(lambda t: t, 5, 3, 1)


def test_quasipolynomial_json():
    qp = fit_quasipolynomial(lambda t: t // 3, 30, 3, 1)
    data = json.loads(json.dumps(qp.to_json()))
    assert data["period"] == 3
    assert data["classes"][1] == {"residue": 1, "coeffs": ["-1/3", "1/3"]}
    back = QuasiPolynomial.from_json(data, qp.degree_bound)
    assert back == qp


def test_ray_scans(box_cone):
    qp = ray_scan(box_cone, 0, 0, 1, 1, 20, 3)
    assert qp.period == 1 and qp.components == ((1, 1),)
    assert ray_scan(box_cone, 2, 2, 0, 0, 12, 2).components == ((3,),)
    a2 = build_csc(builtin_string_cone(cartan("A2"), (1, 2, 1)))
    qp = ray_scan(a2, (0, 0), (0, 0), (1, 1), (1, 1), 30, 6)
    for t in range(31):
        assert qp(t) == freudenthal(cartan("A2"), (t, t), cap=10**6)[(0, 0)]
