import numpy as np
import pytest

from mbnet import DiscreteSystem, MemoryNetwork, bn_step, find_attractors, mbn_step
from mbnet.cases import (ThresholdNetwork, abc_fixed_points, arabidopsis_abc, arabidopsis_c1,
                         arabidopsis_c2, heaviside, lambda_bn, lambda_boolean_reduction,
                         lambda_discrete_step, lambda_mbn, predict_c2, predict_lambda,
                         threshold_to_bn)
from mbnet.core import all_bit_vectors

LAMBDA_DISCRETE_ROWS = [((0, 0), (1, 1)), ((0, 1), (0, 2)), ((0, 2), (0, 1)),
                        ((1, 0), (1, 0)), ((1, 1), (0, 0)), ((1, 2), (0, 1))]
LAMBDA_BOOL_ROWS = [((0, 0), (1, 1)), ((0, 1), (0, 1)), ((1, 0), (1, 0)), ((1, 1), (0, 0))]


@pytest.mark.parametrize("x, y", LAMBDA_DISCRETE_ROWS)
def test_lambda_discrete_rows(x, y):
    assert lambda_discrete_step(*x) == y


def test_lambda_discrete_rejects_bad_state():
    with pytest.raises(ValueError):
        lambda_discrete_step(1, 3)


@pytest.mark.parametrize("x, y", LAMBDA_BOOL_ROWS)
def test_lambda_bn_rows(x, y):
    assert bn_step(lambda_bn(), x) == y


def test_reduction_equals_lambda_bn():
    assert lambda_boolean_reduction().outputs() == lambda_bn().outputs()


def test_lambda_threshold_network():
    T = ThresholdNetwork(np.array([[0, -1], [-1, 0]]), np.array([-0.5, -0.5]))
    assert threshold_to_bn(T).outputs() == lambda_bn().outputs()


def test_threshold_boundary_is_zero():
    assert heaviside(0).item() == 0 and heaviside(1e-9).item() == 1
    zero = ThresholdNetwork(np.zeros((2, 2)), np.zeros(2))
    assert threshold_to_bn(zero).outputs() == ["00"] * 4
    hi = ThresholdNetwork(np.zeros((3, 3)), np.ones(3))
    assert threshold_to_bn(hi).outputs() == ["000"] * 8
    # weighted sum exactly at threshold
    eq = ThresholdNetwork(np.array([[1.0, 1.0], [1.0, 0.0]]), np.array([1.0, 1.0]))
    assert threshold_to_bn(eq).outputs() == ["00", "00", "00", "10"]


def test_threshold_validation():
    with pytest.raises(ValueError):
        ThresholdNetwork(np.zeros((2, 3)), np.zeros(2))
    with pytest.raises(ValueError):
        ThresholdNetwork(np.zeros((2, 2)), np.zeros(3))
    with pytest.raises(ValueError):
        ThresholdNetwork(np.array([[0, np.inf], [0, 0]]), np.zeros(2))


@pytest.mark.parametrize("a", range(1, 9))
@pytest.mark.parametrize("b", range(1, 9))
def test_lambda_predictor_grid(a, b):
    pred = predict_lambda(a, b)
    rep = find_attractors(DiscreteSystem.from_mbn(lambda_mbn((a, b))))
    assert rep.decoded_fixed_points() == set(pred.fixed_points) == {(a, 0), (0, b)}
    assert bool(rep.limit_cycles) == pred.limit_cycle == (a == b)
    if a == b:
        assert [len(c) for c in rep.limit_cycles] == [a + 1]
    for r in range(a + 1):
        for g in range(b + 1):
            k = rep.attractor_of((r, g))
            kind = "LC" if rep.attractors[k].size > 1 else "FP"
            assert kind == pred.classify(r, g)


def test_lambda_two_two_cycle():
    rep = find_attractors(DiscreteSystem.from_mbn(lambda_mbn((2, 2))))
    assert frozenset({(2, 2), (1, 1), (0, 0)}) in rep.attractor_sets()


def test_predict_lambda_needs_delays():
    with pytest.raises(ValueError):
        predict_lambda(0, 1)


def test_c1_is_mutual_inhibition():
    assert arabidopsis_c1().outputs() == lambda_bn().outputs()


def test_c2_functions():
    F = arabidopsis_c2()
    for x in all_bit_vectors(3):
        ap3, bfu, pi = x
        assert bn_step(F, x) == (bfu, ap3 & pi, bfu)


def test_c2_proof_fragments():
    F = arabidopsis_c2()
    assert bn_step(F, (1, 0, 1)) == (0, 1, 0)
    assert bn_step(F, (1, 1, 1)) == (1, 1, 1)
    M = MemoryNetwork(F, (2, 3, 4))
    d = (0, 0, 4)
    for _ in range(4):
        d = mbn_step(M, d)
    assert d == (0, 0, 0)
    M = MemoryNetwork(F, (1, 1, 2))
    assert mbn_step(M, (1, 0, 2)) == (0, 1, 1)
    assert mbn_step(M, (0, 1, 1)) == (1, 0, 2)


@pytest.mark.parametrize("dt", [(a, b, c) for a in range(1, 6) for b in range(1, 6)
                                for c in range(1, 6)])
def test_c2_predictor_grid(dt):
    pred = predict_c2(*dt)
    rep = find_attractors(DiscreteSystem.from_mbn(MemoryNetwork(arabidopsis_c2(), dt)))
    assert rep.decoded_fixed_points() == set(pred.fixed_points)
    assert bool(rep.limit_cycles) == pred.limit_cycle
    if pred.limit_cycle:
        assert 2 in [len(c) for c in rep.limit_cycles]


def test_abc_fixed_points():
    F = arabidopsis_abc()
    assert F.names == ("AG", "AP1", "AP3", "BFU", "PI")
    for dt in [(1, 1, 1, 1, 1), (2, 3, 1, 2, 2), (3, 1, 2, 3, 1)]:
        rep = find_attractors(DiscreteSystem.from_mbn(MemoryNetwork(F, dt)))
        assert rep.decoded_fixed_points() == set(abc_fixed_points(dt))
