import numpy as np
import pytest
from hypothesis import given, settings

from mbnet import (ArtefactStateError, BooleanFunction, DiscreteSystem, GpbnNetwork, GpbnState,
                   bn_step, decode_phi, encode_phi, expanded_system, find_attractors, gpbn_to_mbn, is_artefact, mbn_step,
                   mbn_to_bn, thermometer_mask)
from mbnet.core import all_bit_vectors
from mbnet.named import flip_gpbn, flip_mbn

import netgen
from netgen import all_configs, mbn_strategy, phi_indices

# (x[1,1], x[1,2], x[2,1]) -> images, for the expansion of flip at dt = (2, 1)
FLIP_EXPANDED_ROWS = [
    ((0, 0, 0), (0, 0, 0)), ((0, 0, 1), (0, 0, 0)), ((0, 1, 0), (1, 0, 0)),
    ((0, 1, 1), (1, 0, 0)), ((1, 0, 0), (1, 1, 1)), ((1, 0, 1), (0, 0, 0)),
    ((1, 1, 0), (1, 1, 1)), ((1, 1, 1), (1, 0, 0)),
]


def kinds(rep):
    return sorted(len(c) > 1 for c in rep.attractors)


@pytest.mark.parametrize("x, y", FLIP_EXPANDED_ROWS)
def test_flip_expansion_rows(x, y):
    assert bn_step(mbn_to_bn(flip_mbn()).target, x) == y


def test_chain_layout():
    emap = mbn_to_bn(flip_mbn())
    assert emap.target.names == ("x1:1", "x1:2", "x2:1")
    assert emap.heads == [0, 2]
    assert emap.node_index(0, 2) == 1
    with pytest.raises(IndexError):
        emap.node_index(1, 2)


def test_phi_round_trip_and_artefacts():
    emap = mbn_to_bn(flip_mbn())
    assert encode_phi(emap, (2, 1)) == (1, 1, 1)
    assert encode_phi(emap, (1, 0)) == (1, 0, 0)
    assert decode_phi(emap, (1, 1, 0)) == (2, 0)
    assert is_artefact(emap, (0, 1, 0)) and is_artefact(emap, (0, 1, 1))
    with pytest.raises(ArtefactStateError):
        decode_phi(emap, (0, 1, 1))
    assert int(thermometer_mask(emap).sum()) == 6


def test_restricted_and_full_expansion_landscapes():
    emap = mbn_to_bn(flip_mbn())
    want = {frozenset({(0, 0, 0)}), frozenset({(1, 0, 0), (1, 1, 1)})}
    assert find_attractors(expanded_system(emap)).attractor_sets() == want
    assert find_attractors(expanded_system(emap, drop_artefacts=False)).attractor_sets() == want


def test_gpbn_reduction_of_flip():
    M = gpbn_to_mbn(flip_gpbn())
    assert M.dt == (2, 1)
    assert [mbn_step(M, d) for d in [(1, 0), (2, 1)]] == [(2, 1), (1, 0)]
    a = find_attractors(DiscreteSystem.from_gpbn(flip_gpbn()))
    b = find_attractors(DiscreteSystem.from_mbn(M))
    assert kinds(a) == kinds(b)


def test_phi_indices_agree_with_encode_phi():
    M = flip_mbn()
    emap = mbn_to_bn(M)
    sysb = DiscreteSystem.from_bn(emap.target)
    idx = phi_indices(M, emap)
    for k, d in enumerate(DiscreteSystem.from_mbn(M).decode(j) for j in range(6)):
        assert sysb.decode(int(idx[k])) == encode_phi(emap, d)


@given(mbn_strategy(n_max=3, dt_max=3))
@settings(max_examples=80, deadline=None)
def test_simulation_homomorphism(M):
    emap = mbn_to_bn(M)
    for d in all_configs(M.dt):
        assert encode_phi(emap, mbn_step(M, d)) == bn_step(emap.target, encode_phi(emap, d))


@given(mbn_strategy(n_max=3, dt_max=3))
@settings(max_examples=60, deadline=None)
def test_restricted_expansion_has_same_attractor_types(M):
    a = find_attractors(DiscreteSystem.from_mbn(M))
    b = find_attractors(expanded_system(mbn_to_bn(M)))
    assert kinds(a) == kinds(b)
    assert sorted(a.lengths) == sorted(b.lengths)


@given(mbn_strategy(n_max=3, dt_max=3))
@settings(max_examples=60, deadline=None)
def test_phi_is_injective_and_decodes(M):
    emap = mbn_to_bn(M)
    images = {encode_phi(emap, d): d for d in all_configs(M.dt)}
    assert len(images) == M.state_count
    for x, d in images.items():
        assert not is_artefact(emap, x)
        assert decode_phi(emap, x) == d


def test_artefact_count():
    M = netgen.random_mbn(np.random.default_rng(0), 3, 3)
    emap = mbn_to_bn(M)
    ok = sum(not is_artefact(emap, x) for x in all_bit_vectors(emap.target.n))
    assert ok == M.state_count


def test_gpbn_reduction_keeps_fixed_point_count():
    rng = np.random.default_rng(11)
    for _ in range(60):
        Gp = netgen.random_gpbn(rng)
        a = find_attractors(DiscreteSystem.from_gpbn(Gp))
        b = find_attractors(DiscreteSystem.from_mbn(gpbn_to_mbn(Gp)))
        assert len(a.fixed_points) == len(b.fixed_points)


def test_gene_lag_can_add_a_cycle():
    # one self-activating pair: genes and proteins can sit out of phase
    Gp = GpbnNetwork((BooleanFunction.from_bits("01"),), (1,))
    a = find_attractors(DiscreteSystem.from_gpbn(Gp))
    b = find_attractors(DiscreteSystem.from_mbn(gpbn_to_mbn(Gp)))
    assert kinds(a) == [False, False, True]
    assert kinds(b) == [False, False]
    assert frozenset({GpbnState((1,), (0,)), GpbnState((0,), (1,))}) in a.attractor_sets()
