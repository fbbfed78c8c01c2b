"""Splitting each node into a gene and a protein adds a one-step lag.

The reduction to a memory network keeps the fixed points, but the gene
layer can hold phase-shifted copies of a pattern that the reduced
network does not have.
"""
from mbnet import (BooleanFunction, DiscreteSystem, GpbnNetwork, find_attractors, gpbn_to_mbn)
from mbnet.named import flip_gpbn


def summary(rep):
    # labels list genes then proteins
    return [[rep.system.label(int(k)) for k in c] for c in rep.attractors]


for name, Gp in [("flip", flip_gpbn()),
                 ("self-activation", GpbnNetwork((BooleanFunction.from_bits("01"),), (1,)))]:
    print(name)
    print("  gene/protein:", summary(find_attractors(DiscreteSystem.from_gpbn(Gp))))
    print("  reduced     :", summary(find_attractors(DiscreteSystem.from_mbn(gpbn_to_mbn(Gp)))))
