"""Model-equivalence constructions.

* ``gpbn_to_mbn`` drops the gene layer: protein ``i`` fires directly from
  ``f_{G_i}`` of the protein presences.
* ``mbn_to_bn`` replaces node ``v`` by a chain ``[v,1] .. [v,dt_v]``.  The
  chain holds the counter in thermometer form (``x[v,a] = 1`` iff
  ``a <= d_v``); each step either refills the whole chain from ``f_v`` read
  on the chain heads ``[., 1]``, or shifts it down by one.

Chains are concatenated in source-node order, ``[v,1]`` first.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import BooleanFunction, BooleanNetwork, GpbnNetwork, MemoryNetwork
from .dynamics import DiscreteSystem, restrict


class ArtefactStateError(ValueError):
    """A chain configuration outside the image of the encoding."""


def gpbn_to_mbn(Gp: GpbnNetwork) -> MemoryNetwork:
    return MemoryNetwork(BooleanNetwork(Gp.gene_functions, Gp.names), Gp.dt)


@dataclass(frozen=True)
class ExpansionMap:
    source: MemoryNetwork
    target: BooleanNetwork
    offsets: tuple[int, ...]

    def node_index(self, v: int, a: int) -> int:
        """Target position of chain node ``[v, a]`` (``v`` 0-based, ``a`` 1-based)."""
        if not 1 <= a <= self.source.dt[v]:
            raise IndexError(f"chain position {a} outside 1..{self.source.dt[v]}")
        return self.offsets[v] + a - 1

    @property
    def heads(self) -> list[int]:
        return [self.offsets[v] for v in range(self.source.n)]

    def chains(self) -> list[range]:
        return [range(o, o + t) for o, t in zip(self.offsets, self.source.dt)]


def mbn_to_bn(M: MemoryNetwork) -> ExpansionMap:
    n, dt = M.n, M.dt
    offsets = np.concatenate([[0], np.cumsum(dt)[:-1]]).astype(int)
    m = int(sum(dt))
    src_tabs = M.bn.tables()
    # row of the source table seen from a target row: read the chain heads
    k = np.arange(1 << m, dtype=np.int64)
    src_row = np.zeros(k.shape, dtype=np.int64)
    for v in range(n):
        src_row = (src_row << 1) | ((k >> (m - 1 - offsets[v])) & 1)
    funcs, names = [], []
    for v in range(n):
        fire = src_tabs[v][src_row]
        for a in range(1, dt[v] + 1):
            if a < dt[v]:
                nxt = offsets[v] + a
                tab = fire | ((k >> (m - 1 - nxt)) & 1).astype(np.uint8)
            else:
                tab = fire
            funcs.append(BooleanFunction(m, tab))
            names.append(f"{M.names[v]}:{a}")
    target = BooleanNetwork(tuple(funcs), tuple(names))
    return ExpansionMap(M, target, tuple(int(o) for o in offsets))


def encode_phi(emap: ExpansionMap, d: Sequence[int]) -> tuple[int, ...]:
    d = emap.source.validate(d)
    out = []
    for v, t in enumerate(emap.source.dt):
        out.extend(1 if a <= d[v] else 0 for a in range(1, t + 1))
    return tuple(out)


def is_artefact(emap: ExpansionMap, x: Sequence[int]) -> bool:
    if len(x) != emap.target.n:
        raise ValueError(f"state length {len(x)} does not match {emap.target.n} chain nodes")
    for ch in emap.chains():
        bits = [x[i] for i in ch]
        if any(b < c for b, c in zip(bits, bits[1:])):
            return True
    return False


def decode_phi(emap: ExpansionMap, x: Sequence[int]) -> tuple[int, ...]:
    if is_artefact(emap, x):
        raise ArtefactStateError(f"{tuple(x)} is not a thermometer code")
    return tuple(int(sum(x[i] for i in ch)) for ch in emap.chains())


def thermometer_mask(emap: ExpansionMap) -> np.ndarray:
    """Boolean mask over target BN state indices marking the non-artefact states."""
    tgt = DiscreteSystem.from_bn(emap.target)
    # dense index of the unit-delay system: node 1 least significant
    k = np.arange(tgt.state_count, dtype=np.int64)
    ok = np.ones(k.shape, dtype=bool)
    for ch in emap.chains():
        for i, j in zip(ch, list(ch)[1:]):
            ok &= ((k >> i) & 1) >= ((k >> j) & 1)
    return ok


def expanded_system(emap: ExpansionMap, drop_artefacts: bool = True) -> DiscreteSystem:
    sys = DiscreteSystem.from_bn(emap.target)
    if not drop_artefacts:
        return sys
    return restrict(sys, thermometer_mask(emap))


__all__ = [
    "ArtefactStateError", "ExpansionMap", "gpbn_to_mbn", "mbn_to_bn", "encode_phi",
    "decode_phi", "is_artefact", "thermometer_mask", "expanded_system",
]
