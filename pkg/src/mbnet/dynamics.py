"""Functional transition graphs and their attractor landscapes.

Every model in this package is deterministic, so its transition graph over
the full state space has out-degree exactly one.  ``find_attractors`` walks
that graph once, in O(states) time, and records for every state the
attractor it falls into and how many steps it takes to get there.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import _kernels as K
from .core import (BooleanNetwork, GpbnNetwork, MemoryNetwork, decode_index, encode_index,
                   mixed_radix_strides)

DEFAULT_MAX_STATES = 1 << 26
DEFAULT_DENSE_CAP = 1 << 26
_CHUNK = 1 << 20


class StateSpaceTooLarge(RuntimeError):
    def __init__(self, size: int, limit: int):
        super().__init__(f"state space has {size} states, above the limit of {limit}")
        self.size = size
        self.limit = limit


class NotForwardClosed(ValueError):
    pass


def _fmt(state) -> str:
    if isinstance(state, tuple) and state and isinstance(state[0], tuple):
        return "(" + ",".join(",".join(map(str, part)) for part in state) + ")"
    return "(" + ",".join(str(v) for v in state) + ")"


@dataclass
class DiscreteSystem:
    """A deterministic system on states ``0 .. state_count - 1``.

    ``successors`` maps an int64 index array to the successor indices.
    ``decode``/``encode`` translate between indices and model states.
    Systems built from a ``MemoryNetwork`` keep a reference to it so the
    traversal can use the compiled successor (and, above ``dense_cap``,
    compute successors on the fly instead of storing them).
    """

    state_count: int
    successors: Callable[[np.ndarray], np.ndarray]
    decode: Callable[[int], object] = lambda k: k
    encode: Callable[[object], int] = int
    mbn: MemoryNetwork | None = None
    mask: np.ndarray | None = None
    name: str = ""
    _succ_cache: np.ndarray | None = field(default=None, repr=False)

    @classmethod
    def from_mbn(cls, M: MemoryNetwork, name: str = "") -> "DiscreteSystem":
        return cls(M.state_count, M.successor_indices,
                   decode=lambda k, dt=M.dt: decode_index(k, dt),
                   encode=lambda d, M=M: encode_index(M.validate(d), M.dt),
                   mbn=M, name=name)

    @classmethod
    def from_bn(cls, F: BooleanNetwork, name: str = "") -> "DiscreteSystem":
        return cls.from_mbn(F.with_delays(), name=name)

    @classmethod
    def from_gpbn(cls, Gp: GpbnNetwork, name: str = "") -> "DiscreteSystem":
        return cls(Gp.state_count, Gp.successor_indices, decode=Gp.decode,
                   encode=Gp.encode, name=name)

    @classmethod
    def from_successor_array(cls, succ: Sequence[int], decode=None, encode=None, name=""):
        arr = np.asarray(succ, dtype=np.int64)
        if arr.size and (arr.min() < 0 or arr.max() >= arr.size):
            raise ValueError("successor array points outside the state space")
        return cls(arr.size, lambda idx: arr[np.asarray(idx, dtype=np.int64)],
                   decode=decode or (lambda k: k), encode=encode or int, name=name,
                   _succ_cache=arr)

    def successor(self, k: int) -> int:
        return int(self.successors(np.array([k], dtype=np.int64))[0])

    def contains(self, k: int) -> bool:
        return self.mask is None or bool(self.mask[k])

    def label(self, k: int) -> str:
        return _fmt(self.decode(int(k)))

    @property
    def size(self) -> int:
        """Number of states in view (``state_count`` unless restricted)."""
        return self.state_count if self.mask is None else int(self.mask.sum())

    def successor_array(self, threads: int = 1) -> np.ndarray:
        """Dense successor map; int32 when indices fit."""
        if self._succ_cache is not None:
            return self._succ_cache
        N = self.state_count
        dtype = np.int32 if N < 2**31 else np.int64
        out = np.empty(N, dtype=dtype)
        bounds = [(a, min(a + _CHUNK, N)) for a in range(0, N, _CHUNK)]
        if self.mbn is not None:
            tabs, dt, strides = _mbn_params(self.mbn)

            def fill(ab):
                a, b = ab
                K.mbn_successor_range(tabs, dt, strides, a, b, out[a:b])
        else:
            def fill(ab):
                a, b = ab
                out[a:b] = self.successors(np.arange(a, b, dtype=np.int64))
        if threads > 1 and len(bounds) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                list(pool.map(fill, bounds))
        else:
            for ab in bounds:
                fill(ab)
        return out


def _mbn_params(M: MemoryNetwork):
    tabs = np.ascontiguousarray(M.bn.tables(), dtype=np.uint8)
    dt = np.array(M.dt, dtype=np.int64)
    strides = np.array(mixed_radix_strides(M.dt), dtype=np.int64)
    return tabs, dt, strides


_NO_TABS = np.zeros((1, 1), dtype=np.uint8)
_NO_VEC = np.zeros(1, dtype=np.int64)


@dataclass
class AttractorReport:
    """Complete attractor landscape of a ``DiscreteSystem``.

    ``attractors[a]`` lists the cycle in orbit order, rotated to start at its
    smallest index; attractors are sorted by that index.  ``labels[k]`` is
    the attractor reached from state ``k`` (-3 for states outside a
    restricted view) and ``transients[k]`` the steps needed to reach it.
    """

    system: DiscreteSystem
    attractors: list[np.ndarray]
    basin_sizes: np.ndarray
    labels: np.ndarray
    transients: np.ndarray
    max_transient: int

    @property
    def fixed_points(self) -> list[int]:
        return [int(c[0]) for c in self.attractors if c.size == 1]

    @property
    def limit_cycles(self) -> list[np.ndarray]:
        return [c for c in self.attractors if c.size >= 2]

    @property
    def lengths(self) -> list[int]:
        return [int(c.size) for c in self.attractors]

    def states(self, a: int) -> list:
        return [self.system.decode(int(k)) for k in self.attractors[a]]

    def attractor_sets(self) -> set[frozenset]:
        """Attractors as sets of decoded states; convenient for comparisons."""
        return {frozenset(self.states(a)) for a in range(len(self.attractors))}

    def decoded_fixed_points(self) -> set:
        return {self.system.decode(k) for k in self.fixed_points}

    def attractor_of(self, state) -> int:
        return int(self.labels[self.system.encode(state)])

    def summary(self) -> dict:
        return {
            "states": self.system.size,
            "fixed_points": len(self.fixed_points),
            "limit_cycles": len(self.limit_cycles),
            "cycle_lengths": sorted(int(c.size) for c in self.limit_cycles),
            "max_transient": self.max_transient,
        }


def find_attractors(sys: DiscreteSystem, max_states: int = DEFAULT_MAX_STATES,
                    dense_cap: int = DEFAULT_DENSE_CAP, threads: int = 1) -> AttractorReport:
    N = sys.state_count
    if N < 1:
        raise ValueError("empty state space")
    if N > max_states:
        raise StateSpaceTooLarge(N, max_states)
    dense = N <= dense_cap or sys.mbn is None
    if dense:
        succ = sys.successor_array(threads=threads)
        tabs, dt, strides = _NO_TABS, _NO_VEC, _NO_VEC
    else:
        succ = _NO_VEC
        tabs, dt, strides = _mbn_params(sys.mbn)

    label = np.full(N, K.UNVISITED, dtype=np.int32)
    trans = np.zeros(N, dtype=np.int32)
    if sys.mask is not None:
        label[~sys.mask] = K.EXCLUDED
    heads = K.chase(N, dense, succ, tabs, dt, strides, label, trans)

    cycles = [K.cycle_from(int(h), dense, succ, tabs, dt, strides) for h in heads]
    cycles = [np.roll(c, -int(np.argmin(c))) for c in cycles]
    order = sorted(range(len(cycles)), key=lambda a: int(cycles[a][0]))
    remap = np.empty(len(cycles), dtype=np.int32)
    for new, old in enumerate(order):
        remap[old] = new
    counts = K.relabel_and_count(label, remap, len(cycles))
    return AttractorReport(
        system=sys,
        attractors=[cycles[a] for a in order],
        basin_sizes=counts,
        labels=label,
        transients=trans,
        max_transient=int(K.masked_max(trans, label)),
    )


def basin_sizes(report: AttractorReport) -> dict[tuple, int]:
    """Basin size keyed by the attractor's decoded cycle."""
    return {tuple(report.states(a)): int(report.basin_sizes[a])
            for a in range(len(report.attractors))}


def max_transient(report: AttractorReport) -> int:
    return report.max_transient


@dataclass
class Trajectory:
    """States visited from ``start``; ``states`` has no repeats.

    ``cycle_entry`` is the position in ``states`` where the periodic part
    begins, or ``None`` if ``max_steps`` ran out first.
    """

    states: list[int]
    cycle_entry: int | None

    @property
    def truncated(self) -> bool:
        return self.cycle_entry is None

    @property
    def closed_path(self) -> list[int]:
        """``states`` followed by the first repeated state, when there is one."""
        if self.cycle_entry is None:
            return list(self.states)
        return self.states + [self.states[self.cycle_entry]]

    @property
    def cycle(self) -> list[int]:
        return [] if self.cycle_entry is None else self.states[self.cycle_entry:]


def trajectory(sys: DiscreteSystem, start: int, max_steps: int = 1_000_000) -> Trajectory:
    if not 0 <= start < sys.state_count:
        raise IndexError(f"start state {start} outside 0..{sys.state_count - 1}")
    seen = {start: 0}
    states = [start]
    v = start
    for _ in range(max_steps):
        v = sys.successor(v)
        if v in seen:
            return Trajectory(states, seen[v])
        seen[v] = len(states)
        states.append(v)
    return Trajectory(states, None)


def restrict(sys: DiscreteSystem, predicate) -> DiscreteSystem:
    """View of ``sys`` limited to the states satisfying ``predicate``.

    ``predicate`` receives a decoded state, or may be a boolean mask over
    indices.  The kept set must be closed under the successor map.
    """
    N = sys.state_count
    if isinstance(predicate, np.ndarray):
        keep = predicate.astype(bool, copy=True)
        if keep.shape != (N,):
            raise ValueError("mask shape does not match the state space")
    else:
        keep = np.fromiter((bool(predicate(sys.decode(k))) for k in range(N)),
                           dtype=bool, count=N)
    if sys.mask is not None:
        keep &= sys.mask
    succ = sys.successor_array()
    inside = np.flatnonzero(keep)
    leaving = inside[~keep[succ[inside]]]
    if leaving.size:
        k = int(leaving[0])
        raise NotForwardClosed(
            f"state {sys.label(k)} is kept but its successor "
            f"{sys.label(int(succ[k]))} is not")
    return DiscreteSystem(N, sys.successors, decode=sys.decode, encode=sys.encode,
                          mbn=sys.mbn, mask=keep, name=sys.name, _succ_cache=succ)


def state_space_size(dt: Sequence[int]) -> int:
    return math.prod(t + 1 for t in dt)
