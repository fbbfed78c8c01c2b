"""Small named networks used throughout the docs, demos and tests."""
from __future__ import annotations

from .core import BooleanFunction, BooleanNetwork, GpbnNetwork, MemoryNetwork


def flip_bn() -> BooleanNetwork:
    """Two nodes with ``f1 = f2 = x1 & !x2``; only fixed point ``00``."""
    return BooleanNetwork.from_outputs(["00", "00", "11", "00"])


def flip_mbn(dt=(2, 1)) -> MemoryNetwork:
    return MemoryNetwork(flip_bn(), tuple(dt))


def flip_gpbn(dt=(2, 1)) -> GpbnNetwork:
    f = BooleanFunction.from_bits("0010")
    return GpbnNetwork((f, f), tuple(dt))


def disjunctive_chain() -> BooleanNetwork:
    """``(x2, x1 | x3, x2)``: strongly connected, positive and disjunctive."""
    return BooleanNetwork.from_callables(3, [lambda x: x[1], lambda x: x[0] | x[2],
                                             lambda x: x[1]])


def flip_block(n: int, a: int, b: int) -> BooleanNetwork:
    """``n`` nodes, all 0 but a two-node block at positions ``a != b`` (0-based).

    ``..1,0..`` goes to ``..0,1..``, ``..1,1..`` goes to ``..1,0..``, and every
    other state goes to all-zero.  With ``dt_a = 2`` the MBN picks up the
    cycle ``..1,1.. <-> ..2,0..``.
    """
    if a == b or not (0 <= a < n and 0 <= b < n):
        raise ValueError("need two distinct positions inside the network")

    def block(x, ya, yb):
        return all(v == 0 for i, v in enumerate(x) if i not in (a, b)) and (x[a], x[b]) == (ya, yb)

    def f(i):
        def fi(x):
            if block(x, 1, 0):
                return 1 if i == b else 0
            if block(x, 1, 1):
                return 1 if i == a else 0
            return 0
        return fi

    return BooleanNetwork.from_callables(n, [f(i) for i in range(n)])
