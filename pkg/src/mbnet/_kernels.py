"""Compiled inner loops for successor maps and functional-graph traversal.

Label codes used by ``chase``: -1 unvisited, -2 on the current walk,
-3 excluded by a mask, ``>= 0`` attractor id in discovery order.
"""
import numpy as np
from numba import njit

UNVISITED = -1
ON_PATH = -2
EXCLUDED = -3


@njit(cache=True, nogil=True)
def _mbn_next(v, tabs, dt, strides, digits):
    n = dt.size
    rem = v
    row = 0
    for i in range(n):
        r = dt[i] + 1
        d = rem % r
        rem //= r
        digits[i] = d
        row = (row << 1) | (1 if d >= 1 else 0)
    out = 0
    for i in range(n):
        if tabs[i, row]:
            out += dt[i] * strides[i]
        elif digits[i] > 0:
            out += (digits[i] - 1) * strides[i]
    return out


@njit(cache=True, nogil=True)
def mbn_successor_range(tabs, dt, strides, start, stop, out):
    """Fill ``out[k - start]`` with the successor of every ``k`` in ``start..stop-1``."""
    digits = np.zeros(dt.size, dtype=np.int64)
    for k in range(start, stop):
        out[k - start] = _mbn_next(k, tabs, dt, strides, digits)


@njit(cache=True)
def _next(v, dense, succ, tabs, dt, strides, digits):
    if dense:
        return np.int64(succ[v])
    return _mbn_next(v, tabs, dt, strides, digits)


@njit(cache=True)
def chase(n_states, dense, succ, tabs, dt, strides, label, trans):
    """Single pass over the functional graph.

    On return ``label[k]`` is the attractor reached from ``k`` and
    ``trans[k]`` the number of steps before entering its cycle.  Returns the
    first-discovered state of every cycle, in discovery order.
    """
    digits = np.zeros(dt.size, dtype=np.int64)
    heads = np.empty(16, dtype=np.int64)
    n_attr = 0
    for s in range(n_states):
        if label[s] != UNVISITED:
            continue
        v = s
        pos = 0
        while label[v] == UNVISITED:
            label[v] = ON_PATH
            trans[v] = pos
            pos += 1
            v = _next(v, dense, succ, tabs, dt, strides, digits)
        if label[v] == ON_PATH:
            aid = n_attr
            n_attr += 1
            if n_attr > heads.size:
                grown = np.empty(heads.size * 2, dtype=np.int64)
                grown[:heads.size] = heads
                heads = grown
            heads[aid] = v
            entry = trans[v]
            w = v
            while True:
                label[w] = aid
                trans[w] = 0
                w = _next(w, dense, succ, tabs, dt, strides, digits)
                if w == v:
                    break
            w = s
            for p in range(entry):
                label[w] = aid
                trans[w] = entry - p
                w = _next(w, dense, succ, tabs, dt, strides, digits)
        else:
            # label[v] == EXCLUDED cannot happen for forward-closed masks
            aid = label[v]
            base = trans[v]
            w = s
            for p in range(pos):
                label[w] = aid
                trans[w] = base + (pos - p)
                w = _next(w, dense, succ, tabs, dt, strides, digits)
    return heads[:n_attr].copy()


@njit(cache=True)
def cycle_from(head, dense, succ, tabs, dt, strides):
    digits = np.zeros(dt.size, dtype=np.int64)
    length = 1
    w = _next(head, dense, succ, tabs, dt, strides, digits)
    while w != head:
        length += 1
        w = _next(w, dense, succ, tabs, dt, strides, digits)
    out = np.empty(length, dtype=np.int64)
    w = head
    for p in range(length):
        out[p] = w
        w = _next(w, dense, succ, tabs, dt, strides, digits)
    return out


@njit(cache=True)
def relabel_and_count(label, remap, n_attr):
    """Apply ``remap`` to non-negative labels in place; return basin sizes."""
    counts = np.zeros(n_attr, dtype=np.int64)
    for k in range(label.size):
        a = label[k]
        if a >= 0:
            b = remap[a]
            label[k] = b
            counts[b] += 1
    return counts


@njit(cache=True)
def masked_max(trans, label):
    m = 0
    for k in range(label.size):
        if label[k] >= 0 and trans[k] > m:
            m = trans[k]
    return m
