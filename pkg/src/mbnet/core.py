"""Network definitions and exact one-step parallel updates.

Three models share the same atomic unit, a full-arity truth table:

* ``BooleanNetwork`` -- every node applies ``x_i(t+1) = f_i(x(t))``.
* ``MemoryNetwork`` -- a Boolean network plus a delay vector ``dt``.  Its
  configurations are counter vectors ``d`` with ``0 <= d_i <= dt_i``; node
  ``i`` reads as 1 whenever ``d_i >= 1``.
* ``GpbnNetwork`` -- gene/protein pairs.  Genes read protein presence, and
  an expressed gene refills its protein's decay counter one step later.

Two index orders are used and never mixed:

* truth-table rows read the input vector with node 1 as the MOST
  significant bit, the order in which printed truth tables list rows;
* dense state indices are little-endian mixed radix, node 1 LEAST
  significant, radix ``dt_i + 1``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence

import numpy as np

MAX_TABLE_ARITY = 26


class InvalidStateError(ValueError):
    """A configuration lies outside the state space of its network."""


def _as_bits(x: Sequence[int]) -> tuple[int, ...]:
    bits = tuple(int(v) for v in x)
    if any(v not in (0, 1) for v in bits):
        raise InvalidStateError(f"not a bit vector: {tuple(x)!r}")
    return bits


def row_index(x: Sequence[int]) -> int:
    """Truth-table row of the input vector ``x`` (node 1 most significant)."""
    k = 0
    for v in x:
        k = (k << 1) | (1 if v else 0)
    return k


def row_bits(k: int, n: int) -> tuple[int, ...]:
    return tuple((k >> (n - 1 - i)) & 1 for i in range(n))


@dataclass(frozen=True, eq=False)
class BooleanFunction:
    """Truth table of a function ``{0,1}^arity -> {0,1}``.

    ``table[k]`` is the output on the input whose bits, node 1 first, spell
    ``k`` in binary.
    """

    arity: int
    table: np.ndarray

    def __post_init__(self):
        if self.arity < 0 or self.arity > MAX_TABLE_ARITY:
            raise ValueError(f"arity must be in 0..{MAX_TABLE_ARITY}, got {self.arity}")
        tab = np.asarray(self.table)
        if tab.shape != (1 << self.arity,):
            raise ValueError(
                f"table length must be 2^{self.arity} = {1 << self.arity}, got {tab.size}")
        if tab.size and (tab.min() < 0 or tab.max() > 1):
            raise ValueError("table entries must be 0 or 1")
        tab = tab.astype(np.uint8, copy=True)
        tab.setflags(write=False)
        object.__setattr__(self, "table", tab)

    @classmethod
    def from_bits(cls, bits: str | Sequence[int]) -> "BooleanFunction":
        """Build from a row-ordered bit string such as ``"0010"``."""
        vals = [int(c) for c in bits]
        arity = max(len(vals).bit_length() - 1, 0)
        if len(vals) != 1 << arity:
            raise ValueError(f"bit string length {len(vals)} is not a power of two")
        return cls(arity, np.array(vals, dtype=np.uint8))

    @classmethod
    def from_callable(cls, arity: int, fn: Callable[[tuple[int, ...]], int]) -> "BooleanFunction":
        tab = np.fromiter((1 if fn(row_bits(k, arity)) else 0 for k in range(1 << arity)),
                          dtype=np.uint8, count=1 << arity)
        return cls(arity, tab)

    @classmethod
    def constant(cls, arity: int, value: int) -> "BooleanFunction":
        return cls(arity, np.full(1 << arity, 1 if value else 0, dtype=np.uint8))

    @classmethod
    def variable(cls, arity: int, j: int) -> "BooleanFunction":
        """The projection ``x -> x_j`` (0-based ``j``)."""
        if not 0 <= j < arity:
            raise ValueError(f"variable index {j} out of range for arity {arity}")
        k = np.arange(1 << arity, dtype=np.int64)
        return cls(arity, ((k >> (arity - 1 - j)) & 1).astype(np.uint8))

    def __call__(self, x: Sequence[int]) -> int:
        return eval_function(self, x)

    def bits(self) -> str:
        return "".join(str(int(v)) for v in self.table)

    def depends_on(self, j: int) -> bool:
        tab = self.table.reshape((2,) * self.arity) if self.arity else self.table
        a = np.take(tab, 0, axis=j)
        b = np.take(tab, 1, axis=j)
        return bool(np.any(a != b))

    def __eq__(self, other):
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.arity == other.arity and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.arity, self.table.tobytes()))

    def __repr__(self):
        if self.arity <= 4:
            return f"BooleanFunction({self.bits()!r})"
        return f"BooleanFunction(arity={self.arity})"


def eval_function(f: BooleanFunction, x: Sequence[int]) -> int:
    if len(x) != f.arity:
        raise ValueError(f"input length {len(x)} does not match arity {f.arity}")
    return int(f.table[row_index(x)])


def _default_names(n: int) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(n))


@dataclass(frozen=True, eq=False)
class BooleanNetwork:
    """``n`` nodes, each with a full-width local function of arity ``n``."""

    functions: tuple[BooleanFunction, ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        fs = tuple(self.functions)
        n = len(fs)
        if n == 0:
            raise ValueError("a network needs at least one node")
        for i, f in enumerate(fs):
            if f.arity != n:
                raise ValueError(f"function {i + 1} has arity {f.arity}, expected {n}")
        names = tuple(self.names) if self.names else _default_names(n)
        if len(names) != n:
            raise ValueError(f"{len(names)} names for {n} nodes")
        if len(set(names)) != n:
            raise ValueError(f"node names must be unique: {names!r}")
        object.__setattr__(self, "functions", fs)
        object.__setattr__(self, "names", names)

    @property
    def n(self) -> int:
        return len(self.functions)

    @classmethod
    def from_outputs(cls, outputs: Sequence[str], names: Sequence[str] = ()) -> "BooleanNetwork":
        """Build from the global map listed row by row.

        ``outputs[k]`` is the word ``F(x)`` for the ``k``-th input row, e.g.
        ``["00", "00", "11", "00"]`` for ``f1 = f2 = x1 & !x2``.
        """
        n = len(outputs[0])
        if len(outputs) != 1 << n:
            raise ValueError(f"expected {1 << n} rows for {n} nodes, got {len(outputs)}")
        cols = [[int(word[i]) for word in outputs] for i in range(n)]
        return cls(tuple(BooleanFunction.from_bits(c) for c in cols), tuple(names))

    @classmethod
    def from_callables(cls, n: int, fns: Sequence[Callable], names: Sequence[str] = ()):
        return cls(tuple(BooleanFunction.from_callable(n, fn) for fn in fns), tuple(names))

    def step(self, x: Sequence[int]) -> tuple[int, ...]:
        return bn_step(self, x)

    def outputs(self) -> list[str]:
        """The global map as row-ordered output words (inverse of ``from_outputs``)."""
        tabs = self.tables()
        return ["".join(str(int(tabs[i, k])) for i in range(self.n)) for k in range(1 << self.n)]

    def tables(self) -> np.ndarray:
        """``(n, 2^n)`` uint8 matrix of all truth tables."""
        cached = self.__dict__.get("_tables")
        if cached is None:
            cached = np.stack([f.table for f in self.functions])
            cached.setflags(write=False)
            object.__setattr__(self, "_tables", cached)
        return cached

    def fixed_points(self) -> list[tuple[int, ...]]:
        tabs = self.tables()
        rows = np.arange(1 << self.n)
        out = np.zeros_like(rows)
        for i in range(self.n):
            out = (out << 1) | tabs[i].astype(np.int64)
        return [row_bits(int(k), self.n) for k in np.flatnonzero(out == rows)]

    def with_delays(self, dt: Sequence[int] | None = None) -> "MemoryNetwork":
        return MemoryNetwork(self, tuple(dt) if dt is not None else (1,) * self.n)

    def __eq__(self, other):
        if not isinstance(other, BooleanNetwork):
            return NotImplemented
        return self.functions == other.functions and self.names == other.names

    def __hash__(self):
        return hash((self.functions, self.names))

    def __repr__(self):
        return f"BooleanNetwork(n={self.n}, names={self.names!r})"


def bn_step(F: BooleanNetwork, x: Sequence[int]) -> tuple[int, ...]:
    if len(x) != F.n:
        raise ValueError(f"state length {len(x)} does not match network size {F.n}")
    r = row_index(_as_bits(x))
    return tuple(int(f.table[r]) for f in F.functions)


def _check_delays(dt: Sequence[int], n: int) -> tuple[int, ...]:
    dt = tuple(int(v) for v in dt)
    if len(dt) != n:
        raise ValueError(f"delay vector has length {len(dt)}, expected {n}")
    for v in dt:
        if v < 1:
            raise ValueError(f"delay must be >= 1, got {v}")
    return dt


@dataclass(frozen=True, eq=False)
class MemoryNetwork:
    """A Boolean network whose firing nodes stay on for ``dt_i`` steps."""

    bn: BooleanNetwork
    dt: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dt", _check_delays(self.dt, self.bn.n))

    @property
    def n(self) -> int:
        return self.bn.n

    @property
    def names(self) -> tuple[str, ...]:
        return self.bn.names

    @property
    def radices(self) -> tuple[int, ...]:
        return tuple(v + 1 for v in self.dt)

    @property
    def state_count(self) -> int:
        return int(np.prod([v + 1 for v in self.dt], dtype=object))

    def validate(self, d: Sequence[int]) -> tuple[int, ...]:
        d = tuple(int(v) for v in d)
        if len(d) != self.n:
            raise InvalidStateError(f"configuration has length {len(d)}, expected {self.n}")
        for i, (v, top) in enumerate(zip(d, self.dt)):
            if v < 0 or v > top:
                raise InvalidStateError(
                    f"counter exceeds delay: node {self.names[i]} has {v}, allowed 0..{top}")
        return d

    def step(self, d: Sequence[int]) -> tuple[int, ...]:
        return mbn_step(self, d)

    def fixed_points(self) -> list[tuple[int, ...]]:
        """Counter form of the fixed points; they are exactly the lifted BN fixed points."""
        return [tuple(t if b else 0 for b, t in zip(x, self.dt)) for x in self.bn.fixed_points()]

    def states(self) -> Iterator[tuple[int, ...]]:
        """All configurations in dense-index order."""
        for k in range(self.state_count):
            yield decode_index(k, self.dt)

    def successor_indices(self, idx: np.ndarray) -> np.ndarray:
        """Vectorised ``encode(mbn_step(decode(k)))`` over an index array."""
        idx = np.asarray(idx, dtype=np.int64)
        tabs = self.bn.tables()
        n = self.n
        strides = mixed_radix_strides(self.dt)
        row = np.zeros(idx.shape, dtype=np.int64)
        digits = []
        for i in range(n):
            di = (idx // strides[i]) % (self.dt[i] + 1)
            digits.append(di)
            row = (row << 1) | (di >= 1)
        out = np.zeros(idx.shape, dtype=np.int64)
        for i in range(n):
            fired = tabs[i][row].astype(bool)
            nd = np.where(fired, self.dt[i], np.maximum(digits[i] - 1, 0))
            out += nd * strides[i]
        return out

    def __eq__(self, other):
        if not isinstance(other, MemoryNetwork):
            return NotImplemented
        return self.bn == other.bn and self.dt == other.dt

    def __hash__(self):
        return hash((self.bn, self.dt))


def projection(d: Sequence[int]) -> tuple[int, ...]:
    """Boolean reading of a counter configuration."""
    return tuple(1 if v >= 1 else 0 for v in d)


def mbn_step(M: MemoryNetwork, d: Sequence[int]) -> tuple[int, ...]:
    # f_i(b) = 1 refills the counter to dt_i >= 1, which is why one formula
    # covers both the state and the delay update.
    d = M.validate(d)
    fired = bn_step(M.bn, projection(d))
    return tuple(t if f else max(v - 1, 0) for f, v, t in zip(fired, d, M.dt))


def expand_seed(x: Sequence[int], dt: Sequence[int], enumerate_all: bool = False):
    """Counter configurations compatible with a Boolean seed ``x(0)``.

    By default an active node starts with a full counter ``dt_i``.  With
    ``enumerate_all`` every choice ``d_i in 1..dt_i`` is produced.
    """
    x = _as_bits(x)
    dt = _check_delays(dt, len(x))
    if not enumerate_all:
        return [tuple(t if b else 0 for b, t in zip(x, dt))]
    choices = [range(1, t + 1) if b else (0,) for b, t in zip(x, dt)]
    return [tuple(c) for c in itertools.product(*choices)]


def mixed_radix_strides(dt: Sequence[int]) -> list[int]:
    strides, s = [], 1
    for v in dt:
        strides.append(s)
        s *= v + 1
    return strides


def encode_index(d: Sequence[int], dt: Sequence[int]) -> int:
    if len(d) != len(dt):
        raise InvalidStateError(f"configuration length {len(d)} != delay length {len(dt)}")
    k, s = 0, 1
    for v, t in zip(d, dt):
        if not 0 <= v <= t:
            raise InvalidStateError(f"counter exceeds delay: {v} outside 0..{t}")
        k += int(v) * s
        s *= t + 1
    return k


def decode_index(k: int, dt: Sequence[int]) -> tuple[int, ...]:
    total = 1
    for t in dt:
        total *= t + 1
    if not 0 <= k < total:
        raise IndexError(f"state index {k} outside 0..{total - 1}")
    out = []
    for t in dt:
        k, r = divmod(int(k), t + 1)
        out.append(r)
    return tuple(out)


# --- gene/protein networks -------------------------------------------------

class GpbnState(NamedTuple):
    genes: tuple[int, ...]
    protein_delta: tuple[int, ...]

    @property
    def proteins(self) -> tuple[int, ...]:
        return projection(self.protein_delta)


@dataclass(frozen=True, eq=False)
class GpbnNetwork:
    """``N`` gene/protein pairs; gene functions read protein presence."""

    gene_functions: tuple[BooleanFunction, ...]
    dt: tuple[int, ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        fs = tuple(self.gene_functions)
        N = len(fs)
        if N == 0:
            raise ValueError("a network needs at least one pair")
        for i, f in enumerate(fs):
            if f.arity != N:
                raise ValueError(f"gene function {i + 1} has arity {f.arity}, expected {N}")
        names = tuple(self.names) if self.names else tuple(f"P{i + 1}" for i in range(N))
        if len(names) != N or len(set(names)) != N:
            raise ValueError(f"need {N} unique pair names, got {names!r}")
        object.__setattr__(self, "gene_functions", fs)
        object.__setattr__(self, "dt", _check_delays(self.dt, N))
        object.__setattr__(self, "names", names)

    @property
    def N(self) -> int:
        return len(self.gene_functions)

    @property
    def radices(self) -> tuple[int, ...]:
        """Proteins first (``dt_i + 1``), then genes (2), as in printed GPBN tables."""
        return tuple(t + 1 for t in self.dt) + (2,) * self.N

    @property
    def state_count(self) -> int:
        return int(np.prod(self.radices, dtype=object))

    def validate(self, s: GpbnState) -> GpbnState:
        genes, prot = _as_bits(s[0]), tuple(int(v) for v in s[1])
        if len(genes) != self.N or len(prot) != self.N:
            raise InvalidStateError("state shape does not match network size")
        for v, t in zip(prot, self.dt):
            if not 0 <= v <= t:
                raise InvalidStateError(f"protein counter {v} outside 0..{t}")
        return GpbnState(genes, prot)

    def step(self, s: GpbnState) -> GpbnState:
        return gpbn_step(self, s)

    def encode(self, s: GpbnState) -> int:
        s = self.validate(s)
        return encode_index(s.protein_delta + s.genes, tuple(self.dt) + (1,) * self.N)

    def decode(self, k: int) -> GpbnState:
        digits = decode_index(k, tuple(self.dt) + (1,) * self.N)
        return GpbnState(digits[self.N:], digits[:self.N])

    def successor_indices(self, idx: np.ndarray) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        N = self.N
        dts = tuple(self.dt) + (1,) * N
        strides = mixed_radix_strides(dts)
        prot = [(idx // strides[i]) % (self.dt[i] + 1) for i in range(N)]
        genes = [(idx // strides[N + i]) % 2 for i in range(N)]
        row = np.zeros(idx.shape, dtype=np.int64)
        for p in prot:
            row = (row << 1) | (p >= 1)
        out = np.zeros(idx.shape, dtype=np.int64)
        for i in range(N):
            nd = np.where(genes[i] == 1, self.dt[i], np.maximum(prot[i] - 1, 0))
            out += nd * strides[i]
            out += self.gene_functions[i].table[row].astype(np.int64) * strides[N + i]
        return out


def gpbn_step(Gp: GpbnNetwork, s: GpbnState) -> GpbnState:
    s = Gp.validate(s)
    present = s.proteins
    genes = tuple(eval_function(f, present) for f in Gp.gene_functions)
    prot = tuple(t if g else max(v - 1, 0) for g, v, t in zip(s.genes, s.protein_delta, Gp.dt))
    return GpbnState(genes, prot)


# --- interaction graph -----------------------------------------------------

@dataclass(frozen=True)
class InteractionGraph:
    """Signed dependency edges ``(source, sign, target)`` with 0-based nodes."""

    n: int
    edges: frozenset = field(default_factory=frozenset)
    names: tuple[str, ...] = ()

    def signs(self, j: int, i: int) -> set[str]:
        return {s for (a, s, b) in self.edges if a == j and b == i}

    def predecessors(self, i: int) -> set[int]:
        return {a for (a, _, b) in self.edges if b == i}

    def label(self, j: int, i: int) -> str:
        s = self.signs(j, i)
        return "±" if len(s) == 2 else "".join(s)

    def has_cycle_beyond_positive_loops(self) -> bool:
        """True if some cycle is not just a positive self-loop."""
        for (a, s, b) in self.edges:
            if a == b and s == "-":
                return True
        adj = {i: {b for (a, _, b) in self.edges if a == i and b != i} for i in range(self.n)}
        color = [0] * self.n
        for root in range(self.n):
            if color[root]:
                continue
            stack = [(root, iter(adj[root]))]
            color[root] = 1
            while stack:
                v, it = stack[-1]
                for w in it:
                    if color[w] == 1:
                        return True
                    if color[w] == 0:
                        color[w] = 1
                        stack.append((w, iter(adj[w])))
                        break
                else:
                    color[v] = 2
                    stack.pop()
        return False


def interaction_graph(F: BooleanNetwork) -> InteractionGraph:
    n = F.n
    edges = set()
    for i, f in enumerate(F.functions):
        tab = f.table.reshape((2,) * n)
        for j in range(n):
            lo = np.take(tab, 0, axis=j).astype(np.int8)
            hi = np.take(tab, 1, axis=j).astype(np.int8)
            if np.any(hi > lo):
                edges.add((j, "+", i))
            if np.any(hi < lo):
                edges.add((j, "-", i))
    return InteractionGraph(n, frozenset(edges), F.names)


def all_bit_vectors(n: int) -> Iterable[tuple[int, ...]]:
    """Bit vectors in truth-table row order."""
    return itertools.product((0, 1), repeat=n)
