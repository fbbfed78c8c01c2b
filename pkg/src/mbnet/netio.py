"""Reading and writing networks, and exporting results.

Network documents are JSON::

    {
      "model": "mbn",                      # "bn", "mbn" or "gpbn"
      "nodes": [{"name": "x1", "rule": "x1 & !x2"},
                {"name": "x2", "rule": "0010"}],
      "delays": [2, 1],                    # required for mbn/gpbn, absent for bn
      "metadata": {}
    }

A rule is either a truth-table bit string of length ``2^n`` in row order
(node 1 most significant) or a Boolean expression over the node names.
For a GPBN the rules are the gene functions, read on protein presence.

Expression grammar, loosest binding first (all binary operators are
left-associative)::

    or   := xor  (("|" | "∨" | "or")  xor)*
    xor  := and  (("^" | "⊕" | "xor") and)*
    and  := not  (("&" | "∧" | "and") not)*
    not  := ("!" | "¬" | "not") not | atom
    atom := "(" or ")" | "0" | "1" | name | "x<k>"
"""
from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .core import BooleanFunction, BooleanNetwork, GpbnNetwork, InteractionGraph, MemoryNetwork
from .dynamics import AttractorReport, find_attractors


class ParseError(ValueError):
    def __init__(self, msg: str, offset: int):
        super().__init__(f"{msg} at byte {offset}")
        self.offset = offset


class SchemaError(ValueError):
    def __init__(self, path: str, msg: str):
        super().__init__(f"{path}: {msg}")
        self.path = path


# --- expressions -------------------------------------------------------------

_OPS = {
    "!": "not", "¬": "not", "not": "not",
    "&": "and", "∧": "and", "and": "and",
    "^": "xor", "⊕": "xor", "xor": "xor",
    "|": "or", "∨": "or", "or": "or",
    "(": "(", ")": ")",
}
_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_:.]*)|(?P<const>[01](?![0-9]))"
                    r"|(?P<sym>[!¬&∧^⊕|∨()]))")


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    toks, pos = [], 0
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos >= len(src):
            break
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", len(src[:pos].encode()))
        start = m.start(m.lastgroup)
        text = m.group(m.lastgroup)
        if m.lastgroup == "name" and text in _OPS:
            kind = _OPS[text]
        elif m.lastgroup == "sym":
            kind = _OPS[text]
        else:
            kind = m.lastgroup
        toks.append((kind, text, len(src[:start].encode())))
        pos = m.end()
    toks.append(("end", "", len(src.encode())))
    return toks


class _Parser:
    def __init__(self, src: str, names: Sequence[str]):
        self.toks = _tokenize(src)
        self.i = 0
        self.names = list(names)
        n = len(self.names)
        self.k = np.arange(1 << n, dtype=np.int64)
        self.n = n

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> np.ndarray:
        v = self.expr_or()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return v

    def _binary(self, op, sub):
        v = sub()
        while self.peek()[0] == op:
            self.take()
            w = sub()
            v = {"or": np.bitwise_or, "xor": np.bitwise_xor, "and": np.bitwise_and}[op](v, w)
        return v

    def expr_or(self):
        return self._binary("or", self.expr_xor)

    def expr_xor(self):
        return self._binary("xor", self.expr_and)

    def expr_and(self):
        return self._binary("and", self.expr_not)

    def expr_not(self):
        if self.peek()[0] == "not":
            self.take()
            return 1 - self.expr_not()
        return self.atom()

    def atom(self):
        kind, text, off = self.peek()
        if kind == "(":
            self.take()
            v = self.expr_or()
            self.take(")")
            return v
        if kind == "const":
            self.take()
            return np.full(self.k.shape, int(text), dtype=np.uint8)
        if kind == "name":
            self.take()
            return self.variable(text, off)
        what = "end of input" if kind == "end" else repr(text)
        raise ParseError(f"expected a variable, constant or '(', found {what}", off)

    def variable(self, name: str, off: int) -> np.ndarray:
        if name in self.names:
            j = self.names.index(name)
        else:
            m = re.fullmatch(r"x(\d+)", name)
            if not m or not 1 <= int(m.group(1)) <= self.n:
                raise ParseError(f"unknown variable {name!r}", off)
            j = int(m.group(1)) - 1
        return ((self.k >> (self.n - 1 - j)) & 1).astype(np.uint8)


def parse_expression(src: str, names: Sequence[str]) -> BooleanFunction:
    """Truth table of ``src`` over the full node list ``names``."""
    return BooleanFunction(len(names), _Parser(src, names).parse())


# --- documents ---------------------------------------------------------------

MODELS = ("bn", "mbn", "gpbn")


@dataclass
class NetworkDocument:
    model: str
    names: list[str]
    rules: list[str]
    delays: list[int] | None = None
    metadata: dict[str, Any] = field(default_factory=dict)

    def functions(self) -> tuple[BooleanFunction, ...]:
        n = len(self.names)
        out = []
        for i, src in enumerate(self.rules):
            if re.fullmatch(r"[01]+", src) and len(src) == 1 << n:
                out.append(BooleanFunction.from_bits(src))
                continue
            try:
                out.append(parse_expression(src, self.names))
            except ParseError as exc:
                raise SchemaError(f"nodes[{i}].rule", str(exc)) from None
        return tuple(out)

    def to_model(self, unit_delays: bool = False):
        """The network described; with ``unit_delays`` a BN comes back as an MBN."""
        fs = self.functions()
        if self.model == "gpbn":
            return GpbnNetwork(fs, tuple(self.delays), tuple(self.names))
        bn = BooleanNetwork(fs, tuple(self.names))
        if self.model == "bn":
            return bn.with_delays() if unit_delays else bn
        return MemoryNetwork(bn, tuple(self.delays))


def _require(cond: bool, path: str, msg: str):
    if not cond:
        raise SchemaError(path, msg)


def parse_document(data: Any) -> NetworkDocument:
    _require(isinstance(data, dict), "$", "document must be a JSON object")
    unknown = set(data) - {"model", "nodes", "delays", "metadata"}
    _require(not unknown, "$", f"unknown fields {sorted(unknown)}")
    model = data.get("model")
    _require(model in MODELS, "model", f"must be one of {list(MODELS)}, got {model!r}")
    nodes = data.get("nodes")
    _require(isinstance(nodes, list) and nodes, "nodes", "must be a non-empty list")
    names, rules = [], []
    for i, nd in enumerate(nodes):
        _require(isinstance(nd, dict), f"nodes[{i}]", "must be an object")
        _require(isinstance(nd.get("name"), str) and nd["name"], f"nodes[{i}].name",
                 "must be a non-empty string")
        _require(isinstance(nd.get("rule"), str), f"nodes[{i}].rule", "must be a string")
        extra = set(nd) - {"name", "rule"}
        _require(not extra, f"nodes[{i}]", f"unknown fields {sorted(extra)}")
        names.append(nd["name"])
        rules.append(nd["rule"])
    _require(len(set(names)) == len(names), "nodes", "node names must be unique")
    delays = data.get("delays")
    if model == "bn":
        _require(delays is None, "delays", "not allowed for model 'bn'")
    else:
        _require(isinstance(delays, list), "delays", f"required for model {model!r}")
        _require(len(delays) == len(names), "delays",
                 f"has {len(delays)} entries for {len(names)} nodes")
        for i, v in enumerate(delays):
            _require(isinstance(v, int) and not isinstance(v, bool), f"delays[{i}]",
                     "must be an integer")
            _require(v >= 1, f"delays[{i}]", f"delay must be ≥ 1, got {v}")
    meta = data.get("metadata", {})
    _require(isinstance(meta, dict), "metadata", "must be an object")
    doc = NetworkDocument(model, names, rules, delays, dict(meta))
    doc.functions()
    return doc


def load_document(raw: bytes | str) -> NetworkDocument:
    text = raw.decode("utf-8") if isinstance(raw, (bytes, bytearray)) else raw
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})")
    return parse_document(data)


def load_network(raw: bytes | str, unit_delays: bool = False):
    return load_document(raw).to_model(unit_delays=unit_delays)


def to_document(model, metadata: dict | None = None) -> NetworkDocument:
    meta = dict(metadata or {})
    if isinstance(model, GpbnNetwork):
        return NetworkDocument("gpbn", list(model.names), [f.bits() for f in model.gene_functions],
                               list(model.dt), meta)
    if isinstance(model, MemoryNetwork):
        return NetworkDocument("mbn", list(model.names), [f.bits() for f in model.bn.functions],
                               list(model.dt), meta)
    if isinstance(model, BooleanNetwork):
        return NetworkDocument("bn", list(model.names), [f.bits() for f in model.functions],
                               None, meta)
    raise TypeError(f"cannot serialise {type(model).__name__}")


def document_json(doc: NetworkDocument) -> dict:
    out: dict[str, Any] = {"model": doc.model,
                           "nodes": [{"name": n, "rule": r} for n, r in zip(doc.names, doc.rules)]}
    if doc.delays is not None:
        out["delays"] = list(doc.delays)
    out["metadata"] = doc.metadata
    return out


def save_network(model, metadata: dict | None = None) -> bytes:
    doc = model if isinstance(model, NetworkDocument) else to_document(model, metadata)
    return (json.dumps(document_json(doc), indent=2, ensure_ascii=False) + "\n").encode("utf-8")


# --- exporters ---------------------------------------------------------------

def _q(s: str) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(obj, name: str = "G") -> str:
    """DOT text for a transition graph or an interaction graph.

    Accepts an ``AttractorReport`` or ``DiscreteSystem`` (states labelled by
    their counters, attractor states drawn with a double border and
    ``attractor=true``) or an ``InteractionGraph`` (edges labelled ``+``,
    ``-`` or ``±``).
    """
    lines = [f"digraph {_q(name)} {{"]
    if isinstance(obj, InteractionGraph):
        names = obj.names or tuple(f"x{i + 1}" for i in range(obj.n))
        for v in names:
            lines.append(f"  {_q(v)};")
        pairs = sorted({(a, b) for (a, _, b) in obj.edges})
        for a, b in pairs:
            sign = obj.label(a, b)
            lines.append(f"  {_q(names[a])} -> {_q(names[b])} [label={_q(sign)}, sign={_q(sign)}];")
    else:
        rep = obj if isinstance(obj, AttractorReport) else find_attractors(obj)
        sys = rep.system
        on_cycle = np.zeros(sys.state_count, dtype=bool)
        for c in rep.attractors:
            on_cycle[c] = True
        succ = sys.successor_array()
        keep = range(sys.state_count) if sys.mask is None else np.flatnonzero(sys.mask)
        for k in keep:
            attrs = "peripheries=2, attractor=true" if on_cycle[k] else "attractor=false"
            lines.append(f"  {_q(sys.label(k))} [{attrs}];")
        for k in keep:
            lines.append(f"  {_q(sys.label(k))} -> {_q(sys.label(int(succ[k])))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# Fixed CSV headers
ATTRACTOR_COLUMNS = ["attractor", "kind", "length", "basin_size", "states"]
LANDSCAPE_COLUMNS = ["dt", "states", "fixed_points", "limit_cycles", "cycle_lengths",
                     "basin_sizes", "max_transient"]
DISCREPANCY_COLUMNS = ["rule", "alpha", "beta", "rho", "gamma", "predicted", "observed",
                       "attractor", "anchor"]


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _join(xs, sep=" ") -> str:
    return sep.join(str(x) for x in xs)


def export_csv(obj) -> str:
    """CSV for an ``AttractorReport``, a landscape (list of cells) or a discrepancy report.

    Columns:

    * attractors: ``attractor, kind, length, basin_size, states``
      (states space-separated, each as ``(d1,d2,...)``);
    * landscapes: ``dt, states, fixed_points, limit_cycles, cycle_lengths,
      basin_sizes, max_transient`` (``dt`` as ``a;b``, lists space-separated);
    * discrepancies: ``rule, alpha, beta, rho, gamma, predicted, observed,
      attractor, anchor``.

    An empty list yields the landscape header alone.
    """
    from .size2.closed_form import DiscrepancyReport

    if isinstance(obj, AttractorReport):
        rows = []
        for a, cyc in enumerate(obj.attractors):
            rows.append([a, "FP" if cyc.size == 1 else "LC", int(cyc.size),
                         int(obj.basin_sizes[a]), _join(obj.system.label(k) for k in cyc)])
        return _csv(ATTRACTOR_COLUMNS, rows)
    if isinstance(obj, DiscrepancyReport):
        rows = [[m.rule, m.alpha, m.beta, m.rho, m.gamma, m.predicted or "undetermined",
                 m.observed, _join("(" + ",".join(map(str, s)) + ")" for s in m.attractor),
                 m.anchor] for m in obj.mismatches]
        return _csv(DISCREPANCY_COLUMNS, rows)
    rows = [[_join(c.dt, ";"), c.states, c.fixed_points, len(c.cycle_lengths),
             _join(c.cycle_lengths), _join(c.basin_sizes), c.max_transient] for c in obj]
    return _csv(LANDSCAPE_COLUMNS, rows)


def report_json(rep: AttractorReport) -> dict:
    sys = rep.system
    return {
        "states": sys.size,
        "attractors": [
            {"kind": "FP" if c.size == 1 else "LC", "length": int(c.size),
             "basin_size": int(rep.basin_sizes[a]),
             "states": [sys.label(k) for k in c]}
            for a, c in enumerate(rep.attractors)
        ],
        "max_transient": rep.max_transient,
    }
