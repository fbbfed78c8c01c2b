"""Every two-node Boolean network, filed by its set of fixed points.

A rule is written ``[k,x]``, ``[k,x,y]`` ... where ``x, y, ...`` are the fixed
points as binary words and ``k`` numbers the networks of that class.  The
numbering inside each class follows the catalogue tables below, which are
kept verbatim as data: each column lists ``F(00), F(01), F(10), F(11)``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from ..core import BooleanNetwork

WORDS = ("00", "01", "10", "11")


def _grid(free: dict[str, list[str]], fixed: dict[str, str]) -> list[tuple[str, ...]]:
    """Columns in catalogue order: the first listed free row varies slowest."""
    keys = list(free)
    cols = []
    for combo in itertools.product(*(free[k] for k in keys)):
        row = dict(fixed)
        row.update(zip(keys, combo))
        cols.append(tuple(row[w] for w in WORDS))
    return cols


# unique fixed point 00: rows 01, 10, 11 range over the non-fixed outputs
_T00 = _grid({"01": ["00", "10", "11"], "10": ["00", "01", "11"], "11": ["00", "01", "10"]},
             {"00": "00"})

CATALOGUE: dict[tuple[str, ...], list[tuple[str, ...]]] = {
    ("00",): _T00,
    ("00", "01"): _grid({"10": ["00", "01", "11"], "11": ["00", "01", "10"]},
                        {"00": "00", "01": "01"}),
    ("00", "10"): _grid({"01": ["00", "10", "11"], "11": ["00", "01", "10"]},
                        {"00": "00", "10": "10"}),
    ("00", "11"): _grid({"01": ["00", "10", "11"], "10": ["00", "01", "11"]},
                        {"00": "00", "11": "11"}),
    ("01", "10"): _grid({"00": ["01", "10", "11"], "11": ["00", "01", "10"]},
                        {"01": "01", "10": "10"}),
    ("01", "11"): _grid({"00": ["01", "10", "11"], "10": ["00", "01", "11"]},
                        {"01": "01", "11": "11"}),
    ("10", "11"): _grid({"00": ["01", "10", "11"], "01": ["00", "10", "11"]},
                        {"10": "10", "11": "11"}),
    ("00", "01", "10"): _grid({"11": ["00", "01", "10"]}, {"00": "00", "01": "01", "10": "10"}),
    ("01", "10", "11"): _grid({"00": ["01", "10", "11"]}, {"01": "01", "10": "10", "11": "11"}),
    ("00", "01", "11"): _grid({"10": ["00", "01", "11"]}, {"00": "00", "01": "01", "11": "11"}),
    ("00", "10", "11"): _grid({"01": ["00", "10", "11"]}, {"00": "00", "10": "10", "11": "11"}),
    ("00", "01", "10", "11"): [("00", "01", "10", "11")],
}

CLASS_IDS = tuple(CATALOGUE)

PRIMARY_CLASSES = (("00",), ("00", "01"), ("00", "11"), ("01", "10"), ("01", "11"),
                   ("00", "01", "10"), ("01", "10", "11"), ("00", "01", "11"),
                   ("00", "01", "10", "11"))
# the remaining catalogued classes are the node-swap images of these


def _class_key(cls) -> tuple[str, ...]:
    if isinstance(cls, str):
        parts = [p for p in re.split(r"[,\s{}()\[\]]+", cls) if p]
    else:
        parts = [str(p) for p in cls]
    key = tuple(sorted(parts))
    if key not in CATALOGUE:
        raise ValueError(f"unknown fixed-point class {cls!r}")
    return key


@dataclass(frozen=True, order=True)
class RuleId:
    class_id: tuple[str, ...]
    k: int

    def __post_init__(self):
        key = _class_key(self.class_id)
        object.__setattr__(self, "class_id", key)
        size = len(CATALOGUE[key])
        if not 1 <= self.k <= size:
            raise ValueError(f"rule index {self.k} outside 1..{size} for class {key}")

    @classmethod
    def parse(cls, text: str) -> "RuleId":
        """Accepts ``"[6,00]"``, ``"6,00,01"`` and similar."""
        parts = [p for p in re.split(r"[,\s\[\]]+", text) if p]
        if len(parts) < 2 or not parts[0].isdigit():
            raise ValueError(f"cannot parse rule id {text!r}")
        return cls(tuple(parts[1:]), int(parts[0]))

    def __str__(self):
        return "[" + ",".join([str(self.k), *self.class_id]) + "]"

    @property
    def fixed_points(self) -> list[tuple[int, int]]:
        return [(int(w[0]), int(w[1])) for w in self.class_id]


def rule(rid: RuleId | str, *args) -> BooleanNetwork:
    """The catalogued network, e.g. ``rule("[13,00]")`` or ``rule(("00",), 13)``."""
    if isinstance(rid, str):
        rid = RuleId.parse(rid)
    elif not isinstance(rid, RuleId):
        rid = RuleId(rid, *args)
    return BooleanNetwork.from_outputs(list(CATALOGUE[rid.class_id][rid.k - 1]))


def rules_of(cls) -> list[RuleId]:
    key = _class_key(cls)
    return [RuleId(key, k) for k in range(1, len(CATALOGUE[key]) + 1)]


def all_rule_ids() -> list[RuleId]:
    return [r for c in CLASS_IDS for r in rules_of(c)]


def fixed_point_words(F: BooleanNetwork) -> tuple[str, ...]:
    return tuple("".join(map(str, x)) for x in F.fixed_points())


def enumerate_size2_by_fixed_points() -> dict[tuple[str, ...], list[BooleanNetwork]]:
    """All 256 two-node networks grouped by their exact fixed-point sets.

    Groups are keyed by the sorted fixed-point words (``()`` for networks
    without fixed points) and networks appear in global-map order.
    """
    groups: dict[tuple[str, ...], list[BooleanNetwork]] = {}
    for outs in itertools.product(WORDS, repeat=4):
        F = BooleanNetwork.from_outputs(list(outs))
        groups.setdefault(fixed_point_words(F), []).append(F)
    return groups


def identify(F: BooleanNetwork) -> RuleId | None:
    """Catalogue id of a two-node network, or ``None`` if its class is not catalogued."""
    if F.n != 2:
        raise ValueError("only two-node networks are catalogued")
    key = fixed_point_words(F)
    outs = tuple(F.outputs())
    for k, col in enumerate(CATALOGUE.get(key, ()), start=1):
        if col == outs:
            return RuleId(key, k)
    return None


def swap_nodes(F: BooleanNetwork) -> BooleanNetwork:
    """The same network with the two nodes' roles exchanged."""
    outs = F.outputs()
    sw = lambda w: w[::-1]
    return BooleanNetwork.from_outputs([sw(outs[int(sw(w), 2)]) for w in WORDS])


def mirror(rid: RuleId) -> RuleId:
    """Rule obtained by swapping the nodes; may lie in another class."""
    out = identify(swap_nodes(rule(rid)))
    assert out is not None
    return out
