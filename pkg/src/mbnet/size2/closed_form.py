"""Closed-form destiny of every MBN on a network with unique fixed point 00.

``classify`` reads the answer off a transcription of the published case
table: each rule has rows ``(kind, delay condition, initial condition)``
and the configuration ``(rho, gamma)`` gets the kind of the row it matches.
``oracle_classify`` answers the same question by simulation and shares no
logic with it.  ``cross_validate`` runs both over a grid.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

from ..core import MemoryNetwork
from ..dynamics import DiscreteSystem, find_attractors
from .rules import RuleId, rule, rules_of

FP = "FP"
LC = "LC"

# rules whose rows involve gcd/lcm or divisibility conditions
NUMBER_THEORETIC = frozenset({7, 13, 16, 19, 22, 25})
FP_STABLE = frozenset({1, 2, 3, 4, 5, 8, 10, 12, 21})
LC_ALWAYS = frozenset({14, 15, 17, 18, 23, 24, 26, 27})


class UndeterminedError(ValueError):
    """No row, or rows of both kinds, match the parameters."""


@dataclass(frozen=True)
class Row:
    kind: str
    delays: Callable[[int, int], bool]
    inits: Callable[[int, int, int, int], bool]
    anchor: str


def _any(a, b, r, g):
    return True


def _exists_multiple(target: int, step: int, kmax: int) -> bool:
    """``target == k * step`` for some ``1 <= k <= kmax``."""
    return any(target == k * step for k in range(1, kmax + 1))


def _congruent_13(a, b, r, g):
    L = math.lcm(a + 1, b + 1)
    ell, k = L // (a + 1), L // (b + 1)
    return any(r + l0 * (a + 1) == g + k0 * (b + 1)
               for l0 in range(ell + 1) for k0 in range(k + 1))


def _rows_16(a, b, r, g, swap=False):
    # [22,00] is [16,00] with the roles of the nodes exchanged
    if swap:
        a, b, r, g = b, a, g, r
    kmax = b + 1  # any k beyond this overshoots beta+1 and gamma <= beta
    div = _exists_multiple(b + 1, a + 1, kmax)
    shift = _exists_multiple(g - r, a + 1, kmax)
    return div, shift


def _t16_fp(a, b, r, g, swap=False):
    div, shift = _rows_16(a, b, r, g, swap)
    rr, gg = (g, r) if swap else (r, g)
    return rr == gg or shift or div


def _t16_lc_lt(a, b, r, g, swap=False):
    div, shift = _rows_16(a, b, r, g, swap)
    rr, gg = (g, r) if swap else (r, g)
    return (rr < gg and not shift and not div) or (rr > gg and not div)


def _build() -> dict[int, list[Row]]:
    T: dict[int, list[Row]] = {}
    for k in FP_STABLE:
        T[k] = [Row(FP, lambda a, b: True, _any, f"[{k},00] FP for all delays and inits")]
    T[6] = [
        Row(FP, lambda a, b: a == 1, _any, "[6,00] FP: alpha=1, all inits"),
        Row(FP, lambda a, b: True,
            lambda a, b, r, g: (r == 1 and g == 0) or r == 0,
            "[6,00] FP: (rho=1 and gamma=0) or rho=0"),
        Row(LC, lambda a, b: a >= 2 and b >= 1,
            lambda a, b, r, g: r >= 2 or (r == 1 and g >= 1),
            "[6,00] LC: (alpha,beta)>=(2,1), rho>=2 or (rho=1 and gamma>=1)"),
    ]
    T[11] = [
        Row(FP, lambda a, b: b == 1, _any, "[11,00] FP: beta=1, all inits"),
        Row(FP, lambda a, b: True,
            lambda a, b, r, g: (r == 0 and g == 1) or g == 0,
            "[11,00] FP: (rho=0 and gamma=1) or gamma=0"),
        Row(LC, lambda a, b: a >= 1 and b >= 2,
            lambda a, b, r, g: g >= 2 or (g == 1 and r >= 1),
            "[11,00] LC: (alpha,beta)>=(1,2), gamma>=2 or (gamma=1 and rho>=1)"),
    ]
    T[7] = [
        Row(FP, lambda a, b: a <= b, _any, "[7,00] FP: alpha<=beta, all inits"),
        Row(FP, lambda a, b: a > b, lambda a, b, r, g: r <= g, "[7,00] FP: alpha>beta, rho<=gamma"),
        Row(LC, lambda a, b: a > b, lambda a, b, r, g: r > g, "[7,00] LC: alpha>beta, rho>gamma"),
    ]
    T[19] = [
        Row(FP, lambda a, b: a >= b, _any, "[19,00] FP: alpha>=beta, all inits"),
        Row(FP, lambda a, b: a < b, lambda a, b, r, g: r >= g, "[19,00] FP: alpha<beta, rho>=gamma"),
        Row(LC, lambda a, b: a < b, lambda a, b, r, g: r < g, "[19,00] LC: alpha<beta, rho<gamma"),
    ]
    T[9] = [
        Row(FP, lambda a, b: True, lambda a, b, r, g: r == 0, "[9,00] FP: rho=0"),
        Row(LC, lambda a, b: True, lambda a, b, r, g: r >= 1, "[9,00] LC: rho>=1"),
    ]
    T[20] = [
        Row(FP, lambda a, b: True, lambda a, b, r, g: g == 0, "[20,00] FP: gamma=0"),
        Row(LC, lambda a, b: True, lambda a, b, r, g: g >= 1, "[20,00] LC: gamma>=1"),
    ]
    T[13] = [
        Row(FP, lambda a, b: math.gcd(a + 1, b + 1) == 1, _any,
            "[13,00] FP: gcd(alpha+1,beta+1)=1"),
        Row(FP, lambda a, b: math.gcd(a + 1, b + 1) > 1, _congruent_13,
            "[13,00] FP: gcd>1, rho+l0(alpha+1)=gamma+k0(beta+1) up to the lcm"),
        Row(LC, lambda a, b: math.gcd(a + 1, b + 1) > 1,
            lambda a, b, r, g: not _congruent_13(a, b, r, g),
            "[13,00] LC: gcd>1, no such l0,k0"),
    ]
    for k in LC_ALWAYS:
        T[k] = [
            Row(FP, lambda a, b: True, lambda a, b, r, g: (r, g) == (0, 0), f"[{k},00] FP: (0,0)"),
            Row(LC, lambda a, b: True, lambda a, b, r, g: (r, g) != (0, 0),
                f"[{k},00] LC: (rho,gamma)!=(0,0)"),
        ]
    T[16] = [
        Row(FP, lambda a, b: a < b, _t16_fp,
            "[16,00] FP: alpha<beta, rho=gamma or rho+k(alpha+1)=gamma or beta+1=k(alpha+1)"),
        Row(FP, lambda a, b: a == b, _any, "[16,00] FP: alpha=beta, all inits"),
        Row(FP, lambda a, b: a > b, lambda a, b, r, g: r == g, "[16,00] FP: alpha>beta, rho=gamma"),
        Row(LC, lambda a, b: a < b, _t16_lc_lt,
            "[16,00] LC: alpha<beta, (rho<gamma, gamma!=rho+k(alpha+1), beta+1!=k(alpha+1)) "
            "or (rho>gamma, beta+1!=k(alpha+1))"),
        Row(LC, lambda a, b: a > b, lambda a, b, r, g: r != g, "[16,00] LC: alpha>beta, rho!=gamma"),
    ]
    T[22] = [
        Row(FP, lambda a, b: a < b, lambda a, b, r, g: r == g, "[22,00] FP: alpha<beta, rho=gamma"),
        Row(FP, lambda a, b: a == b, _any, "[22,00] FP: alpha=beta, all inits"),
        Row(FP, lambda a, b: a > b, lambda a, b, r, g: _t16_fp(a, b, r, g, swap=True),
            "[22,00] FP: alpha>beta, rho=gamma or gamma+k(beta+1)=rho or alpha+1=k(beta+1)"),
        Row(LC, lambda a, b: a < b, lambda a, b, r, g: r != g, "[22,00] LC: alpha<beta, rho!=gamma"),
        Row(LC, lambda a, b: a > b, lambda a, b, r, g: _t16_lc_lt(a, b, r, g, swap=True),
            "[22,00] LC: alpha>beta, (rho>gamma, rho!=gamma+k(beta+1), alpha+1!=k(beta+1)) "
            "or (rho<gamma, alpha+1!=k(beta+1))"),
    ]
    T[25] = [
        Row(FP, lambda a, b: a == b, _any, "[25,00] FP: alpha=beta, all inits"),
        Row(FP, lambda a, b: a != b, lambda a, b, r, g: r == g, "[25,00] FP: alpha!=beta, rho=gamma"),
        Row(LC, lambda a, b: a != b, lambda a, b, r, g: r != g, "[25,00] LC: alpha!=beta, rho!=gamma"),
    ]
    assert sorted(T) == list(range(1, 28))
    return T


TABLE = _build()


def _check(a: int, b: int, r: int, g: int):
    if a < 1 or b < 1:
        raise ValueError(f"delays must be >= 1, got ({a},{b})")
    if not (0 <= r <= a and 0 <= g <= b):
        raise ValueError(f"initial counters ({r},{g}) outside 0..{a} x 0..{b}")


def _as_rule(rid) -> RuleId:
    if isinstance(rid, str):
        rid = RuleId.parse(rid)
    if rid.class_id != ("00",):
        raise ValueError(f"closed-form classification covers the class {{00}} only, got {rid}")
    return rid


def matching_rows(rid, a: int, b: int, r: int, g: int) -> list[Row]:
    rid = _as_rule(rid)
    _check(a, b, r, g)
    return [row for row in TABLE[rid.k] if row.delays(a, b) and row.inits(a, b, r, g)]


def classify(rid, a: int, b: int, r: int, g: int) -> str:
    """``"FP"`` or ``"LC"`` for the MBN ``rid`` with ``dt=(a,b)`` started at ``(r,g)``."""
    return classify_with_anchor(rid, a, b, r, g)[0]


def classify_with_anchor(rid, a, b, r, g) -> tuple[str, str]:
    rows = matching_rows(rid, a, b, r, g)
    kinds = {row.kind for row in rows}
    if len(kinds) != 1:
        what = "no row" if not kinds else "rows of both kinds"
        raise UndeterminedError(f"{rid} at dt=({a},{b}), init=({r},{g}): {what} match")
    return rows[0].kind, rows[0].anchor


# --- simulation oracle -----------------------------------------------------

@dataclass(frozen=True)
class OracleAnswer:
    kind: str
    attractor: tuple[tuple[int, int], ...]

    @property
    def length(self) -> int:
        return len(self.attractor)


def _landscape(rid: RuleId, a: int, b: int):
    M = MemoryNetwork(rule(rid), (a, b))
    return find_attractors(DiscreteSystem.from_mbn(M))


def oracle_classify(rid, a: int, b: int, r: int, g: int) -> OracleAnswer:
    if isinstance(rid, str):
        rid = RuleId.parse(rid)
    _check(a, b, r, g)
    M = MemoryNetwork(rule(rid), (a, b))
    seen, path, d = {}, [], (r, g)
    while d not in seen:
        seen[d] = len(path)
        path.append(d)
        d = M.step(d)
    cyc = path[seen[d]:]
    i = cyc.index(min(cyc, key=lambda s: s[0] + s[1] * (a + 1)))
    cyc = cyc[i:] + cyc[:i]
    return OracleAnswer(FP if len(cyc) == 1 else LC, tuple(cyc))


# --- cross validation ------------------------------------------------------

@dataclass(frozen=True)
class Mismatch:
    rule: str
    alpha: int
    beta: int
    rho: int
    gamma: int
    predicted: str | None
    observed: str
    attractor: tuple
    anchor: str

    def as_dict(self) -> dict:
        return {
            "rule": self.rule, "alpha": self.alpha, "beta": self.beta, "rho": self.rho,
            "gamma": self.gamma, "predicted": self.predicted or "undetermined",
            "observed": self.observed,
            "attractor": [list(s) for s in self.attractor], "anchor": self.anchor,
        }


@dataclass
class DiscrepancyReport:
    class_id: tuple[str, ...]
    alpha_max: int
    beta_max: int
    rules: list[str]
    cells: int = 0
    checked: dict[str, int] = field(default_factory=dict)
    mismatches: list[Mismatch] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def by_rule(self) -> dict[str, int]:
        out = {r: 0 for r in self.rules}
        for m in self.mismatches:
            out[m.rule] += 1
        return out

    def metadata(self) -> dict:
        per_rule = self.by_rule()
        return {
            "class": ",".join(self.class_id),
            "grid": [self.alpha_max, self.beta_max],
            "rules": list(self.rules),
            "cells": self.cells,
            "configurations_checked": dict(self.checked),
            "mismatches": len(self.mismatches),
            "mismatches_by_rule": per_rule,
            "number_theoretic_rules": [r for r in self.rules
                                       if RuleId.parse(r).k in NUMBER_THEORETIC
                                       and self.class_id == ("00",)],
        }

    def as_dict(self) -> dict:
        return {"metadata": self.metadata(), "mismatches": [m.as_dict() for m in self.mismatches]}


def cross_validate(class_ids: Iterable = (("00",),), alpha_max: int = 6, beta_max: int = 6,
                   ks: Iterable[int] | None = None) -> DiscrepancyReport:
    """Compare ``classify`` with the simulation over a delay grid.

    One report per call; pass a single class (the closed form exists for ``{00}``)
    or ``ks`` to restrict to some rule indices.
    """
    ids = [c for c in class_ids]
    rids = [r for c in ids for r in rules_of(c)]
    if ks is not None:
        keep = set(ks)
        rids = [r for r in rids if r.k in keep]
    rep = DiscrepancyReport(tuple(rids[0].class_id) if rids else ("00",), alpha_max, beta_max,
                            [str(r) for r in rids])
    for rid in rids:
        name = str(rid)
        rep.checked[name] = 0
        for a in range(1, alpha_max + 1):
            for b in range(1, beta_max + 1):
                rep.cells += 1
                land = _landscape(rid, a, b)
                for g in range(b + 1):
                    for r in range(a + 1):
                        idx = r + g * (a + 1)
                        cyc = land.attractors[land.labels[idx]]
                        observed = FP if cyc.size == 1 else LC
                        try:
                            predicted, anchor = classify_with_anchor(rid, a, b, r, g)
                        except UndeterminedError as exc:
                            predicted, anchor = None, str(exc)
                        rep.checked[name] += 1
                        if predicted != observed:
                            states = tuple(land.system.decode(int(k)) for k in cyc)
                            rep.mismatches.append(
                                Mismatch(name, a, b, r, g, predicted, observed, states, anchor))
    return rep
