"""Predicted attractor landscapes for every catalogued two-node class, and
delay phase-space sweeps.

Fixed points of an MBN are always the lifted fixed points of its network
(a firing node sits at its full delay), so the predicted fixed-point set of
``[k, x, ...]`` at ``dt = (alpha, beta)`` is the class words lifted.  What
differs between rules is whether a limit cycle exists, and from which
initial counters it is reached.  Those conditions are recorded below for
the primary classes; the swapped classes are obtained through ``mirror``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from ..core import BooleanNetwork, MemoryNetwork
from ..dynamics import DiscreteSystem, find_attractors
from . import closed_form as C
from .rules import PRIMARY_CLASSES, RuleId, mirror, rule


@dataclass(frozen=True)
class Condition:
    has_cycle: Callable[[int, int], bool]
    reaches_cycle: Callable[[int, int, int, int], bool] | None
    anchor: str


_NEVER = Condition(lambda a, b: False, lambda a, b, r, g: False, "fixed points only")

# (class, k) -> condition; rules not listed have fixed points only
_CYCLES: dict[tuple[tuple[str, ...], int], Condition] = {
    (("00", "01"), 6): Condition(
        lambda a, b: a > 1,
        lambda a, b, r, g: a > 1 and (r > 1 or (r >= 1 and g >= 1)),
        "[6,00,01] LC iff alpha>1; reached from rho>1, or rho>=1 with gamma>=1"),
    (("00", "01"), 7): Condition(
        lambda a, b: a > b,
        lambda a, b, r, g: a > b and r > g,
        "[7,00,01] LC iff alpha>beta; reached from rho>gamma"),
    (("00", "01"), 9): Condition(
        lambda a, b: True,
        lambda a, b, r, g: r >= 1,
        "[9,00,01] LC for all delays; reached from rho>=1"),
    (("00", "11"), 5): Condition(
        lambda a, b: a == b == 1,
        lambda a, b, r, g: a == b == 1 and (r, g) in ((0, 1), (1, 0)),
        "[5,00,11] LC only at alpha=beta=1, the 2-cycle 01<->10"),
    (("01", "10"), 7): Condition(
        lambda a, b: a == b,
        lambda a, b, r, g: a == b and r == g,
        "[7,01,10] LC iff alpha=beta; reached from rho=gamma"),
    (("01", "11"), 4): Condition(
        lambda a, b: True,
        lambda a, b, r, g: g == 0,
        "[4,01,11] LC for all delays; reached from every (rho,0)"),
}


@dataclass
class PredictedLandscape:
    """Closed-form landscape of one MBN.

    ``limit_cycle`` is ``False`` or ``True``; ``per_init`` (when known)
    maps ``(rho, gamma)`` to ``"FP"`` or ``"LC"``.
    """

    fixed_points: list[tuple[int, ...]]
    limit_cycle: bool
    per_init: Callable[[int, int], str] | None = None
    anchor: str = ""
    cycle_note: str = ""

    def classify(self, r: int, g: int) -> str | None:
        return None if self.per_init is None else self.per_init(r, g)


def _lift(words: Sequence[str], dt: Sequence[int]) -> list[tuple[int, ...]]:
    pts = [tuple(t if c == "1" else 0 for c, t in zip(w, dt)) for w in words]
    return sorted(pts)


def _primary_condition(rid: RuleId) -> tuple[Condition, bool]:
    """Condition for ``rid``; the flag says whether it was read through the node swap."""
    if rid.class_id in PRIMARY_CLASSES:
        return _CYCLES.get((rid.class_id, rid.k), _NEVER), False
    m = mirror(rid)
    return _CYCLES.get((m.class_id, m.k), _NEVER), True


def predict(rid, a: int, b: int) -> PredictedLandscape:
    """Prediction for the MBN on rule ``rid`` with delays ``(a, b)``."""
    if isinstance(rid, str):
        rid = RuleId.parse(rid)
    if a < 1 or b < 1:
        raise ValueError(f"delays must be >= 1, got ({a},{b})")
    fps = _lift(rid.class_id, (a, b))
    if rid.class_id == ("00",):
        kinds = {(r, g): C.classify(rid, a, b, r, g) for r in range(a + 1) for g in range(b + 1)}
        return PredictedLandscape(fps, C.LC in kinds.values(), lambda r, g: kinds[(r, g)],
                                  anchor=f"{rid} closed-form case table")
    cond, swapped = _primary_condition(rid)
    if swapped:
        has = cond.has_cycle(b, a)
        per = (lambda r, g: C.LC if cond.reaches_cycle(b, a, g, r) else C.FP)
        anchor = f"{rid} via node swap of {cond.anchor}"
    else:
        has = cond.has_cycle(a, b)
        per = (lambda r, g: C.LC if cond.reaches_cycle(a, b, r, g) else C.FP)
        anchor = f"{rid}: {cond.anchor}"
    return PredictedLandscape(fps, bool(has), per, anchor=anchor)


# --- phase-space sweeps ----------------------------------------------------

@dataclass(frozen=True)
class LandscapeCell:
    dt: tuple[int, ...]
    states: int
    fixed_points: int
    cycle_lengths: tuple[int, ...]
    basin_sizes: tuple[int, ...]
    max_transient: int

    @property
    def attractors(self) -> int:
        return self.fixed_points + len(self.cycle_lengths)

    def as_dict(self) -> dict:
        return {
            "dt": list(self.dt), "states": self.states, "fixed_points": self.fixed_points,
            "limit_cycles": len(self.cycle_lengths), "cycle_lengths": list(self.cycle_lengths),
            "basin_sizes": list(self.basin_sizes), "max_transient": self.max_transient,
        }


def landscape_cell(F: BooleanNetwork, dt: Sequence[int], **kw) -> LandscapeCell:
    rep = find_attractors(DiscreteSystem.from_mbn(MemoryNetwork(F, tuple(dt))), **kw)
    lengths = [int(c.size) for c in rep.attractors]
    return LandscapeCell(
        tuple(int(t) for t in dt), rep.system.size, sum(1 for n in lengths if n == 1),
        tuple(n for n in lengths if n >= 2), tuple(int(s) for s in rep.basin_sizes),
        rep.max_transient)


def dt_grid(n: int, top: int | Sequence[int]) -> list[tuple[int, ...]]:
    """All delay vectors in ``1..top_i`` per node, last node varying fastest."""
    import itertools
    tops = [top] * n if isinstance(top, int) else list(top)
    if len(tops) != n:
        raise ValueError(f"grid bounds {tops} do not match {n} nodes")
    return list(itertools.product(*(range(1, t + 1) for t in tops)))


def delay_phase_space(F: BooleanNetwork, alpha_max: int | None = None,
                      beta_max: int | None = None, grid: Iterable[Sequence[int]] | None = None,
                      max_states: int = 1 << 26) -> list[LandscapeCell]:
    """Landscape for every delay vector of the grid.

    For two-node networks pass ``alpha_max``/``beta_max``; otherwise pass an
    explicit ``grid`` of delay vectors.
    """
    if grid is None:
        if alpha_max is None:
            raise ValueError("give either a grid or alpha_max/beta_max")
        bounds = [alpha_max, beta_max if beta_max is not None else alpha_max]
        if F.n != 2:
            bounds = [alpha_max] * F.n
        grid = dt_grid(F.n, bounds)
    return [landscape_cell(F, dt, max_states=max_states) for dt in grid]


def validate_class(class_id, alpha_max: int = 6, beta_max: int = 6) -> C.DiscrepancyReport:
    """Prediction versus simulation for every rule of ``class_id``.

    The fixed-point class ``{00}`` goes through the closed-form case table
    (``cross_validate``).  For the other classes the per-initial-condition
    prediction is compared with the simulated destiny, and a wrong
    fixed-point set shows up as a mismatch at the offending fixed point.
    """
    from .rules import _class_key, rules_of

    key = _class_key(class_id)
    if key == ("00",):
        return C.cross_validate([key], alpha_max, beta_max)
    rids = rules_of(key)
    rep = C.DiscrepancyReport(key, alpha_max, beta_max, [str(r) for r in rids])
    for rid in rids:
        name = str(rid)
        rep.checked[name] = 0
        F = rule(rid)
        for a in range(1, alpha_max + 1):
            for b in range(1, beta_max + 1):
                rep.cells += 1
                pred = predict(rid, a, b)
                land = find_attractors(DiscreteSystem.from_mbn(MemoryNetwork(F, (a, b))))
                fps = set(pred.fixed_points)
                for k in range(land.system.state_count):
                    d = land.system.decode(k)
                    cyc = land.attractors[land.labels[k]]
                    observed = C.FP if cyc.size == 1 else C.LC
                    expected = pred.classify(*d)
                    rep.checked[name] += 1
                    is_fp = cyc.size == 1 and int(cyc[0]) == k
                    if expected != observed or is_fp != (d in fps):
                        states = tuple(land.system.decode(int(j)) for j in cyc)
                        rep.mismatches.append(C.Mismatch(name, a, b, d[0], d[1], expected,
                                                         observed, states, pred.anchor))
    return rep
