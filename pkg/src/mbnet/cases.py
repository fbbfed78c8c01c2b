"""Two biological case studies.

* Phage lambda immunity control: a cI/cro mutual inhibition.  A
  discrete model with ``cro`` in ``{0,1,2}`` is reduced to a Boolean
  network by merging the two positive ``cro`` levels.
* Arabidopsis floral organ identity: the two strongly connected
  components C1 = {AG, AP1} and C2 = {AP3, BFU, PI}, built as threshold
  networks, and their direct product with every other gene held at 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import BooleanFunction, BooleanNetwork, MemoryNetwork, row_bits
from .size2.landscape import PredictedLandscape


@dataclass(frozen=True)
class ThresholdNetwork:
    """``f_i(x) = H(sum_j w[i, j] x_j - theta_i)`` with ``H(u) = 1`` iff ``u > 0``."""

    weights: np.ndarray
    thresholds: np.ndarray
    names: tuple[str, ...] = ()

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        th = np.asarray(self.thresholds, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError(f"weights must be a square matrix, got shape {w.shape}")
        if th.shape != (w.shape[0],):
            raise ValueError(f"need {w.shape[0]} thresholds, got shape {th.shape}")
        if not (np.all(np.isfinite(w)) and np.all(np.isfinite(th))):
            raise ValueError("weights and thresholds must be finite")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "thresholds", th)

    @property
    def n(self) -> int:
        return self.weights.shape[0]


def heaviside(u) -> np.ndarray:
    return (np.asarray(u) > 0).astype(np.uint8)


def threshold_to_bn(T: ThresholdNetwork) -> BooleanNetwork:
    n = T.n
    X = np.array([row_bits(k, n) for k in range(1 << n)], dtype=float).reshape(1 << n, n)
    out = heaviside(X @ T.weights.T - T.thresholds)
    return BooleanNetwork(tuple(BooleanFunction(n, out[:, i]) for i in range(n)), T.names)


# --- phage lambda ------------------------------------------------------------

LAMBDA_NAMES = ("cI", "cro")

LAMBDA_THRESHOLD = ThresholdNetwork(np.array([[0.0, -1.0], [-1.0, 0.0]]),
                                    np.array([-0.5, -0.5]), LAMBDA_NAMES)

# (cI, cro) -> (cI', cro') of the discrete model
LAMBDA_DISCRETE = {
    (0, 0): (1, 1),
    (0, 1): (0, 2),
    (0, 2): (0, 1),
    (1, 0): (1, 0),
    (1, 1): (0, 0),
    (1, 2): (0, 1),
}

# Boolean cro = 1 is read at the discrete level 1: level 2 only ever falls
# back to 1, so 1 is the level that carries the regulation.
_CRO_REPRESENTATIVE = {0: 0, 1: 1}


def lambda_bn() -> BooleanNetwork:
    return BooleanNetwork.from_outputs(["11", "01", "10", "00"], LAMBDA_NAMES)


def lambda_discrete_step(cI: int, cro: int) -> tuple[int, int]:
    try:
        return LAMBDA_DISCRETE[(int(cI), int(cro))]
    except KeyError:
        raise ValueError(f"({cI},{cro}) is not a state of the discrete model "
                         "(cI in 0..1, cro in 0..2)") from None


def lambda_boolean_reduction() -> BooleanNetwork:
    """Boolean network obtained by merging ``cro`` levels 1 and 2."""
    outs = []
    for cI, cro in ((0, 0), (0, 1), (1, 0), (1, 1)):
        a, b = lambda_discrete_step(cI, _CRO_REPRESENTATIVE[cro])
        outs.append(f"{a}{1 if b >= 1 else 0}")
    return BooleanNetwork.from_outputs(outs, LAMBDA_NAMES)


def lambda_mbn(dt: Sequence[int]) -> MemoryNetwork:
    return MemoryNetwork(lambda_bn(), tuple(dt))


def predict_lambda(dt_ci: int, dt_cro: int) -> PredictedLandscape:
    """Fixed points ``(dt_cI, 0)`` and ``(0, dt_cro)``; a cycle iff the delays agree,
    reached exactly from the initial counters with ``rho == gamma``."""
    if dt_ci < 1 or dt_cro < 1:
        raise ValueError("delays must be >= 1")
    equal = dt_ci == dt_cro
    return PredictedLandscape(
        sorted([(dt_ci, 0), (0, dt_cro)]), equal,
        lambda r, g: "LC" if equal and r == g else "FP",
        anchor="lambda: LC iff dt_cI = dt_cro",
        cycle_note=("stated length dt_cI; the cycle (0,0) -> (dt,dt) -> ... -> (1,1) has "
                    "dt_cI + 1 distinct configurations") if equal else "")


# --- Arabidopsis -----------------------------------------------------------

C1_NAMES = ("AG", "AP1")
C2_NAMES = ("AP3", "BFU", "PI")
ABC_NAMES = C1_NAMES + C2_NAMES

C1_THRESHOLD = ThresholdNetwork(np.array([[0.0, -1.0], [-1.0, 0.0]]),
                                np.array([-0.5, -0.5]), C1_NAMES)
# AP3 = BFU, BFU = AP3 and PI, PI = BFU
C2_THRESHOLD = ThresholdNetwork(np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 1.0], [0.0, 1.0, 0.0]]),
                                np.array([0.5, 1.5, 0.5]), C2_NAMES)


def arabidopsis_c1() -> BooleanNetwork:
    return threshold_to_bn(C1_THRESHOLD)


def arabidopsis_c2() -> BooleanNetwork:
    return threshold_to_bn(C2_THRESHOLD)


def direct_product(A: BooleanNetwork, B: BooleanNetwork) -> BooleanNetwork:
    """Disjoint union: A's nodes first, each block reads only itself."""
    n, m = A.n, B.n
    k = np.arange(1 << (n + m), dtype=np.int64)
    ra, rb = k >> m, k & ((1 << m) - 1)
    funcs = [BooleanFunction(n + m, f.table[ra]) for f in A.functions]
    funcs += [BooleanFunction(n + m, f.table[rb]) for f in B.functions]
    return BooleanNetwork(tuple(funcs), A.names + B.names)


def arabidopsis_abc() -> BooleanNetwork:
    """C1 and C2 side by side, node order (AG, AP1, AP3, BFU, PI)."""
    return direct_product(arabidopsis_c1(), arabidopsis_c2())


def predict_c2(dt_ap3: int, dt_bfu: int, dt_pi: int) -> PredictedLandscape:
    if min(dt_ap3, dt_bfu, dt_pi) < 1:
        raise ValueError("delays must be >= 1")
    cycle = dt_bfu == 1 and (dt_ap3 == 1 or dt_pi == 1)
    if dt_bfu >= 2:
        case = "dt_BFU >= 2"
    elif not cycle:
        case = "dt_BFU = 1, dt_AP3 >= 2, dt_PI >= 2"
    else:
        case = "dt_BFU = 1 and (dt_AP3 = 1 or dt_PI = 1)"
    return PredictedLandscape(
        [(0, 0, 0), (dt_ap3, dt_bfu, dt_pi)], cycle, None, anchor=f"C2: {case}",
        cycle_note="limit cycle of 2 configurations" if cycle else "")


def abc_fixed_points(dt: Sequence[int]) -> list[tuple[int, ...]]:
    """fp1..fp4 of the five-node product for ``dt`` over (AG, AP1, AP3, BFU, PI)."""
    ag, ap1, ap3, bfu, pi = (int(t) for t in dt)
    return [
        (ag, 0, 0, 0, 0),
        (0, ap1, 0, 0, 0),
        (ag, 0, ap3, bfu, pi),
        (0, ap1, ap3, bfu, pi),
    ]
