"""The complete two-node catalogue: rule data, closed-form predictions and
their simulation cross-checks."""
from .closed_form import (FP, LC, NUMBER_THEORETIC, DiscrepancyReport, Mismatch, OracleAnswer,
                       UndeterminedError, classify, classify_with_anchor, cross_validate,
                       oracle_classify)
from .landscape import (LandscapeCell, PredictedLandscape, delay_phase_space, dt_grid,
                        landscape_cell, predict, validate_class)
from .rules import (CATALOGUE, CLASS_IDS, RuleId, all_rule_ids, enumerate_size2_by_fixed_points,
                    identify, mirror, rule, rules_of, swap_nodes)

__all__ = [
    "FP", "LC", "NUMBER_THEORETIC", "DiscrepancyReport", "Mismatch", "OracleAnswer",
    "UndeterminedError", "classify", "classify_with_anchor", "cross_validate", "oracle_classify",
    "LandscapeCell", "PredictedLandscape", "delay_phase_space", "dt_grid", "landscape_cell",
    "predict", "validate_class", "CATALOGUE", "CLASS_IDS", "RuleId", "all_rule_ids",
    "enumerate_size2_by_fixed_points", "identify", "mirror", "rule", "rules_of", "swap_nodes",
]
