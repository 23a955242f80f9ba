"""Paraconsistent Bayesian probability and its SIC quantum counterpart."""

from .engine import (
    BeliefFrame,
    ConditionalTable,
    QueryResult,
    bayes,
    classical_total,
    closure_check,
    disjunction_nc,
    extended_sum,
    nc_part_mass,
    product_rule,
    quantum_matched_total,
    shared_contradiction_mass,
    sum_rule_residual,
    toy_model_total,
    total_probability,
)
from .harness import crosscheck, identify, physicality_gap

__version__ = "0.1.0"
