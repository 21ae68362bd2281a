"""Decision procedures and simulation for one-dimensional non-uniform cellular automata."""

from .automata import Dfa, LayeredWordGraph, Nfa, ResourceLimitError
from .conservation import charge_oracle, forbidden_nc_windows, is_distribution_nc, nc_sft
from .debruijn import build_debruijn, build_product
from .dynamics import classify, is_left_wall, is_right_wall, propagation_radii
from .injectivity import is_distribution_injective, verify_witness
from .rules import LocalRule, RuleSet, apply_partial, load_rule_set, pad_rule, parse_rule_set
from .simulation import cantor_distance, iterate, space_time, step
from .surjectivity import (
    forbidden_pattern_dfa,
    is_distribution_surjective,
    is_pattern_surjective,
)
from .words import Configuration, Distribution, parse_configuration, parse_distribution

__all__ = [
    "Configuration",
    "Dfa",
    "Distribution",
    "LayeredWordGraph",
    "LocalRule",
    "Nfa",
    "ResourceLimitError",
    "RuleSet",
    "apply_partial",
    "build_debruijn",
    "build_product",
    "cantor_distance",
    "charge_oracle",
    "classify",
    "forbidden_nc_windows",
    "forbidden_pattern_dfa",
    "is_distribution_injective",
    "is_distribution_nc",
    "is_distribution_surjective",
    "is_left_wall",
    "is_pattern_surjective",
    "is_right_wall",
    "iterate",
    "load_rule_set",
    "nc_sft",
    "pad_rule",
    "parse_configuration",
    "parse_distribution",
    "parse_rule_set",
    "propagation_radii",
    "space_time",
    "step",
    "verify_witness",
]
