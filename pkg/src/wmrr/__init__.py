"""Automatic discovery and application of weighted matching rectifying rules.

Typical pipeline::

    rules = discover_rules(dirty, fds, theta=0.6)
    rules, log = resolve_inconsistency(rules)
    repaired, report = repair_dataset(dirty, rules, fds)
"""

from .consistency import check_pair, resolve_inconsistency
from .discovery import brute_force_discover, discover_rules
from .evaluation import NoiseSpec, evaluate, inject_noise, run_experiment
from .model import (
    Attribute,
    AttributeValuePair,
    CellValue,
    Dataset,
    FunctionalDependency,
    Kind,
    Row,
    Schema,
    cell_kind,
    tuple_pairs,
    validate_fds,
)
from .repair import build_rule_index, repair_dataset
from .rules import WMRR, MatchKind, apply_rule, compute_weights, match_rule
from .similarity import SimilarityThreshold, approx_match, edit_distance

__version__ = "0.1.0"

__all__ = [
    "Attribute", "AttributeValuePair", "CellValue", "Dataset", "FunctionalDependency", "Kind", "Row",
    "Schema", "SimilarityThreshold", "WMRR", "MatchKind", "NoiseSpec",
    "apply_rule", "approx_match", "brute_force_discover", "build_rule_index", "cell_kind", "check_pair",
    "compute_weights", "discover_rules", "edit_distance", "evaluate", "inject_noise", "match_rule",
    "repair_dataset", "resolve_inconsistency", "run_experiment", "tuple_pairs", "validate_fds",
]
