"""Consistency checking and repair of data-graphs under Reg-GXPath constraints."""
from .consistency import Verdict, Violation, check, is_consistent
from .datagraph import (
    DataGraph, GraphError, GraphMultiset, MultisetPreference, SymbolOrder, WeightPreference, WeightSpec,
    graph_less, is_subgraph, multiset_less, multiset_of, weight_of,
)
from .eval import Evaluator, eval_node, eval_path
from .gxpath import ConstraintSet, Fragment, ParseError, classify, parse_node, parse_path, pretty
from .repair import (
    BudgetExceeded, RepairResult, SearchBudget, decide_pi_mset, decide_pi_w, find_preferred_subset_repair,
    find_preferred_superset_repair, has_nontrivial_preferred_subset_repair, subset_repairs, superset_repairs,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "ConstraintSet", "DataGraph", "Evaluator", "Fragment", "GraphError", "GraphMultiset",
    "MultisetPreference", "ParseError", "RepairResult", "SearchBudget", "SymbolOrder", "Verdict", "Violation",
    "WeightPreference", "WeightSpec", "check", "classify", "decide_pi_mset", "decide_pi_w", "eval_node",
    "eval_path", "find_preferred_subset_repair", "find_preferred_superset_repair", "graph_less",
    "has_nontrivial_preferred_subset_repair", "is_consistent", "is_subgraph", "multiset_less", "multiset_of",
    "parse_node", "parse_path", "pretty", "subset_repairs", "superset_repairs", "weight_of",
]
