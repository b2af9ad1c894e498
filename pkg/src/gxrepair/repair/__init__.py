from .brute import brute_preferred, brute_subset_repairs, brute_superset_repairs, preferred_among
from .common import BudgetExceeded, RepairResult, SearchBudget
from .ranking import rank_key
from .subset import (
    find_preferred_subset_repair, has_nontrivial_preferred_subset_repair, is_subset_repair,
    positive_node_repair, subset_repairs,
)
from .superset import (
    SupersetSpace, decide_pi_mset, decide_pi_w, find_preferred_superset_repair, is_superset_repair,
    superset_repairs,
)

__all__ = [
    "BudgetExceeded", "RepairResult", "SearchBudget", "SupersetSpace", "brute_preferred",
    "brute_subset_repairs", "brute_superset_repairs", "decide_pi_mset", "decide_pi_w",
    "find_preferred_subset_repair", "find_preferred_superset_repair", "has_nontrivial_preferred_subset_repair",
    "is_subset_repair", "is_superset_repair", "positive_node_repair", "preferred_among", "rank_key",
    "subset_repairs", "superset_repairs",
]
