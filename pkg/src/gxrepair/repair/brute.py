"""Powerset oracles: the repair definitions executed literally.

Exponential on purpose.  They back the ``--oracle`` CLI flag and the
cross-checks in the test suite.
"""
from __future__ import annotations

import itertools
from typing import Optional

from ..consistency import is_consistent
from ..datagraph import (
    DataGraph, MultisetPreference, PreferenceCriterion, WeightPreference, is_subgraph, multiset_less,
    multiset_of, weight_of,
)
from ..gxpath.constraints import ConstraintSet
from .common import BudgetExceeded, RepairResult, SearchBudget, extra_weight
from .ranking import rank_key
from .superset import SupersetSpace

DEFAULT_CAP = 1 << 20


def _subsets(items, cap):
    if len(items) > cap.bit_length() - 1:
        raise BudgetExceeded(f"powerset of {len(items)} elements exceeds the oracle cap")
    for size in range(len(items) + 1):
        yield from itertools.combinations(items, size)


def consistent_subgraphs(g: DataGraph, r: ConstraintSet, cap: int = DEFAULT_CAP) -> list[DataGraph]:
    out = []
    for nodes in _subsets(sorted(g.data), cap):
        keep = set(nodes)
        inner = sorted(e for e in g.edges if e[0] in keep and e[2] in keep)
        for edges in _subsets(inner, cap):
            h = DataGraph({v: g.data[v] for v in nodes}, edges)
            if is_consistent(h, r):
                out.append(h)
    return out


def brute_subset_repairs(g: DataGraph, r: ConstraintSet, cap: int = DEFAULT_CAP) -> list[DataGraph]:
    good = consistent_subgraphs(g, r, cap)
    reps = [h for h in good if not any(h != o and is_subgraph(h, o) for o in good)]
    return sorted(reps, key=lambda h: (-len(h), h.sort_key()))


def consistent_supersets(g: DataGraph, r: ConstraintSet, budget: SearchBudget = SearchBudget(),
                         cap: int = DEFAULT_CAP) -> list[DataGraph]:
    space = SupersetSpace(g, r, budget)
    out = []
    for chosen in _subsets(range(len(space)), cap):
        added = frozenset(chosen)
        if not space.valid(added):
            continue
        if space.max_size is not None and len(g) + len(added) > space.max_size:
            continue
        h = space.graph(added)
        if is_consistent(h, r):
            out.append(h)
    return out


def brute_superset_repairs(g: DataGraph, r: ConstraintSet, budget: SearchBudget = SearchBudget(),
                           cap: int = DEFAULT_CAP) -> list[DataGraph]:
    good = consistent_supersets(g, r, budget, cap)
    reps = [h for h in good if not any(h != o and is_subgraph(o, h) for o in good)]
    return sorted(reps, key=lambda h: (len(h), h.sort_key()))


def preferred_among(repairs: list[DataGraph], g: DataGraph, crit: PreferenceCriterion,
                    mode: str) -> tuple[Optional[DataGraph], list[DataGraph]]:
    """The declared pick and the full set of optima among ``repairs``."""
    if not repairs:
        return None, []
    key = rank_key(crit, mode, g)
    if isinstance(crit, WeightPreference):
        ws = {h: weight_of(h, crit.weights) for h in repairs}
        target = (max if mode == "subset" else min)(ws.values())
        optima = [h for h in repairs if ws[h] == target]
    elif isinstance(crit, MultisetPreference):
        ms = {h: multiset_of(h) for h in repairs}
        if mode == "subset":
            optima = [h for h in repairs if not any(multiset_less(ms[h], ms[o], crit.order) for o in repairs)]
        else:
            optima = [h for h in repairs if not any(multiset_less(ms[o], ms[h], crit.order) for o in repairs)]
    else:
        optima = list(repairs)
    optima.sort(key=key)
    return min(repairs, key=key), optima


def brute_preferred(g: DataGraph, r: ConstraintSet, crit: PreferenceCriterion = None, mode: str = "subset",
                    budget: SearchBudget = SearchBudget(), all_optima: bool = False,
                    cap: int = DEFAULT_CAP) -> RepairResult:
    if mode == "subset":
        reps = brute_subset_repairs(g, r, cap)
    else:
        reps = brute_superset_repairs(g, r, budget, cap)
    best, optima = preferred_among(reps, g, crit, mode)
    if best is None:
        return RepairResult(None, "unknown_beyond_budget", len(reps))
    status = "trivial" if best.is_empty() and not g.is_empty() else "repaired"
    return RepairResult(best, status, len(reps), "verified" if mode == "subset" else None,
                        extra_weight(g, best, crit), tuple(optima) if all_optima else ())
