"""Subset repairs: maximal consistent subgraphs.

Deleting a node deletes its incident edges.  Searches run best-first over
*canonical* deletion sets (no explicitly deleted edge touches a deleted
node), ordered by the cost of everything removed, which only grows as a set
is extended.
"""
from __future__ import annotations

import heapq
import itertools
from typing import Optional

from ..consistency import is_consistent, violations
from ..datagraph import (
    DataGraph, MultisetPreference, PreferenceCriterion, WeightPreference, WeightSpec, is_subgraph,
    multiset_less, multiset_of,
)
from ..eval import Evaluator
from ..gxpath.constraints import ConstraintSet
from ..gxpath.fragment import Fragment
from .common import BudgetExceeded, RepairResult, Tally, element_cost, extra_weight, vadd
from .ranking import rank_key

EXACT_LIMIT = 20


class DeletionSpace:
    def __init__(self, g: DataGraph):
        self.g = g
        nodes = sorted(g.data)
        edges = sorted(g.edges)
        self.n_nodes = len(nodes)
        self.elements = [("N", v, g.data[v]) for v in nodes] + [("E", u, label, v) for u, label, v in edges]
        index = {v: i for i, v in enumerate(nodes)}
        self.incident: list[list[int]] = [[] for _ in nodes]
        self.ends: dict[int, tuple[int, int]] = {}
        for j, (u, _, v) in enumerate(edges, start=len(nodes)):
            a, b = index[u], index[v]
            self.ends[j] = (a, b)
            self.incident[a].append(j)
            if b != a:
                self.incident[b].append(j)

    def __len__(self):
        return len(self.elements)

    def extend(self, deleted: frozenset, removed: frozenset, j: int) -> Optional[frozenset]:
        """Removed set after also deleting element ``j``; None if not canonical."""
        if j < self.n_nodes:
            if any(e in deleted for e in self.incident[j]):
                return None
            return removed | {j} | frozenset(self.incident[j])
        a, b = self.ends[j]
        if a in deleted or b in deleted:
            return None
        return removed | {j}

    def kept(self, deleted) -> DataGraph:
        nodes = [self.elements[i][1] for i in deleted if i < self.n_nodes]
        edges = [self.elements[i][1:] for i in deleted if i >= self.n_nodes]
        edges = [(u, label, v) for u, label, v in edges]
        return self.g.remove(nodes=nodes, edges=edges)


class DeletionSearch:
    """Canonical deletion sets popped in nondecreasing removal cost."""

    def __init__(self, space: DeletionSpace, cost, zero):
        self.space = space
        self.cost = [cost(el) for el in space.elements]
        self._seq = itertools.count()
        self.heap = [(zero, next(self._seq), (), frozenset())]

    def pop(self):
        return heapq.heappop(self.heap) if self.heap else None

    def expand(self, entry):
        loss, _, deleted, removed = entry
        dset = frozenset(deleted)
        start = deleted[-1] + 1 if deleted else 0
        for j in range(start, len(self.space)):
            nxt = self.space.extend(dset, removed, j)
            if nxt is None:
                continue
            extra = loss
            for e in nxt - removed:
                extra = vadd(extra, self.cost[e])
            heapq.heappush(self.heap, (extra, next(self._seq), deleted + (j,), nxt))


def fast_path_applies(r: ConstraintSet) -> bool:
    """Every constraint is a positive node expression."""
    return Fragment.POS_NODE in r.fragment()


def positive_node_repair(g: DataGraph, r: ConstraintSet, tally: Optional[Tally] = None) -> DataGraph:
    """The unique subset repair for positive node constraints.

    Repeatedly deletes every node violating some constraint; positive node
    expressions are monotone, so what survives is the largest consistent
    subgraph.
    """
    cur = g
    while True:
        if tally is not None:
            tally.tick()
        ev = Evaluator(cur)
        bad = set()
        for c in r:
            bad.update(ev.members(~ev.node(c)))
        if not bad:
            return cur
        cur = cur.remove(nodes=bad)


def _missing(g: DataGraph, sub: DataGraph) -> list[tuple]:
    nodes = [("N", v, d) for v, d in sorted(g.data.items()) if v not in sub.data]
    edges = [("E",) + e for e in sorted(g.edges - sub.edges)]
    return nodes + edges


def _with(sub: DataGraph, elements) -> Optional[DataGraph]:
    nodes = {el[1]: el[2] for el in elements if el[0] == "N"}
    edges = [el[1:] for el in elements if el[0] == "E"]
    present = set(sub.data) | set(nodes)
    if any(u not in present or v not in present for u, _, v in edges):
        return None
    return sub.add(nodes=nodes, edges=edges)


def bigger_consistent(g: DataGraph, sub: DataGraph, r: ConstraintSet, tally: Optional[Tally] = None):
    """A consistent ``G''`` with ``sub ⊂ G'' ⊆ g``, or None; exhaustive."""
    missing = _missing(g, sub)
    for size in range(len(missing), 0, -1):
        for combo in itertools.combinations(missing, size):
            cand = _with(sub, combo)
            if cand is None:
                continue
            if tally is not None:
                tally.tick()
            if is_consistent(cand, r):
                return cand
    return None


def is_subset_repair(g: DataGraph, cand: DataGraph, r: ConstraintSet, exact_limit: int = EXACT_LIMIT) -> bool:
    if not is_subgraph(cand, g) or not is_consistent(cand, r):
        return False
    if len(_missing(g, cand)) > exact_limit:
        raise BudgetExceeded(f"more than {exact_limit} deleted elements; exact check refused")
    return bigger_consistent(g, cand, r) is None


def _restore(g: DataGraph, sub: DataGraph, r: ConstraintSet, tally: Tally) -> DataGraph:
    """Add back single elements while consistency holds (one-step maximal)."""
    changed = True
    while changed:
        changed = False
        for el in _missing(g, sub):
            cand = _with(sub, [el])
            if cand is None:
                continue
            tally.tick()
            if is_consistent(cand, r):
                sub, changed = cand, True
    return sub


def greedy_subset_repair(g: DataGraph, r: ConstraintSet, tally: Tally) -> tuple[DataGraph, str]:
    """Some subset repair, with the maximality level actually established."""
    cur = g
    while True:
        tally.tick()
        found = violations(Evaluator(cur), r, first_violation=True)
        if not found:
            break
        cur = cur.remove(nodes=[found[0].witness[0]])
    cur = _restore(g, cur, r, tally)
    if len(_missing(g, cur)) > EXACT_LIMIT:
        return cur, "one_step"
    while True:
        bigger = bigger_consistent(g, cur, r, tally)
        if bigger is None:
            return cur, "verified"
        cur = _restore(g, bigger, r, tally)


def _symbols(g: DataGraph) -> set[str]:
    return set(g.edge_labels) | set(g.data_values)


def subset_repairs(g: DataGraph, r: ConstraintSet, limit: Optional[int] = None,
                   max_explored: int = 500_000) -> list[DataGraph]:
    """All subset repairs, largest first, ties in lexicographic order."""
    if fast_path_applies(r):
        return [positive_node_repair(g, r)]
    tally = Tally(max_explored)
    return _enumerate(g, r, limit, tally)


def _enumerate(g, r, limit, tally) -> list[DataGraph]:
    space = DeletionSpace(g)
    search = DeletionSearch(space, lambda el: (1,), (0,))
    found: list[tuple[DataGraph, frozenset]] = []
    stop = None
    while (entry := search.pop()) is not None:
        loss, _, deleted, removed = entry
        if stop is not None and loss > stop:
            break
        if any(f <= removed for _, f in found):
            continue
        tally.tick()
        kept = space.kept(deleted)
        if is_consistent(kept, r):
            found.append((kept, removed))
            if limit is not None and len(found) >= limit and stop is None:
                stop = loss
            continue
        search.expand(entry)
    out = sorted((k for k, _ in found), key=lambda h: (-len(h), h.sort_key()))
    return out[:limit] if limit is not None else out


def _optimal_states(g, r, crit, tally) -> list[DataGraph]:
    """Consistent subgraphs of minimum removal cost under ``crit``."""
    cost, zero = element_cost(crit, _symbols(g))
    space = DeletionSpace(g)
    search = DeletionSearch(space, cost, zero)
    best = None
    hits = []
    while (entry := search.pop()) is not None:
        loss = entry[0]
        if best is not None and loss > best:
            break
        tally.tick()
        kept = space.kept(entry[2])
        if is_consistent(kept, r):
            best = loss
            hits.append(kept)
            continue
        search.expand(entry)
    return hits


def _maximal(graphs: list[DataGraph]) -> list[DataGraph]:
    uniq = set(graphs)
    return [h for h in uniq if not any(h != o and is_subgraph(h, o) for o in uniq)]


def mset_maximal(repairs: list[DataGraph], order) -> list[DataGraph]:
    ms = {h: multiset_of(h) for h in repairs}
    return [h for h in repairs if not any(multiset_less(ms[h], ms[o], order) for o in repairs)]


def find_preferred_subset_repair(g: DataGraph, r: ConstraintSet, crit: PreferenceCriterion = None, *,
                                 all_optima: bool = False, max_explored: int = 500_000) -> RepairResult:
    tally = Tally(max_explored)
    key = rank_key(crit, "subset", g)

    def result(repair, maximality, optima=()):
        status = "trivial" if repair.is_empty() and not g.is_empty() else "repaired"
        return RepairResult(repair, status, tally.n, maximality, extra_weight(g, repair, crit),
                            tuple(sorted(optima, key=key)))

    tally.tick()
    if is_consistent(g, r):
        return result(g, "verified", (g,) if all_optima else ())
    if fast_path_applies(r):
        rep = positive_node_repair(g, r, tally)
        return result(rep, "verified", (rep,) if all_optima else ())
    if crit is None and not all_optima:
        rep, level = greedy_subset_repair(g, r, tally)
        return result(rep, level)
    if crit is None:
        reps = _enumerate(g, r, None, tally)
        return result(reps[0], "verified", reps)
    hits = _optimal_states(g, r, crit, tally)
    best = min(hits, key=key)
    if not all_optima:
        return result(best, "verified")
    if isinstance(crit, MultisetPreference):
        order = crit.order
        if not order.is_total_on(_symbols(g)):
            optima = mset_maximal(_enumerate(g, r, None, tally), order)
            return result(min(optima, key=key), "verified", optima)
    return result(best, "verified", _maximal(hits))


def has_nontrivial_preferred_subset_repair(g: DataGraph, r: ConstraintSet, crit: PreferenceCriterion = None,
                                           max_explored: int = 500_000) -> bool:
    """Whether some preferred subset repair is non-empty.

    Preference never changes the answer: a non-empty repair exists iff the
    empty graph is not a repair.  The exact search is used for ``None``.
    """
    if crit is None:
        crit = WeightPreference(WeightSpec())
    res = find_preferred_subset_repair(g, r, crit, max_explored=max_explored)
    return not res.repair.is_empty()
