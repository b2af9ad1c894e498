"""Superset repairs: minimal consistent supersets inside a bounded space.

The candidate space holds every edge (over the labels of the graph and the
constraints) between existing nodes and up to ``max_new_nodes`` fresh nodes,
plus the fresh nodes themselves with one data value each from the domain.
Nothing outside that space is ever claimed: an empty search answers
``unknown_beyond_budget``, not "no repair".

For positive constraint sets the search is guided by lineage: a violated
membership can only be fixed by adding an element from its lineage in the
fully saturated candidate graph, so the search branches on those elements
and bounds the remaining cost by a packing of pairwise disjoint lineages.
Other constraint sets fall back to uniform-cost enumeration of addition
sets.
"""
from __future__ import annotations

import heapq
import itertools
from typing import Optional

from ..consistency import is_consistent, violations
from ..datagraph import (
    DataGraph, MultisetPreference, PreferenceCriterion, SymbolOrder, WeightPreference, WeightSpec,
    is_subgraph, multiset_less, multiset_of, weight_of,
)
from ..eval import Evaluator
from ..gxpath.ast import is_node
from ..gxpath.constraints import ConstraintSet
from ..gxpath.fragment import Fragment
from ..provenance import Lineage
from .common import (
    BudgetExceeded, RepairResult, SearchBudget, Tally, data_only_violation, element_cost, extra_weight, vadd,
)
from .ranking import rank_key


def _unique(base: str, taken) -> str:
    name = base
    while name in taken:
        name = "_" + name
    return name


class SupersetSpace:
    """Candidate additions for ``g`` under ``budget``, indexed nodes first."""

    def __init__(self, g: DataGraph, r: ConstraintSet, budget: SearchBudget = SearchBudget()):
        self.g = g
        self.labels = sorted(set(g.edge_labels) | r.labels())
        domain = budget.data_domain if budget.data_domain is not None else set(g.data_values) | r.constants()
        # a data value may not double as an edge label
        self.domain = sorted(set(domain) - set(self.labels))

        taken = set(g.data)
        slots = []
        for i in range(1, budget.max_new_nodes + 1):
            slots.append(_unique(f"new{i}", taken))
            taken.add(slots[-1])
        self.slots = slots

        # the saturated graph F gives each (slot, value) choice its own node
        self.real: dict[str, str] = {v: v for v in g.data}
        f_data = dict(g.data)
        self.elements: list[tuple] = []
        self.requires: list[frozenset] = []
        self.slot_of: dict[int, str] = {}
        f_node_index: dict[str, int] = {}
        for slot in slots:
            for d in self.domain:
                fid = _unique(f"{slot}={d}", taken)
                taken.add(fid)
                f_data[fid] = d
                self.real[fid] = slot
                j = len(self.elements)
                f_node_index[fid] = j
                self.slot_of[j] = slot
                self.elements.append(("N", slot, d))
                self.requires.append(frozenset())
        self.n_nodes = len(self.elements)
        self.fid_of = {(self.real[f], f_data[f]): f for f in f_data}

        f_ids = sorted(f_data)
        self.edge_index: dict[tuple, int] = {}
        n_edges = 0
        cap = budget.max_candidate_edges
        for u in f_ids:
            for v in f_ids:
                if u != v and u in f_node_index and v in f_node_index and self.real[u] == self.real[v]:
                    continue  # two values of one fresh node
                for label in self.labels:
                    if (u, label, v) in g.edges:
                        continue
                    n_edges += 1
                    if cap is not None and n_edges > cap:
                        raise BudgetExceeded(f"more than {cap} candidate edges")
                    j = len(self.elements)
                    self.edge_index[(u, label, v)] = j
                    self.elements.append(("E", u, label, v))
                    self.requires.append(frozenset(f_node_index[x] for x in (u, v) if x in f_node_index))
        self.f_data = f_data
        self.max_size = budget.max_repair_size
        self._full: Optional[DataGraph] = None

    def __len__(self):
        return len(self.elements)

    def symbols(self) -> set[str]:
        """Symbols whose counts can differ between candidate supersets."""
        return {el[2] for el in self.elements}

    def full(self) -> DataGraph:
        """The saturated graph: ``g`` plus every candidate, fresh choices kept apart."""
        if self._full is None:
            edges = set(self.g.edges) | {el[1:] for el in self.elements if el[0] == "E"}
            self._full = DataGraph(self.f_data, edges)
        return self._full

    def close(self, added: frozenset, j: int) -> Optional[frozenset]:
        """``added`` plus ``j`` and the fresh nodes it needs; None on a clash."""
        new = {j} | self.requires[j]
        taken = {self.slot_of[i] for i in added if i < self.n_nodes}
        for i in new - added:
            if i < self.n_nodes:
                if self.slot_of[i] in taken:
                    return None
                taken.add(self.slot_of[i])
        out = added | new
        if self.max_size is not None and len(self.g) + len(out) > self.max_size:
            return None
        return out

    def valid(self, added) -> bool:
        slots = [self.slot_of[i] for i in added if i < self.n_nodes]
        return len(slots) == len(set(slots)) and all(self.requires[i] <= added for i in added)

    def graph(self, added) -> DataGraph:
        nodes = {}
        edges = []
        for i in added:
            el = self.elements[i]
            if el[0] == "N":
                nodes[el[1]] = el[2]
            else:
                edges.append((self.real[el[1]], el[2], self.real[el[3]]))
        return self.g.add(nodes=nodes, edges=edges)

    def to_f(self, h: DataGraph, v: str) -> str:
        return self.fid_of[(v, h.data[v])]


class _Guided:
    """Lineage-guided best-first search over addition sets."""

    def __init__(self, space: SupersetSpace, r: ConstraintSet):
        self.space = space
        self.r = r
        lin = Lineage(space.full(), self._annotate)
        self.lineage = [lin.node(c) if is_node(c) else lin.path(c) for c in r]
        self._cache: dict[frozenset, Optional[list[frozenset]]] = {}

    def _annotate(self, edge) -> frozenset:
        j = self.space.edge_index.get(edge)
        if j is None:
            return frozenset()
        return frozenset({j}) | self.space.requires[j]

    def open_sets(self, added: frozenset) -> Optional[list[frozenset]]:
        """Per violated membership, the additions that could still fix it.

        None when some violation has no fix inside the space.
        """
        hit = self._cache.get(added, ())
        if hit != ():
            return hit
        sp = self.space
        h = sp.graph(added)
        out: Optional[list[frozenset]] = []
        for v in violations(Evaluator(h), self.r):
            key = tuple(sp.to_f(h, x) for x in v.witness)
            lin = self.lineage[v.constraint].get(key[0] if len(key) == 1 else key)
            live = lin - added if lin is not None else None
            if not live:
                out = None
                break
            out.append(live)
        self._cache[added] = out
        return out


def _packing_bound(sets: list[frozenset], cost, zero):
    used: set = set()
    total = zero
    for s in sorted(sets, key=len):
        if used.isdisjoint(s):
            used |= s
            total = vadd(total, min(cost[e] for e in s))
    return total


def _guided_search(space: SupersetSpace, r: ConstraintSet, cost, zero, tally: Tally,
                   stop_at_optimum: bool = True, limit: Optional[int] = None):
    """Consistent addition sets in nondecreasing cost.

    With ``stop_at_optimum`` returns every consistent set of minimum cost;
    otherwise returns the ⊆-minimal ones (up to ``limit``, finishing the
    cost layer of the last one).
    """
    guide = _Guided(space, r)
    seq = itertools.count()
    start = frozenset()
    heap = [(zero, zero, next(seq), start, False)]
    seen = {start}
    found: list[frozenset] = []
    best = None
    while heap:
        key, spent, _, added, exact = heapq.heappop(heap)
        if best is not None and key > best:
            break
        if not stop_at_optimum and any(f <= added for f in found):
            continue
        sets = guide.open_sets(added)
        if sets is None:
            continue
        if not exact:
            true_key = max(key, vadd(spent, _packing_bound(sets, cost, zero)))
            if true_key > key:
                heapq.heappush(heap, (true_key, spent, next(seq), added, True))
                continue
        tally.tick()
        if not sets:
            found.append(added)
            if stop_at_optimum or (limit is not None and len(found) >= limit):
                best = key
            continue
        branch = min(sets, key=lambda s: (len(s), sorted(s)))
        for j in sorted(branch):
            child = space.close(added, j)
            if child is None or child in seen:
                continue
            seen.add(child)
            extra = spent
            for e in child - added:
                extra = vadd(extra, cost[e])
            heapq.heappush(heap, (max(extra, key), extra, next(seq), child, False))
    return found


def _uniform_search(space: SupersetSpace, r: ConstraintSet, cost, zero, tally: Tally,
                    stop_at_optimum: bool = True, limit: Optional[int] = None):
    """Same contract as ``_guided_search``, by plain enumeration."""
    seq = itertools.count()
    heap = [(zero, next(seq), ())]
    found: list[frozenset] = []
    best = None
    n = len(space)
    while heap:
        spent, _, chosen = heapq.heappop(heap)
        if best is not None and spent > best:
            break
        added = frozenset(chosen)
        if not stop_at_optimum and any(f <= added for f in found):
            continue
        if space.valid(added):
            tally.tick()
            if is_consistent(space.graph(added), r):
                found.append(added)
                if stop_at_optimum or (limit is not None and len(found) >= limit):
                    best = spent
                continue
        start = chosen[-1] + 1 if chosen else 0
        for j in range(start, n):
            # nodes come first, so an edge whose fresh endpoint is missing stays invalid
            if not space.requires[j] <= added:
                continue
            child = added | {j}
            if j < space.n_nodes and not space.valid(child):
                continue
            if space.max_size is not None and len(space.g) + len(child) > space.max_size:
                continue
            heapq.heappush(heap, (vadd(spent, cost[j]), next(seq), chosen + (j,)))
    return found


def _search(space, r, cost, zero, tally, **kw):
    if Fragment.POS in r.fragment():
        return _guided_search(space, r, cost, zero, tally, **kw)
    return _uniform_search(space, r, cost, zero, tally, **kw)


def _minimal(sets: list[frozenset]) -> list[frozenset]:
    return [s for s in sets if not any(o < s for o in sets)]


def superset_repairs(g: DataGraph, r: ConstraintSet, budget: SearchBudget = SearchBudget(),
                     limit: Optional[int] = None) -> list[DataGraph]:
    """⊆-minimal consistent supersets within the budget, smallest first."""
    tally = Tally(budget.max_explored)
    if is_consistent(g, r):
        return [g]
    if data_only_violation(g, r):
        return []
    return _enumerate(g, r, budget, limit, tally, SupersetSpace(g, r, budget))


def _enumerate(g, r, budget, limit, tally, space) -> list[DataGraph]:
    cost = [(1,)] * len(space)
    found = _search(space, r, cost, (0,), tally, stop_at_optimum=False, limit=limit)
    graphs = sorted((space.graph(s) for s in _minimal(found)), key=lambda h: (len(h), h.sort_key()))
    return graphs[:limit] if limit is not None else graphs


def mset_minimal(repairs: list[DataGraph], order: SymbolOrder) -> list[DataGraph]:
    ms = {h: multiset_of(h) for h in repairs}
    return [h for h in repairs if not any(multiset_less(ms[o], ms[h], order) for o in repairs)]


def find_preferred_superset_repair(g: DataGraph, r: ConstraintSet, crit: PreferenceCriterion = None,
                                   budget: SearchBudget = SearchBudget(), *,
                                   all_optima: bool = False) -> RepairResult:
    """A preferred superset repair within the budget.

    With no criterion the smallest repair is returned.  Weight mode
    minimizes total weight; multiset mode minimizes the multiset along the
    canonical linear extension of the order, which yields a repair no other
    repair is strictly below.  Remaining ties go to fewer elements, then to
    the lexicographically least element list.
    """
    tally = Tally(budget.max_explored)
    key = rank_key(crit, "superset", g)

    def result(repair, status, optima=()):
        ew = extra_weight(g, repair, crit) if repair is not None else None
        return RepairResult(repair, status, tally.n, None, ew, tuple(sorted(optima, key=key)))

    tally.tick()
    if is_consistent(g, r):
        return result(g, "repaired", (g,) if all_optima else ())
    if data_only_violation(g, r):
        return result(None, "none")
    space = SupersetSpace(g, r, budget)
    cost_of, zero = element_cost(crit, space.symbols())
    cost = [cost_of(el) for el in space.elements]
    goals = _search(space, r, cost, zero, tally)
    if not goals:
        return result(None, "unknown_beyond_budget")
    graphs = [space.graph(s) for s in _minimal(goals)]
    best = min(graphs, key=key)
    if not all_optima:
        return result(best, "repaired")
    partial = isinstance(crit, MultisetPreference) and not crit.order.is_total_on(space.symbols())
    if crit is None or partial:
        reps = _enumerate(g, r, budget, None, tally, space)
        optima = reps if crit is None else mset_minimal(reps, crit.order)
        return result(min(optima, key=key), "repaired", optima)
    return result(best, "repaired", graphs)


def decide_pi_w(g: DataGraph, r: ConstraintSet, w: WeightSpec, k: int,
                budget: SearchBudget = SearchBudget()) -> Optional[bool]:
    """Is there a superset repair of weight at most ``k`` within the budget?

    None means the budget holds no repair at all, so nothing is known.
    """
    res = find_preferred_superset_repair(g, r, WeightPreference(w), budget)
    if res.repair is None:
        return False if res.status == "none" else None
    return weight_of(res.repair, w) <= k


def decide_pi_mset(g: DataGraph, r: ConstraintSet, order: SymbolOrder, label: str, k: int,
                   budget: SearchBudget = SearchBudget()) -> Optional[bool]:
    """Does some multiset-preferred superset repair carry at most ``k`` ``label`` edges?"""
    res = find_preferred_superset_repair(g, r, MultisetPreference(order), budget, all_optima=True)
    if res.repair is None:
        return False if res.status == "none" else None
    return any(sum(1 for e in h.edges if e[1] == label) <= k for h in res.optima)


def is_superset_repair(g: DataGraph, cand: DataGraph, r: ConstraintSet, exact_limit: int = 20) -> bool:
    """Exact ⊆-minimality check over the added elements."""
    if not is_subgraph(g, cand) or not is_consistent(cand, r):
        return False
    extra = [("N", v, d) for v, d in sorted(cand.data.items()) if v not in g.data]
    extra += [("E",) + e for e in sorted(cand.edges - g.edges)]
    if len(extra) > exact_limit:
        raise BudgetExceeded(f"more than {exact_limit} added elements; exact check refused")
    for size in range(len(extra)):
        for combo in itertools.combinations(extra, size):
            nodes = {el[1]: el[2] for el in combo if el[0] == "N"}
            edges = [el[1:] for el in combo if el[0] == "E"]
            present = set(g.data) | set(nodes)
            if any(u not in present or v not in present for u, _, v in edges):
                continue
            if is_consistent(g.add(nodes=nodes, edges=edges), r):
                return False
    return True
