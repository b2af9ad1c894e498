from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from ..datagraph import (
    DataGraph, MultisetPreference, PreferenceCriterion, WeightPreference, WeightSpec,
    weight_of,
)
from ..eval import Evaluator
from ..gxpath.ast import And, DataEq, DataNeq, Not, Or, is_node, walk
from ..gxpath.constraints import ConstraintSet

Element = tuple  # ("N", node, data) or ("E", source, label, target)
Cost = tuple  # compared lexicographically; weights are 1-tuples


class BudgetExceeded(RuntimeError):
    """The search space or exploration count went past the configured cap."""


@dataclass(frozen=True)
class SearchBudget:
    """Bounds the superset candidate space and the work of any search.

    ``data_domain=None`` means the active domain: data values of the graph
    plus the constants mentioned in the constraints.
    """

    max_new_nodes: int = 0
    data_domain: Optional[tuple[str, ...]] = None
    max_candidate_edges: Optional[int] = None
    max_repair_size: Optional[int] = None
    max_explored: int = 500_000

    def __post_init__(self):
        if self.max_new_nodes < 0:
            raise ValueError("max_new_nodes must be non-negative")
        if self.data_domain is not None:
            object.__setattr__(self, "data_domain", tuple(self.data_domain))


@dataclass(frozen=True)
class RepairResult:
    repair: Optional[DataGraph]
    status: str  # repaired | trivial | none | unknown_beyond_budget
    explored: int
    maximality: Optional[str] = None  # verified | one_step, subset mode only
    extra_weight: Optional[int] = None
    optima: tuple[DataGraph, ...] = field(default=())

    def to_json(self) -> dict:
        out = dict(self.repair.to_json()) if self.repair is not None else {}
        out["status"] = self.status
        if self.maximality is not None:
            out["maximality"] = self.maximality
        out["explored"] = self.explored
        out["extra_weight"] = self.extra_weight
        if self.optima:
            out["optima"] = [g.to_json() for g in self.optima]
        return out


class Tally:
    """Exploration counter with a hard cap."""

    def __init__(self, cap: int):
        self.cap = cap
        self.n = 0

    def tick(self):
        self.n += 1
        if self.n > self.cap:
            raise BudgetExceeded(f"explored more than {self.cap} candidates")


def symbol_of(el: Element) -> str:
    return el[2]


def vadd(a: Cost, b: Cost) -> Cost:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Cost, b: Cost) -> Cost:
    return tuple(x - y for x, y in zip(a, b))


def element_cost(crit: PreferenceCriterion, symbols) -> tuple[Callable[[Element], Cost], Cost]:
    """Per-element cost function and its zero.

    Multiset costs are count vectors over a linear extension of the order,
    most significant (largest) symbol first, so tuple comparison is the
    multiset ordering of that extension.
    """
    if isinstance(crit, WeightPreference):
        w = crit.weights

        def cost(el):
            return (w.edge(el[2]),) if el[0] == "E" else (w.value(el[2]),)

        return cost, (0,)
    if isinstance(crit, MultisetPreference):
        ext = list(reversed(crit.order.linear_extension(symbols)))
        pos = {s: i for i, s in enumerate(ext)}
        zero = (0,) * len(ext)

        def cost(el):
            v = [0] * len(ext)
            v[pos[el[2]]] = 1
            return tuple(v)

        return cost, zero
    if crit is None:
        return (lambda el: (1,)), (0,)
    raise TypeError(f"not a preference criterion: {crit!r}")


def report_weight(crit: PreferenceCriterion) -> WeightSpec:
    return crit.weights if isinstance(crit, WeightPreference) else WeightSpec()


def extra_weight(g: DataGraph, repair: DataGraph, crit: PreferenceCriterion) -> int:
    w = report_weight(crit)
    return weight_of(repair, w) - weight_of(g, w)


def data_only(e) -> bool:
    """Node expression whose truth at a node depends on its data value alone."""
    return is_node(e) and all(isinstance(x, (DataEq, DataNeq, And, Or, Not)) for x in walk(e))


def data_only_violation(g: DataGraph, r: ConstraintSet) -> bool:
    """Some node fails a data-only constraint: no superset can fix that."""
    checks = [c for c in r if data_only(c)]
    if not checks:
        return False
    ev = Evaluator(g)
    return any(not ev.node(c).all() for c in checks)
