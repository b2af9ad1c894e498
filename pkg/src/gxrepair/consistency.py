from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .datagraph import DataGraph
from .eval import Evaluator
from .gxpath.ast import is_node
from .gxpath.constraints import ConstraintSet


@dataclass(frozen=True)
class Violation:
    constraint: int
    witness: tuple  # (node,) for node constraints, (source, target) for path constraints

    def to_json(self) -> dict:
        return {"constraint": self.constraint, "witness": list(self.witness)}


@dataclass(frozen=True)
class Verdict:
    consistent: bool
    violations: tuple[Violation, ...] = ()

    def to_json(self) -> dict:
        return {"consistent": self.consistent, "violations": [v.to_json() for v in self.violations]}


def violations(ev: Evaluator, r: ConstraintSet, first_violation: bool = False) -> list[Violation]:
    """Violations in constraint order, witnesses in node-id order."""
    out = []
    ids = ev.ids
    for k, c in enumerate(r):
        if is_node(c):
            bad = np.flatnonzero(~ev.node(c))
            out.extend(Violation(k, (ids[i],)) for i in bad)
        else:
            rows, cols = np.nonzero(~ev.path(c))
            out.extend(Violation(k, (ids[i], ids[j])) for i, j in zip(rows, cols))
        if first_violation and out:
            return out[:1]
    return out


def is_consistent(g: DataGraph, r: ConstraintSet) -> bool:
    ev = Evaluator(g)
    for c in r:
        if is_node(c):
            if not ev.node(c).all():
                return False
        elif not ev.path(c).all():
            return False
    return True


def check(g: DataGraph, r: ConstraintSet, first_violation: bool = False) -> Verdict:
    found = violations(Evaluator(g), r, first_violation)
    return Verdict(not found, tuple(found))
