"""3-CNF formulas as superset-repair instances, and repairs back to assignments.

Variables become nodes holding ``var``, clauses nodes holding ``clause``,
and two constant nodes hold ``T`` and ``F``.  A literal occurrence is an
``appears_in`` (positive) or ``appears_negated_in`` (negative) edge from the
variable to the clause.  Two node constraints force each variable to pick a
truth value through ``value_of`` edges and each clause to see a literal made
true.  A cheapest repair adds exactly one ``value_of`` edge per variable,
and only when the formula is satisfiable.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from .datagraph import DataGraph, SymbolOrder, WeightSpec, is_subgraph, weight_of
from .gxpath.constraints import ConstraintSet
from .gxpath.syntax import parse_node

VALUE_OF = "value_of"
APPEARS_IN = "appears_in"
APPEARS_NEGATED_IN = "appears_negated_in"
TRUE, FALSE = "T", "F"

PSI_1 = f'<[!="var"] + {VALUE_OF}.[="{TRUE}"] + {VALUE_OF}.[="{FALSE}"]>'
PSI_2 = (f'<[!="clause"] + {APPEARS_IN}^-.{VALUE_OF}.[="{TRUE}"]'
         f' + {APPEARS_NEGATED_IN}^-.{VALUE_OF}.[="{FALSE}"]>')


class MalformedRepair(ValueError):
    """The repair is not the input graph plus one truth-value edge per variable."""


@dataclass(frozen=True)
class Cnf3:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        if self.num_vars < 1:
            raise ValueError("a formula needs at least one variable")
        for c in self.clauses:
            if not 1 <= len(c) <= 3:
                raise ValueError(f"clause {c} does not have 1 to 3 literals")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range 1..{self.num_vars}")

    def satisfied_by(self, assignment: dict[int, bool]) -> bool:
        return all(any(assignment[abs(l)] == (l > 0) for l in c) for c in self.clauses)


def brute_force_sat(cnf: Cnf3) -> Optional[dict[int, bool]]:
    """First satisfying assignment in binary counting order, or None."""
    for bits in itertools.product((False, True), repeat=cnf.num_vars):
        a = {i + 1: b for i, b in enumerate(bits)}
        if cnf.satisfied_by(a):
            return a
    return None


def random_cnf3(rng: random.Random, num_vars: int, num_clauses: int, widths=(3,)) -> Cnf3:
    """Random clauses; a clause narrower than 3 is padded by repeating a literal."""
    clauses = []
    for _ in range(num_clauses):
        lits = [rng.choice((1, -1)) * rng.randint(1, num_vars) for _ in range(rng.choice(widths))]
        lits += [lits[-1]] * (3 - len(lits))
        clauses.append(tuple(lits))
    return Cnf3(num_vars, tuple(clauses))


def parse_dimacs(text: str) -> Cnf3:
    num_vars = None
    lits: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad problem line: {line!r}")
            num_vars = int(parts[2])
            continue
        lits.extend(int(tok) for tok in line.split())
    if num_vars is None:
        raise ValueError("missing 'p cnf' problem line")
    clauses, cur = [], []
    for lit in lits:
        if lit == 0:
            clauses.append(tuple(cur))
            cur = []
        else:
            cur.append(lit)
    if cur:
        clauses.append(tuple(cur))
    return Cnf3(num_vars, tuple(clauses))


def to_dimacs(cnf: Cnf3) -> str:
    lines = [f"p cnf {cnf.num_vars} {len(cnf.clauses)}"]
    lines += [" ".join(map(str, c)) + " 0" for c in cnf.clauses]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ReductionInstance:
    cnf: Cnf3
    graph: DataGraph
    constraints: ConstraintSet
    weights: WeightSpec
    order: SymbolOrder
    k_w: int
    k_mset: int
    label: str = VALUE_OF


def var_node(i: int) -> str:
    return f"x{i}"


def clause_node(j: int) -> str:
    return f"c{j}"


def reduction_constraints() -> ConstraintSet:
    return ConstraintSet((parse_node(PSI_1), parse_node(PSI_2)))


def reduction_weights() -> WeightSpec:
    return WeightSpec(edge_weights={VALUE_OF: 1}, default_edge=2, default_data=2)


def reduction_order() -> SymbolOrder:
    return SymbolOrder.chain(VALUE_OF, APPEARS_IN, APPEARS_NEGATED_IN, "clause", "var", TRUE, FALSE)


def encode(cnf: Cnf3) -> ReductionInstance:
    data = {var_node(i): "var" for i in range(1, cnf.num_vars + 1)}
    data.update({clause_node(j): "clause" for j in range(1, len(cnf.clauses) + 1)})
    data[TRUE] = TRUE
    data[FALSE] = FALSE
    edges = set()
    for j, clause in enumerate(cnf.clauses, start=1):
        for lit in clause:
            label = APPEARS_IN if lit > 0 else APPEARS_NEGATED_IN
            edges.add((var_node(abs(lit)), label, clause_node(j)))
    g = DataGraph(data, edges)
    w = reduction_weights()
    return ReductionInstance(cnf, g, reduction_constraints(), w, reduction_order(),
                             weight_of(g, w) + cnf.num_vars, cnf.num_vars)


def decode(inst: ReductionInstance, repair: DataGraph) -> dict[int, bool]:
    g = inst.graph
    if not is_subgraph(g, repair) or repair.nodes != g.nodes:
        raise MalformedRepair("repair must keep exactly the nodes of the instance")
    added = repair.edges - g.edges
    assignment: dict[int, bool] = {}
    for u, label, v in sorted(added):
        if label != VALUE_OF or v not in (TRUE, FALSE) or g.data[u] != "var":
            raise MalformedRepair(f"unexpected added edge {(u, label, v)}")
        i = int(u[1:])
        if i in assignment:
            raise MalformedRepair(f"variable {u} receives two truth values")
        assignment[i] = v == TRUE
    if len(assignment) != inst.cnf.num_vars:
        raise MalformedRepair("some variable has no truth value")
    return assignment


def write_instance(inst: ReductionInstance, out_dir) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    def dump(name, obj):
        (out / name).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")

    dump("graph.json", inst.graph.to_json())
    (out / "constraints.gx").write_text(inst.constraints.dumps(), encoding="utf-8")
    dump("weights.json", inst.weights.to_json())
    dump("order.json", inst.order.to_json())
    dump("meta.json", {"K_w": inst.k_w, "K_mset": inst.k_mset, "label": inst.label,
                       "num_vars": inst.cnf.num_vars, "num_clauses": len(inst.cnf.clauses)})
    return out


def corpus(seed: int = 0, size: int = 200, max_vars: int = 5, max_clauses: int = 6) -> Iterable[Cnf3]:
    """Seeded random formulas with n ≤ ``max_vars``, m ≤ ``max_clauses``.

    Every other formula uses clauses of width 1 or 2 (padded to 3), which
    makes unsatisfiable members common enough to exercise both directions.
    """
    rng = random.Random(seed)
    for k in range(size):
        widths = (3,) if k % 2 == 0 else (1, 2, 2)
        yield random_cnf3(rng, rng.randint(1, max_vars), rng.randint(1, max_clauses), widths)
