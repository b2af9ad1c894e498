"""AST node types for path and node expressions.

All nodes are frozen dataclasses, so structural equality and hashing come
for free; evaluators memoize on them.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Epsilon:
    pass


@dataclass(frozen=True)
class Wildcard:
    pass


@dataclass(frozen=True)
class Label:
    name: str


@dataclass(frozen=True)
class Inverse:
    name: str


@dataclass(frozen=True)
class Concat:
    left: "PathExpr"
    right: "PathExpr"


@dataclass(frozen=True)
class Union:
    left: "PathExpr"
    right: "PathExpr"


@dataclass(frozen=True)
class Intersect:
    left: "PathExpr"
    right: "PathExpr"


@dataclass(frozen=True)
class Star:
    arg: "PathExpr"


@dataclass(frozen=True)
class Complement:
    arg: "PathExpr"


@dataclass(frozen=True)
class NodeTest:
    test: "NodeExpr"


@dataclass(frozen=True)
class Repeat:
    arg: "PathExpr"
    lo: int
    hi: int

    def __post_init__(self):
        if not (0 <= self.lo <= self.hi):
            raise ValueError(f"repeat bounds must satisfy 0 <= n <= m, got {{{self.lo},{self.hi}}}")


@dataclass(frozen=True)
class DataEq:
    value: str


@dataclass(frozen=True)
class DataNeq:
    value: str


@dataclass(frozen=True)
class Not:
    arg: "NodeExpr"


@dataclass(frozen=True)
class Or:
    left: "NodeExpr"
    right: "NodeExpr"


@dataclass(frozen=True)
class And:
    left: "NodeExpr"
    right: "NodeExpr"


@dataclass(frozen=True)
class Exists:
    path: "PathExpr"


@dataclass(frozen=True)
class ExistsEq:
    left: "PathExpr"
    right: "PathExpr"


@dataclass(frozen=True)
class ExistsNeq:
    left: "PathExpr"
    right: "PathExpr"


PathExpr = Epsilon | Wildcard | Label | Inverse | Concat | Union | Intersect | Star | Complement | NodeTest | Repeat
NodeExpr = DataEq | DataNeq | Not | Or | And | Exists | ExistsEq | ExistsNeq
Expr = PathExpr | NodeExpr

PATH_TYPES = (Epsilon, Wildcard, Label, Inverse, Concat, Union, Intersect, Star, Complement, NodeTest, Repeat)
NODE_TYPES = (DataEq, DataNeq, Not, Or, And, Exists, ExistsEq, ExistsNeq)


def is_path(e) -> bool:
    return isinstance(e, PATH_TYPES)


def is_node(e) -> bool:
    return isinstance(e, NODE_TYPES)


def children(e: Expr) -> tuple:
    if isinstance(e, (Concat, Union, Intersect, Or, And, ExistsEq, ExistsNeq)):
        return (e.left, e.right)
    if isinstance(e, (Star, Complement, Repeat, Not)):
        return (e.arg,)
    if isinstance(e, NodeTest):
        return (e.test,)
    if isinstance(e, Exists):
        return (e.path,)
    return ()


def walk(e: Expr):
    """Pre-order traversal of all sub-expressions."""
    stack = [e]
    while stack:
        x = stack.pop()
        yield x
        stack.extend(reversed(children(x)))


def labels_of(e: Expr) -> frozenset[str]:
    return frozenset(x.name for x in walk(e) if isinstance(x, (Label, Inverse)))


def constants_of(e: Expr) -> frozenset[str]:
    return frozenset(x.value for x in walk(e) if isinstance(x, (DataEq, DataNeq)))


def implies_path(a: PathExpr, b: PathExpr) -> PathExpr:
    """``a => b`` as ``b + !a``."""
    return Union(b, Complement(a))


def implies_node(a: NodeExpr, b: NodeExpr) -> NodeExpr:
    """``a => b`` as ``b + !a``."""
    return Or(b, Not(a))
