"""Lineage evaluation for positive expressions.

Each pair (or node) in the answer is annotated with the union of the
annotated edges over *all* derivations of that membership.  In a graph that
contains every candidate addition, any consistent superset must derive each
currently violated membership with at least one element from its lineage,
which is what the superset search branches on.

Only complement- and negation-free expressions are supported: lineage is
meaningless for non-monotone operators.
"""
from __future__ import annotations

from collections import defaultdict
from typing import Callable, Hashable

from .datagraph import DataGraph
from .gxpath.ast import (
    And, Complement, Concat, DataEq, DataNeq, Epsilon, Exists, ExistsEq, ExistsNeq, Intersect,
    Inverse, Label, NodeTest, Not, Or, Repeat, Star, Union, Wildcard,
)

Rel = dict  # (u, v) -> frozenset of annotations
NodeAnn = dict  # v -> frozenset of annotations

_EMPTY = frozenset()


def _merge(into: dict, key, ann: frozenset) -> bool:
    old = into.get(key)
    if old is None:
        into[key] = ann
        return True
    if ann <= old:
        return False
    into[key] = old | ann
    return True


def _compose(a: Rel, b: Rel) -> Rel:
    by_src = defaultdict(list)
    for (y, z), ann in b.items():
        by_src[y].append((z, ann))
    out: Rel = {}
    for (x, y), ann in a.items():
        for z, ann2 in by_src.get(y, ()):
            _merge(out, (x, z), ann | ann2)
    return out


class Lineage:
    """Lineage evaluator over ``g``; ``annotate(edge)`` gives each edge's tags."""

    def __init__(self, g: DataGraph, annotate: Callable[[tuple], frozenset]):
        self.g = g
        self.nodes = sorted(g.nodes)
        self._labels: dict[str, Rel] = defaultdict(dict)
        self._any: Rel = {}
        for e in g.edges:
            u, label, v = e
            ann = annotate(e)
            self._labels[label][(u, v)] = ann
            _merge(self._any, (u, v), ann)
        self._memo: dict[Hashable, dict] = {}

    def path(self, e) -> Rel:
        hit = self._memo.get(e)
        if hit is None:
            hit = self._memo[e] = self._path(e)
        return hit

    def node(self, e) -> NodeAnn:
        hit = self._memo.get(e)
        if hit is None:
            hit = self._memo[e] = self._node(e)
        return hit

    def _path(self, e) -> Rel:
        if isinstance(e, Epsilon):
            return {(v, v): _EMPTY for v in self.nodes}
        if isinstance(e, Wildcard):
            return self._any
        if isinstance(e, Label):
            return self._labels.get(e.name, {})
        if isinstance(e, Inverse):
            return {(v, u): ann for (u, v), ann in self._labels.get(e.name, {}).items()}
        if isinstance(e, Concat):
            return _compose(self.path(e.left), self.path(e.right))
        if isinstance(e, Union):
            out = dict(self.path(e.left))
            for k, ann in self.path(e.right).items():
                _merge(out, k, ann)
            return out
        if isinstance(e, Intersect):
            a, b = self.path(e.left), self.path(e.right)
            return {k: ann | b[k] for k, ann in a.items() if k in b}
        if isinstance(e, Star):
            return self._star(self.path(e.arg))
        if isinstance(e, NodeTest):
            return {(v, v): ann for v, ann in self.node(e.test).items()}
        if isinstance(e, Repeat):
            return self._repeat(self.path(e.arg), e.lo, e.hi)
        if isinstance(e, Complement):
            raise ValueError("lineage is undefined for path complement")
        raise TypeError(f"not a path expression: {e!r}")

    def _star(self, a: Rel) -> Rel:
        out: Rel = {(v, v): _EMPTY for v in self.nodes}
        for k, ann in a.items():
            _merge(out, k, ann)
        changed = True
        while changed:
            changed = False
            for k, ann in _compose(out, a).items():
                changed |= _merge(out, k, ann)
        return out

    def _repeat(self, a: Rel, lo: int, hi: int) -> Rel:
        power: Rel = {(v, v): _EMPTY for v in self.nodes}
        acc: Rel = dict(power) if lo == 0 else {}
        seen = {frozenset(power.items()): 0}
        for k in range(1, hi + 1):
            power = _compose(power, a)
            if k >= lo:
                for key, ann in power.items():
                    _merge(acc, key, ann)
            sig = frozenset(power.items())
            if sig in seen and seen[sig] >= lo:
                break
            seen[sig] = k
        return acc

    def _node(self, e) -> NodeAnn:
        data = self.g.data
        if isinstance(e, DataEq):
            return {v: _EMPTY for v in self.nodes if data[v] == e.value}
        if isinstance(e, DataNeq):
            return {v: _EMPTY for v in self.nodes if data[v] != e.value}
        if isinstance(e, Or):
            out = dict(self.node(e.left))
            for k, ann in self.node(e.right).items():
                _merge(out, k, ann)
            return out
        if isinstance(e, And):
            a, b = self.node(e.left), self.node(e.right)
            return {k: ann | b[k] for k, ann in a.items() if k in b}
        if isinstance(e, Exists):
            out: NodeAnn = {}
            for (x, _), ann in self.path(e.path).items():
                _merge(out, x, ann)
            return out
        if isinstance(e, (ExistsEq, ExistsNeq)):
            left = self._by_value(self.path(e.left))
            right = self._by_value(self.path(e.right))
            out = {}
            for x, lv in left.items():
                rv = right.get(x)
                if not rv:
                    continue
                for c1, a1 in lv.items():
                    for c2, a2 in rv.items():
                        if (c1 == c2) == isinstance(e, ExistsEq):
                            _merge(out, x, a1 | a2)
            return out
        if isinstance(e, Not):
            raise ValueError("lineage is undefined for node negation")
        raise TypeError(f"not a node expression: {e!r}")

    def _by_value(self, rel: Rel) -> dict:
        data = self.g.data
        out: dict = defaultdict(dict)
        for (x, y), ann in rel.items():
            _merge(out[x], data[y], ann)
        return out
