"""Set semantics of path and node expressions over a data-graph.

Relations are materialized as boolean adjacency matrices indexed by the
graph's nodes in sorted ``NodeId`` order; node sets are boolean vectors.
Complement forces materialization anyway, so no automaton product is used.
Each distinct sub-expression is evaluated once per ``Evaluator``.
"""
from __future__ import annotations

import numpy as np

from .datagraph import DataGraph, NodeId
from .gxpath.ast import (
    And, Complement, Concat, DataEq, DataNeq, Epsilon, Exists, ExistsEq, ExistsNeq, Intersect,
    Inverse, Label, NodeTest, Not, Or, Repeat, Star, Union, Wildcard,
)


def compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # float32 matmul is exact for counts below 2**24, far above any node count here
    return (a.astype(np.float32) @ b.astype(np.float32)) > 0


def closure(a: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure by repeated squaring."""
    r = a | np.eye(a.shape[0], dtype=bool)
    while True:
        nxt = r | compose(r, r)
        if np.array_equal(nxt, r):
            return r
        r = nxt


class Evaluator:
    def __init__(self, g: DataGraph):
        self.graph = g
        self.ids: list[NodeId] = sorted(g.nodes)
        self.index = {v: i for i, v in enumerate(self.ids)}
        n = len(self.ids)
        self.n = n
        values = sorted(set(g.data.values()))
        self._value_code = {c: i for i, c in enumerate(values)}
        self._codes = np.array([self._value_code[g.data[v]] for v in self.ids], dtype=np.int64)
        onehot = np.zeros((n, len(values)), dtype=bool)
        onehot[np.arange(n), self._codes] = True
        self._onehot = onehot
        self._labels: dict[str, np.ndarray] = {}
        any_edge = np.zeros((n, n), dtype=bool)
        for u, label, v in g.edges:
            m = self._labels.get(label)
            if m is None:
                m = self._labels[label] = np.zeros((n, n), dtype=bool)
            m[self.index[u], self.index[v]] = True
            any_edge[self.index[u], self.index[v]] = True
        self._any = any_edge
        self._memo: dict = {}

    def _label(self, name: str) -> np.ndarray:
        m = self._labels.get(name)
        return m if m is not None else np.zeros((self.n, self.n), dtype=bool)

    def path(self, e) -> np.ndarray:
        hit = self._memo.get(e)
        if hit is None:
            hit = self._memo[e] = self._path(e)
        return hit

    def node(self, e) -> np.ndarray:
        hit = self._memo.get(e)
        if hit is None:
            hit = self._memo[e] = self._node(e)
        return hit

    def _path(self, e) -> np.ndarray:
        n = self.n
        if isinstance(e, Epsilon):
            return np.eye(n, dtype=bool)
        if isinstance(e, Wildcard):
            return self._any
        if isinstance(e, Label):
            return self._label(e.name)
        if isinstance(e, Inverse):
            return self._label(e.name).T
        if isinstance(e, Concat):
            return compose(self.path(e.left), self.path(e.right))
        if isinstance(e, Union):
            return self.path(e.left) | self.path(e.right)
        if isinstance(e, Intersect):
            return self.path(e.left) & self.path(e.right)
        if isinstance(e, Star):
            return closure(self.path(e.arg))
        if isinstance(e, Complement):
            return ~self.path(e.arg)
        if isinstance(e, NodeTest):
            return np.diag(self.node(e.test))
        if isinstance(e, Repeat):
            return self._repeat(self.path(e.arg), e.lo, e.hi)
        raise TypeError(f"not a path expression: {e!r}")

    def _repeat(self, a: np.ndarray, lo: int, hi: int) -> np.ndarray:
        power = np.eye(self.n, dtype=bool)
        acc = power.copy() if lo == 0 else np.zeros_like(power)
        seen = {power.tobytes(): 0}
        for k in range(1, hi + 1):
            power = compose(power, a)
            if k >= lo:
                acc |= power
            key = power.tobytes()
            if key in seen and seen[key] >= lo:
                # the power sequence cycles through values already accumulated
                break
            seen[key] = k
        return acc

    def _node(self, e) -> np.ndarray:
        if isinstance(e, DataEq):
            code = self._value_code.get(e.value)
            return self._codes == code if code is not None else np.zeros(self.n, dtype=bool)
        if isinstance(e, DataNeq):
            code = self._value_code.get(e.value)
            return self._codes != code if code is not None else np.ones(self.n, dtype=bool)
        if isinstance(e, Not):
            return ~self.node(e.arg)
        if isinstance(e, Or):
            return self.node(e.left) | self.node(e.right)
        if isinstance(e, And):
            return self.node(e.left) & self.node(e.right)
        if isinstance(e, Exists):
            return self.path(e.path).any(axis=1)
        if isinstance(e, (ExistsEq, ExistsNeq)):
            reach_a = compose(self.path(e.left), self._onehot)
            reach_b = compose(self.path(e.right), self._onehot)
            if isinstance(e, ExistsEq):
                return (reach_a & reach_b).any(axis=1)
            # some differing pair exists unless both sides see the same single value
            both = reach_a.any(axis=1) & reach_b.any(axis=1)
            return both & ((reach_a | reach_b).sum(axis=1) >= 2)
        raise TypeError(f"not a node expression: {e!r}")

    def pairs(self, m: np.ndarray) -> frozenset[tuple[NodeId, NodeId]]:
        ids = self.ids
        return frozenset((ids[i], ids[j]) for i, j in zip(*np.nonzero(m)))

    def members(self, v: np.ndarray) -> frozenset[NodeId]:
        ids = self.ids
        return frozenset(ids[i] for i in np.flatnonzero(v))


def eval_path(g: DataGraph, e) -> frozenset[tuple[NodeId, NodeId]]:
    ev = Evaluator(g)
    return ev.pairs(ev.path(e))


def eval_node(g: DataGraph, e) -> frozenset[NodeId]:
    ev = Evaluator(g)
    return ev.members(ev.node(e))
