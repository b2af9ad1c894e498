"""Data-graphs, weights, symbol orders and graph multisets.

A data-graph is a finite set of nodes, each carrying one data value, plus a
set of labeled directed edges.  Nodes are identified by ``NodeId`` strings
that are distinct from their data values (two nodes may share a value).
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional, Union

NodeId = str
DataValue = str
EdgeLabel = str
Edge = tuple[NodeId, EdgeLabel, NodeId]

INT64_MAX = 2**63 - 1


class GraphError(ValueError):
    """Raised for malformed graphs, weight specs and symbol orders."""


class DataGraph:
    """Immutable data-graph ``(V, L_e, D)``.

    ``data`` maps every node to its data value and doubles as the node set.
    ``edges`` is a set of ``(source, label, target)`` triples.
    """

    __slots__ = ("_data", "_edges", "_hash")

    def __init__(self, data: Mapping[NodeId, DataValue], edges: Iterable[Edge] = ()):
        data = dict(data)
        edge_list = list(edges)
        edge_set = frozenset(edge_list)
        if len(edge_set) != len(edge_list):
            dup = sorted(e for e, n in Counter(edge_list).items() if n > 1)[0]
            raise GraphError(f"duplicate edge {dup}")
        for u, label, v in edge_set:
            if u not in data or v not in data:
                raise GraphError(f"edge ({u}, {label}, {v}) references an unknown node")
        clash = {label for _, label, _ in edge_set} & set(data.values())
        if clash:
            raise GraphError(f"symbols used both as edge label and data value: {sorted(clash)}")
        self._data = data
        self._edges = edge_set
        self._hash = None

    @classmethod
    def empty(cls) -> "DataGraph":
        return cls({}, ())

    @property
    def data(self) -> Mapping[NodeId, DataValue]:
        return self._data

    @property
    def nodes(self) -> frozenset[NodeId]:
        return frozenset(self._data)

    @property
    def edges(self) -> frozenset[Edge]:
        return self._edges

    def labels(self, u: NodeId, v: NodeId) -> frozenset[EdgeLabel]:
        return frozenset(label for a, label, b in self._edges if a == u and b == v)

    @property
    def edge_labels(self) -> frozenset[EdgeLabel]:
        return frozenset(label for _, label, _ in self._edges)

    @property
    def data_values(self) -> frozenset[DataValue]:
        return frozenset(self._data.values())

    def __len__(self) -> int:
        """Number of elements: nodes plus edges."""
        return len(self._data) + len(self._edges)

    def is_empty(self) -> bool:
        return not self._data

    def elements(self) -> list[tuple]:
        """Sorted element list; the lexicographic tie-break key for graphs."""
        items = [("E", u, label, v) for u, label, v in self._edges]
        items += [("N", n, d) for n, d in self._data.items()]
        return sorted(items)

    def sort_key(self) -> tuple:
        return tuple(self.elements())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DataGraph):
            return NotImplemented
        return self._data == other._data and self._edges == other._edges

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self._data.items()), self._edges))
        return self._hash

    def __repr__(self) -> str:
        return f"DataGraph(nodes={len(self._data)}, edges={len(self._edges)})"

    # construction helpers; each returns a new graph

    def add(self, nodes: Mapping[NodeId, DataValue] = {}, edges: Iterable[Edge] = ()) -> "DataGraph":
        data = dict(self._data)
        for n, d in nodes.items():
            if n in data and data[n] != d:
                raise GraphError(f"node {n} already holds data {data[n]!r}")
            data[n] = d
        return DataGraph(data, self._edges | frozenset(edges))

    def remove(self, nodes: Iterable[NodeId] = (), edges: Iterable[Edge] = ()) -> "DataGraph":
        """Drop nodes (with their incident edges) and edges."""
        gone = set(nodes)
        drop = set(edges)
        data = {n: d for n, d in self._data.items() if n not in gone}
        kept = [e for e in self._edges if e not in drop and e[0] not in gone and e[2] not in gone]
        return DataGraph(data, kept)

    def restrict(self, nodes: Iterable[NodeId]) -> "DataGraph":
        keep = set(nodes)
        return self.remove(nodes=[n for n in self._data if n not in keep])

    # JSON

    def to_json(self) -> dict:
        return {
            "nodes": [{"id": n, "data": self._data[n]} for n in sorted(self._data)],
            "edges": [{"from": u, "to": v, "label": label} for u, label, v in sorted(self._edges)],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DataGraph":
        try:
            node_items = obj["nodes"]
            edge_items = obj.get("edges", [])
            data: dict[NodeId, DataValue] = {}
            for item in node_items:
                nid, value = item["id"], item["data"]
                if not isinstance(nid, str) or not isinstance(value, str):
                    raise GraphError("node id and data must be strings")
                if nid in data:
                    raise GraphError(f"duplicate node id {nid!r}")
                data[nid] = value
            edges = []
            for item in edge_items:
                u, v, label = item["from"], item["to"], item["label"]
                if not all(isinstance(x, str) for x in (u, v, label)):
                    raise GraphError("edge endpoints and labels must be strings")
                edges.append((u, label, v))
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed graph JSON: {exc!r}") from exc
        return cls(data, edges)

    @classmethod
    def load(cls, path) -> "DataGraph":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


@dataclass(frozen=True)
class Alphabets:
    edge_labels: frozenset[EdgeLabel]
    data_values: frozenset[DataValue]

    def __post_init__(self):
        if self.edge_labels & self.data_values:
            raise GraphError("edge labels and data values must be disjoint")

    @classmethod
    def of(cls, g: DataGraph) -> "Alphabets":
        return cls(g.edge_labels, g.data_values)


def is_subgraph(g1: DataGraph, g2: DataGraph) -> bool:
    """``g1 ⊆ g2``: node inclusion, edge inclusion and agreement on data."""
    d2 = g2.data
    for n, d in g1.data.items():
        if d2.get(n) != d:
            return False
    return g1.edges <= g2.edges


# weights


def _check_weight(x, what):
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise GraphError(f"{what} must be a non-negative integer, got {x!r}")
    if x > INT64_MAX:
        raise OverflowError(f"{what} exceeds the 64-bit weight range")


@dataclass(frozen=True)
class WeightSpec:
    """Weight function over edge labels and data values.

    Symbols missing from the maps fall back to the defaults.
    """

    edge_weights: Mapping[EdgeLabel, int] = field(default_factory=dict)
    data_weights: Mapping[DataValue, int] = field(default_factory=dict)
    default_edge: int = 1
    default_data: int = 1

    def __post_init__(self):
        object.__setattr__(self, "edge_weights", dict(self.edge_weights))
        object.__setattr__(self, "data_weights", dict(self.data_weights))
        for k, v in self.edge_weights.items():
            _check_weight(v, f"weight of label {k!r}")
        for k, v in self.data_weights.items():
            _check_weight(v, f"weight of data value {k!r}")
        _check_weight(self.default_edge, "default_edge")
        _check_weight(self.default_data, "default_data")

    def __hash__(self):
        return hash((tuple(sorted(self.edge_weights.items())), tuple(sorted(self.data_weights.items())),
                     self.default_edge, self.default_data))

    def edge(self, label: EdgeLabel) -> int:
        return self.edge_weights.get(label, self.default_edge)

    def value(self, value: DataValue) -> int:
        return self.data_weights.get(value, self.default_data)

    def to_json(self) -> dict:
        return {
            "edge_weights": dict(sorted(self.edge_weights.items())),
            "data_weights": dict(sorted(self.data_weights.items())),
            "default_edge": self.default_edge,
            "default_data": self.default_data,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "WeightSpec":
        unknown = set(obj) - {"edge_weights", "data_weights", "default_edge", "default_data"}
        if unknown:
            raise GraphError(f"unknown weight spec keys {sorted(unknown)}")
        return cls(
            edge_weights=obj.get("edge_weights", {}),
            data_weights=obj.get("data_weights", {}),
            default_edge=obj.get("default_edge", 1),
            default_data=obj.get("default_data", 1),
        )

    @classmethod
    def load(cls, path) -> "WeightSpec":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def weight_of(g: DataGraph, w: WeightSpec) -> int:
    total = sum(w.edge(label) for _, label, _ in g.edges)
    total += sum(w.value(d) for d in g.data.values())
    if total > INT64_MAX:
        raise OverflowError("graph weight exceeds the 64-bit range")
    return total


# symbol orders and multisets


class SymbolOrder:
    """Strict partial order over a finite declared set of symbols.

    Built from explicit ``(smaller, larger)`` pairs and closed under
    transitivity.  Symbols outside the declared set are incomparable to
    everything.
    """

    def __init__(self, symbols: Iterable[str] = (), less_than: Iterable[tuple[str, str]] = ()):
        pairs = [tuple(p) for p in less_than]
        declared = set(symbols)
        for p in pairs:
            if len(p) != 2:
                raise GraphError(f"order pair must have two entries, got {list(p)}")
            declared.update(p)
        above: dict[str, set[str]] = {s: set() for s in declared}
        for x, y in pairs:
            above[x].add(y)
        # Warshall closure; the declared set is small
        for k in sorted(declared):
            for i in declared:
                if k in above[i]:
                    above[i] |= above[k]
        for s in declared:
            if s in above[s]:
                raise GraphError(f"order contains a cycle through {s!r}")
        self.symbols = frozenset(declared)
        self._above = {s: frozenset(v) for s, v in above.items()}
        self._pairs = tuple(sorted(pairs))

    @classmethod
    def chain(cls, *symbols: str) -> "SymbolOrder":
        """Total order with ``symbols[0] < symbols[1] < ...``."""
        return cls(symbols, zip(symbols, symbols[1:]))

    def less(self, x: str, y: str) -> bool:
        return y in self._above.get(x, ())

    def above(self, x: str) -> frozenset[str]:
        return self._above.get(x, frozenset())

    def is_total_on(self, symbols: Iterable[str]) -> bool:
        syms = list(set(symbols))
        for i, x in enumerate(syms):
            for y in syms[i + 1:]:
                if not (self.less(x, y) or self.less(y, x)):
                    return False
        return True

    def linear_extension(self, extra: Iterable[str] = ()) -> list[str]:
        """Deterministic linear extension, smallest first.

        Undeclared symbols from ``extra`` come first in name order; declared
        symbols follow in topological order, ties broken by name.
        """
        undeclared = sorted(set(extra) - self.symbols)
        below: dict[str, set[str]] = {s: set() for s in self.symbols}
        for x in self.symbols:
            for y in self._above[x]:
                below[y].add(x)
        placed: list[str] = []
        done: set[str] = set()
        while len(done) < len(self.symbols):
            ready = sorted(s for s in self.symbols if s not in done and below[s] <= done)
            placed.append(ready[0])
            done.add(ready[0])
        return undeclared + placed

    def __eq__(self, other):
        return isinstance(other, SymbolOrder) and self.symbols == other.symbols and self._above == other._above

    def __hash__(self):
        return hash((self.symbols, tuple(sorted(self._above.items()))))

    def __repr__(self):
        return f"SymbolOrder({sorted(self.symbols)}, {list(self._pairs)})"

    def to_json(self) -> dict:
        return {"symbols": sorted(self.symbols), "less_than": [list(p) for p in self._pairs]}

    @classmethod
    def from_json(cls, obj: dict) -> "SymbolOrder":
        try:
            return cls(obj.get("symbols", []), [tuple(p) for p in obj.get("less_than", [])])
        except TypeError as exc:
            raise GraphError(f"malformed order JSON: {exc!r}") from exc

    @classmethod
    def load(cls, path) -> "SymbolOrder":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


class GraphMultiset(Mapping[str, int]):
    """Finite multiset over edge labels and data values; zero counts dropped."""

    __slots__ = ("_counts",)

    def __init__(self, counts: Union[Mapping[str, int], Iterable[str]] = ()):
        c = Counter(counts)
        for k, v in c.items():
            if v < 0:
                raise ValueError(f"negative multiplicity for {k!r}")
        self._counts = {k: v for k, v in c.items() if v}

    def __getitem__(self, key: str) -> int:
        return self._counts.get(key, 0)

    def __iter__(self) -> Iterator[str]:
        return iter(self._counts)

    def __len__(self) -> int:
        return len(self._counts)

    def __eq__(self, other):
        if isinstance(other, GraphMultiset):
            return self._counts == other._counts
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._counts.items()))

    def __repr__(self):
        return f"GraphMultiset({dict(sorted(self._counts.items()))})"

    def total(self) -> int:
        return sum(self._counts.values())

    def __add__(self, other: "GraphMultiset") -> "GraphMultiset":
        return GraphMultiset(Counter(self._counts) + Counter(dict(other)))


def multiset_of(g: DataGraph) -> GraphMultiset:
    counts = Counter(label for _, label, _ in g.edges)
    counts.update(g.data.values())
    return GraphMultiset(counts)


def multiset_less(m1: Mapping[str, int], m2: Mapping[str, int], order: SymbolOrder) -> bool:
    """Multiset extension of ``order``: ``m1 < m2``."""
    support = set(m1) | set(m2)
    if all(m1.get(x, 0) == m2.get(x, 0) for x in support):
        return False
    for x in support:
        if m1.get(x, 0) > m2.get(x, 0):
            if not any(m1.get(y, 0) < m2.get(y, 0) for y in order.above(x)):
                return False
    return True


@dataclass(frozen=True)
class WeightPreference:
    weights: WeightSpec


@dataclass(frozen=True)
class MultisetPreference:
    order: SymbolOrder


PreferenceCriterion = Optional[Union[WeightPreference, MultisetPreference]]


def graph_less(g1: DataGraph, g2: DataGraph, crit: Union[WeightPreference, MultisetPreference]) -> bool:
    """``g1`` precedes ``g2`` under the criterion (lighter / smaller multiset)."""
    if isinstance(crit, WeightPreference):
        return weight_of(g1, crit.weights) < weight_of(g2, crit.weights)
    if isinstance(crit, MultisetPreference):
        return multiset_less(multiset_of(g1), multiset_of(g2), crit.order)
    raise TypeError(f"not a preference criterion: {crit!r}")
