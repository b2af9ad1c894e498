"""Deterministic ranking of repairs, shared by the searches and the oracles.

Every repair is ranked by what it changes relative to the input graph: the
removed part for subset repairs, the added part for superset repairs.
Smaller is better.  Ties fall to element count and then to the
lexicographic order of the element lists.
"""
from __future__ import annotations

from typing import Callable

from ..datagraph import (
    DataGraph, GraphMultiset, MultisetPreference, PreferenceCriterion, SymbolOrder, WeightPreference,
    multiset_of, weight_of,
)


def symbol_rank(order: SymbolOrder) -> Callable[[str], tuple]:
    """Position of a symbol in the canonical linear extension of ``order``.

    Undeclared symbols sit below every declared one, by name; the relative
    rank of two symbols never depends on which other symbols are around.
    """
    pos = {s: i for i, s in enumerate(order.linear_extension())}

    def rank(s: str) -> tuple:
        i = pos.get(s)
        return (0, s) if i is None else (1, i)

    return rank


def multiset_key(m: GraphMultiset, rank) -> tuple:
    """Tuple order on this key is the multiset order of the linear extension."""
    return tuple(sorted(((rank(s), c) for s, c in m.items() if c), reverse=True))


def _difference(big: GraphMultiset, small: GraphMultiset) -> GraphMultiset:
    return GraphMultiset({s: big[s] - small[s] for s in big})


def rank_key(crit: PreferenceCriterion, mode: str, base: DataGraph) -> Callable[[DataGraph], tuple]:
    if mode not in ("subset", "superset"):
        raise ValueError(f"unknown repair mode {mode!r}")
    sign = 1 if mode == "superset" else -1
    n0 = len(base)

    if isinstance(crit, WeightPreference):
        w = crit.weights
        w0 = weight_of(base, w)
        return lambda h: (sign * (weight_of(h, w) - w0), sign * (len(h) - n0), h.sort_key())
    if isinstance(crit, MultisetPreference):
        rank = symbol_rank(crit.order)
        m0 = multiset_of(base)

        def key(h):
            m = multiset_of(h)
            diff = _difference(m, m0) if mode == "superset" else _difference(m0, m)
            return (multiset_key(diff, rank), h.sort_key())

        return key
    if crit is None:
        return lambda h: (sign * (len(h) - n0), h.sort_key())
    raise TypeError(f"not a preference criterion: {crit!r}")
