"""Weight- and multiset-preferred superset repairs of the bundled network graph."""
from pathlib import Path

from gxrepair import ConstraintSet, DataGraph, SymbolOrder, WeightSpec
from gxrepair.datagraph import MultisetPreference, WeightPreference, multiset_of
from gxrepair.repair import find_preferred_superset_repair

NET = Path(__file__).resolve().parent.parent / "data" / "network"


def show(title, g, res):
    added = sorted(res.repair.edges - g.edges)
    m = multiset_of(res.repair)
    print(f"{title}: status={res.status} explored={res.explored} extra_weight={res.extra_weight}")
    for u, a, v in added:
        print(f"    + {u} -{a}-> {v}")
    print(f"    low={m['low']} high={m['high']}")


def main():
    g = DataGraph.load(NET / "fig3a.json")
    r = ConstraintSet.load(NET / "constraints.gx")
    w = WeightSpec.load(NET / "weights.json")
    order = SymbolOrder.load(NET / "order.json")
    show("weight", g, find_preferred_superset_repair(g, r, WeightPreference(w)))
    show("multiset", g, find_preferred_superset_repair(g, r, MultisetPreference(order)))


if __name__ == "__main__":
    main()
