"""Compare the repair searches against the powerset enumerators on random instances.

    python3 scripts/oracle_crosscheck.py --count 300
"""
import argparse
import random

from gxrepair.datagraph import DataGraph, MultisetPreference, SymbolOrder, WeightPreference, WeightSpec
from gxrepair.gxpath import ConstraintSet
from gxrepair.gxpath.ast import DataEq, Exists, Label, Not, Or, Star, Union
from gxrepair.repair import brute_preferred, find_preferred_subset_repair, find_preferred_superset_repair

LABELS, VALUES = ("a", "b"), ("p", "q")


def random_constraint(rng, depth=2):
    if depth == 0:
        return DataEq(rng.choice(VALUES)) if rng.random() < 0.5 else Exists(Label(rng.choice(LABELS)))
    sub = lambda: random_constraint(rng, depth - 1)
    pick = rng.randrange(4)
    if pick == 0:
        return Or(sub(), sub())
    if pick == 1:
        return Not(sub())
    if pick == 2:
        return Exists(Star(Label(rng.choice(LABELS))))
    return Exists(Union(Label(rng.choice(LABELS)), Label(rng.choice(LABELS))))


def instance(rng, n):
    ids = [f"n{i}" for i in range(n)]
    data = {v: rng.choice(VALUES) for v in ids}
    edges = {(u, a, v) for u in ids for v in ids for a in LABELS if rng.random() < 0.2}
    return DataGraph(data, edges), ConstraintSet((random_constraint(rng),))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    bad = 0
    for _ in range(args.count):
        w = WeightSpec(edge_weights={a: rng.randint(0, 3) for a in LABELS})
        order = SymbolOrder.chain(*rng.sample(LABELS + VALUES, 4))
        g, r = instance(rng, rng.randint(1, 3))
        for crit in (WeightPreference(w), MultisetPreference(order)):
            if len(g) <= 10:
                bad += find_preferred_subset_repair(g, r, crit).repair != brute_preferred(g, r, crit).repair
            small = DataGraph(dict(list(g.data.items())[:2]))
            bad += (find_preferred_superset_repair(small, r, crit).repair
                    != brute_preferred(small, r, crit, "superset").repair)
    print(f"instances={args.count} mismatches={bad}")


if __name__ == "__main__":
    main()
