"""Run both SAT reductions over a seeded corpus and tabulate agreement.

    python3 scripts/reduction_corpus.py --size 200 --seed 0
"""
import argparse
import time

from gxrepair.reductions import brute_force_sat, corpus, encode
from gxrepair.repair import decide_pi_mset, decide_pi_w


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--size", type=int, default=200)
    ap.add_argument("--max-vars", type=int, default=5)
    ap.add_argument("--max-clauses", type=int, default=6)
    args = ap.parse_args()

    rows = {"sat": 0, "unsat": 0, "pw_bad": 0, "pmset_bad": 0}
    t0 = time.perf_counter()
    for cnf in corpus(args.seed, args.size, args.max_vars, args.max_clauses):
        inst = encode(cnf)
        sat = brute_force_sat(cnf) is not None
        rows["sat" if sat else "unsat"] += 1
        rows["pw_bad"] += decide_pi_w(inst.graph, inst.constraints, inst.weights, inst.k_w) is not sat
        rows["pmset_bad"] += decide_pi_mset(inst.graph, inst.constraints, inst.order, inst.label,
                                            inst.k_mset) is not sat
    for k, v in rows.items():
        print(f"{k:>10} {v}")
    print(f"{'seconds':>10} {time.perf_counter() - t0:.1f}")


if __name__ == "__main__":
    main()
