#!/usr/bin/env python3
"""Compare branching policies by recursive calls on random G(n, 0.5) pairs.

Defaults reproduce the desk-scale trend protocol: 100 pairs with 25-35
vertices, node budget 10^6 per run, RL against the alternating RL/DAL hybrid.
Expect roughly 10 s per run in CPython.
"""
import argparse
import csv
import sys

from mcsdal.experiments import er_pairs, trend_check


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs", type=int, default=100)
    ap.add_argument("--n-min", type=int, default=25)
    ap.add_argument("--n-max", type=int, default=35)
    ap.add_argument("--p", type=float, default=0.5)
    ap.add_argument("--node-budget", type=int, default=10**6)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--policy", action="append", help="default: rl and hybrid")
    ap.add_argument("--csv", help="write per-run rows here")
    args = ap.parse_args()

    policies = args.policy or ["rl", "hybrid"]
    pairs = er_pairs(args.pairs, args.n_min, args.n_max, args.p, args.seed)
    rows = []

    def progress(i, name, res):
        gp, gt = pairs[i]
        rows.append([i, gp.n, gt.n, name, res.size, res.status.value, res.recursive_calls,
                     round(res.elapsed, 3)])
        print(f"[{i + 1:3d}/{len(pairs)}] {name:>12} size={res.size:2d} {res.status.value:<20} "
              f"calls={res.recursive_calls}", file=sys.stderr, flush=True)

    summary = trend_check(pairs, policies, args.node_budget, args.seed, progress)
    if args.csv:
        with open(args.csv, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["pair", "n_p", "n_t", "policy", "size", "status", "recursive_calls", "elapsed_s"])
            w.writerows(rows)
    for line in summary.lines():
        print(line)
    if {"rl", "hybrid"} <= set(policies):
        verdict = "holds" if summary.trend_holds() else "not observed"
        print(f"trend (hybrid median <= 1.1 x rl median and solves >= rl): {verdict}")


if __name__ == "__main__":
    main()
