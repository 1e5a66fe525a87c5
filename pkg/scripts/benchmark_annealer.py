#!/usr/bin/env python
"""Annealer success rate against the exhaustive optimum on random instances."""

import argparse
import time

from hobo.annealer import AnnealConfig, anneal
from hobo.oracle import brute_force_min
from hobo.polynomial import random_instance


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=12)
    ap.add_argument("--degree", type=int, default=4)
    ap.add_argument("--terms", type=int, default=50)
    ap.add_argument("--instances", type=int, default=100)
    ap.add_argument("--sweeps", type=int, nargs="+", default=[50, 200, 500, 2000])
    ap.add_argument("--restarts", type=int, default=20)
    args = ap.parse_args()

    probs = [
        random_instance(args.n, args.degree, args.terms, (-10, 10), seed=i, integer=True)
        for i in range(args.instances)
    ]
    optima = [brute_force_min(p)[1] for p in probs]

    print(f"{'sweeps':>8} {'hits':>6} {'mean gap':>10} {'seconds':>8}")
    for sweeps in args.sweeps:
        start = time.perf_counter()
        hits, gap = 0, 0.0
        for i, (p, best) in enumerate(zip(probs, optima)):
            res = anneal(p, AnnealConfig(sweeps=sweeps, restarts=args.restarts, seed=i))
            hits += abs(res.best_cost - best) <= 1e-9
            gap += res.best_cost - best
        elapsed = time.perf_counter() - start
        print(f"{sweeps:>8} {hits:>4}/{len(probs):<3} {gap / len(probs):>8.3f} {elapsed:>8.2f}")


if __name__ == "__main__":
    main()
