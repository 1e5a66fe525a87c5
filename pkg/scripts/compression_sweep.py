#!/usr/bin/env python
"""Storage and cost error of rank-truncated coefficient tensors."""

import argparse

import numpy as np

from hobo.compressor import compressed_cost, compression_report, tensor_svd, truncate
from hobo.evaluator import contract
from hobo.oracle import code_to_assignment
from hobo.polynomial import random_instance
from hobo.tensor import build_hobo_tensor


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=10)
    ap.add_argument("--degree", type=int, default=3)
    ap.add_argument("--terms", type=int, default=60)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=500)
    args = ap.parse_args()

    p = random_instance(args.n, args.degree, args.terms, (-10, 10), seed=args.seed)
    t = build_hobo_tensor(p, max(p.degree, 2))
    f = tensor_svd(t)
    rng = np.random.default_rng(args.seed)
    xs = [code_to_assignment(int(c), p.num_vars)
          for c in rng.integers(0, 1 << p.num_vars, size=args.samples)]
    exact = np.array([contract(t, x) for x in xs])

    print(f"{'rank':>4} {'dense':>7} {'factored':>8} {'rel err':>9} {'max |cost err|':>14}")
    for r in range(1, f.rank + 1):
        rep = compression_report(t, r)
        fr = truncate(f, r)
        dev = max(abs(compressed_cost(fr, x) - e) for x, e in zip(xs, exact))
        print(f"{r:>4} {rep['stored_values_dense']:>7} {rep['stored_values_factored']:>8} "
              f"{rep['relative_error']:>9.2e} {dev:>14.3e}")


if __name__ == "__main__":
    main()
