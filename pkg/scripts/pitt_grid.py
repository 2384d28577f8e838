#!/usr/bin/env python3
"""Classify the power-weight family u = |x|^{-lam}, v = |x|^{alpha} over an
exact rational exponent grid and write one CSV row per configuration.

The balance exponent lam = 1/p + 1/q + alpha - 1 is computed in exact
rational arithmetic, so boundary cases land exactly on the boundary.

Usage: python3 scripts/pitt_grid.py [--n 20] [--out pitt_grid.csv]
"""

import argparse
import csv
import sys
from fractions import Fraction

from fourierineq.criteria import ExponentConfig, evaluate
from fourierineq.weights import NONDECREASING, NONINCREASING, WeightSpec


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=20, help="grid points per axis")
    ap.add_argument("--out", default="pitt_grid.csv")
    args = ap.parse_args()

    ps = [1 + Fraction(k, 4) for k in range(1, args.n + 1)]
    alphas = [Fraction(j - 5, 16) for j in range(args.n)]
    rows = 0
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["p", "q", "alpha", "lambda", "holds", "constant"])
        for p in ps:
            for q in ps:
                if p > q:
                    continue
                for al in alphas:
                    lam = 1 / p + 1 / q + al - 1
                    u = (WeightSpec.one() if lam == 0
                         else WeightSpec.power(lam, NONINCREASING))
                    v = (WeightSpec.one(NONDECREASING) if al == 0
                         else WeightSpec.power(al, NONDECREASING))
                    rep = evaluate(u, v, ExponentConfig(p, q))
                    g = rep.governing
                    w.writerow([p, q, al, lam, rep.holds,
                                f"{g.value:.12g}" if g.is_finite else g.state])
                    rows += 1
    print(f"wrote {rows} rows to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
