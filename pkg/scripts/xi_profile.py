#!/usr/bin/env python3
"""Profile of the correction weight xi against the cumulative weight U for a
given non-increasing weight u and exponents (p, q) with q < 2: writes
`t, U(t), xi(t), xi/U` rows on a geometric grid.

Usage: python3 scripts/xi_profile.py --u "pow(7/4)" --p 3 --q 1/2
       [--out xi_profile.csv]
"""

import argparse
import csv
import sys
from fractions import Fraction

import numpy as np

from fourierineq.criteria import ExponentConfig, U_func, xi_func
from fourierineq.weights import parse_weight


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--u", required=True, help="non-increasing weight DSL")
    ap.add_argument("--p", default="3")
    ap.add_argument("--q", default="1/2")
    ap.add_argument("--lo", type=float, default=1e-4)
    ap.add_argument("--hi", type=float, default=1e4)
    ap.add_argument("--points", type=int, default=200)
    ap.add_argument("--out", default="xi_profile.csv")
    args = ap.parse_args()

    cfg = ExponentConfig(Fraction(args.p), Fraction(args.q))
    u = parse_weight(args.u)
    U = U_func(u, cfg)
    xi = xi_func(u, cfg)
    worst = 0.0
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "U", "xi", "xi_over_U"])
        for t in np.geomspace(args.lo, args.hi, args.points):
            Ut, xit = U(float(t)), xi(float(t))
            r = xit / Ut if Ut > 0 else float("inf")
            worst = max(worst, r, 1.0 / r if r > 0 else float("inf"))
            w.writerow([f"{t:.6g}", f"{Ut:.12g}", f"{xit:.12g}", f"{r:.6g}"])
    print(f"wrote {args.out}; worst two-sided ratio {worst:.4g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
