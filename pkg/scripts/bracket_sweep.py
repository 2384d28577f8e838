#!/usr/bin/env python3
"""Two-sided constant brackets for a family of localized weights: u = ind(R)
against v = pow(gamma) (non-decreasing), sweeping R, and comparing the best
constructive witness ratio with the criterion upper value.

Usage: python3 scripts/bracket_sweep.py [--p 3] [--q 2] [--gamma 1/4]
       [--radii 0.5,1,2,4,8] [--seed 7] [--out brackets.csv]
"""

import argparse
import csv
import sys
from fractions import Fraction

import numpy as np

from fourierineq.criteria import ExponentConfig
from fourierineq.extremal import bracket_constant
from fourierineq.weights import NONDECREASING, WeightSpec


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", default="3")
    ap.add_argument("--q", default="2")
    ap.add_argument("--gamma", default="1/4")
    ap.add_argument("--radii", default="0.5,1,2,4,8")
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--out", default="brackets.csv")
    args = ap.parse_args()

    cfg = ExponentConfig(Fraction(args.p), Fraction(args.q))
    v = WeightSpec.power(Fraction(args.gamma), NONDECREASING)
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["R", "regime", "lower", "upper", "best_witness"])
        for rtxt in args.radii.split(","):
            R = float(rtxt)
            u = WeightSpec.indicator(R)
            br = bracket_constant(u, v, cfg, np.random.default_rng(args.seed))
            best = max(br.witnesses, key=br.witnesses.get)
            upper = (f"{br.upper.value:.6g}" if br.upper.is_finite
                     else br.upper.state)
            w.writerow([R, br.regime, f"{br.lower:.6g}", upper, best])
            print(f"R={R:g}: [{br.lower:.4g}, {upper}] via {best}")
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
