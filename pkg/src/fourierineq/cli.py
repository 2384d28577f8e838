"""Command-line front end.

Subcommands: criteria, hardy, norms, estimate, verify, sweep.  Reports are
JSON with explicit finiteness certificates (no bare "inf" leaks into the
numeric fields).  Exit codes: 0 success, 2 input/precondition error,
1 internal error.

Exponents are accepted as integers, decimals, fractions like ``4/3``, or
``inf``, and are kept exact through regime classification.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

from .criteria import (ExponentConfig, U_func, _is_inf, classify,
                       dual_config, evaluate, xi_func)
from .extreal import ExtReal
from .extremal import (ConstantBracket, bracket_constant, dft,
                       random_band_limited, ratio, weighted_norm)
from .hardy import (HEAD_INTEGRAL, HEAD_SUM, REVERSE, TAIL_INTEGRAL,
                    HardyProblem, brute_force_K, hardy_K)
from .norms import (SequenceData, bochkarev_norm, dyadic_block_norms,
                    expL_pair, gamma_norm, morrey_optimal_norm,
                    optimal_Y_norm, theta_norm)
from .pieces import StepFunction
from .weights import NONDECREASING, NONINCREASING, WeightSpec, parse_weight


class InputError(Exception):
    """A violated precondition or malformed input (exit code 2)."""


def _parse_exp(text: str):
    text = text.strip().lower()
    if text in ("inf", "infinity", "oo"):
        return math.inf
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad exponent {text!r}: {exc}") from exc


def _weight(text: str, direction: str) -> WeightSpec:
    try:
        return parse_weight(text, direction)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _config(args) -> ExponentConfig:
    try:
        return ExponentConfig(_parse_exp(args.p), _parse_exp(args.q),
                              getattr(args, "d", 1))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _write_report(report: dict, out: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def emit_plot_data(report: dict, outdir: str) -> list[str]:
    """Write CSV series for external plotting; returns written paths."""
    os.makedirs(outdir, exist_ok=True)
    written: list[str] = []
    series = report.get("plot_series", {})
    for name, rows in series.items():
        path = os.path.join(outdir, f"{name}.csv")
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(rows["columns"])
            writer.writerows(rows["rows"])
        written.append(path)
    return written


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_criteria(args) -> int:
    cfg = _config(args)
    u = _weight(args.u, NONINCREASING)
    v = _weight(args.v, NONDECREASING)
    report = evaluate(u, v, cfg).to_json()
    if args.plot_dir:
        # xi(t)/U(t) profile when the correction weight exists (q < 2)
        if not _is_inf(cfg.q) and cfg.q < 2:
            try:
                U = U_func(u, cfg)
                xi = xi_func(u, cfg)
                ts = np.geomspace(1e-4, 1e4, 200)
                rows = [[float(t), xi(t) / U(t)] for t in ts]
                report["plot_series"] = {
                    "xi_over_U": {"columns": ["t", "xi_over_U"],
                                  "rows": rows}}
            except Exception:
                pass
        emit_plot_data(report, args.plot_dir)
        report.pop("plot_series", None)
    _write_report(report, args.out)
    return 0


def cmd_hardy(args) -> int:
    pp = float(_parse_exp(args.p))
    qq = float(_parse_exp(args.q))
    try:
        if args.kind == "head_sum":
            useq = np.array([float(x) for x in args.u.split(",")])
            vseq = np.array([float(x) for x in args.v.split(",")])
            prob = HardyProblem(HEAD_SUM, pp, qq, u_seq=useq, v_seq=vseq)
        elif args.kind == "reverse":
            w = _weight(args.u, NONINCREASING).profile()
            nu = StepFunction.power(1.0, -1)  # nu(t) = t
            prob = HardyProblem(REVERSE, pp, qq, w=w, nu=nu)
        else:
            kind = HEAD_INTEGRAL if args.kind == "head_integral" \
                else TAIL_INTEGRAL
            uw = _weight(args.u, NONINCREASING).profile()
            vw = _weight(args.v, NONDECREASING).profile()
            prob = HardyProblem(kind, pp, qq, u_w=uw, v_w=vw)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    K = hardy_K(prob)
    report = {"kind": args.kind, "p": args.p, "q": args.q,
              "K": K.to_json()}
    if args.oracle:
        rng = np.random.default_rng(args.seed)
        report["oracle_lower_bound"] = brute_force_K(prob, rng)
    _write_report(report, args.out)
    return 0


def cmd_norms(args) -> int:
    kind = args.kind
    try:
        if kind in ("theta", "gamma", "bochkarev", "blocks"):
            if args.seq is None:
                raise InputError(f"--seq is required for kind {kind}")
            seq = SequenceData.from_csv(args.seq)
            e = _parse_exp(args.exponent)
            if kind == "theta":
                value = theta_norm(seq, e).to_json()
            elif kind == "gamma":
                value = gamma_norm(seq, e).to_json()
            elif kind == "bochkarev":
                value = ExtReal.finite(bochkarev_norm(seq, e)).to_json()
            else:
                value = ExtReal.finite(
                    dyadic_block_norms(seq, e)).to_json()
        elif kind == "optimalY":
            if args.f is None:
                raise InputError("--f is required for kind optimalY")
            f = StepFunction.from_csv(args.f)
            u = _weight(args.u, NONINCREASING)
            value = optimal_Y_norm(f, u, _parse_exp(args.exponent)).to_json()
        elif kind == "morrey":
            if args.f is None:
                raise InputError("--f is required for kind morrey")
            f = StepFunction.from_csv(args.f)
            shape = _weight(args.shape, NONINCREASING).profile()
            value = morrey_optimal_norm(f, _parse_exp(args.exponent), shape,
                                        args.d).to_json()
        else:  # expL
            if args.f is None:
                raise InputError("--f is required for kind expL")
            f = StepFunction.from_csv(args.f)
            left, right = expL_pair(f, args.d)
            value = {"expL": left.to_json(), "head_average": right.to_json()}
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _write_report({"kind": kind, "value": value}, args.out)
    return 0


def cmd_estimate(args) -> int:
    cfg = _config(args)
    u = _weight(args.u, NONINCREASING)
    v = _weight(args.v, NONDECREASING)
    rng = np.random.default_rng(args.seed)
    br = bracket_constant(u, v, cfg, rng, N=args.N, L=args.L,
                          n_random=args.budget)
    report = br.to_json()
    # resolution-sensitivity delta: best random-signal ratio at N vs N/2
    rng2 = np.random.default_rng(args.seed)
    half = max(
        ratio(random_band_limited(rng2, args.N // 2, args.L), u, v, cfg)
        for _ in range(max(2, args.budget // 2)))
    report["half_resolution_lower"] = half
    if args.plot_dir:
        report["plot_series"] = {
            "ratio_vs_resolution": {
                "columns": ["N", "best_ratio"],
                "rows": [[args.N // 2, half], [args.N, br.lower]]}}
        emit_plot_data(report, args.plot_dir)
        report.pop("plot_series", None)
    _write_report(report, args.out)
    return 0


def cmd_sweep(args) -> int:
    u = _weight(args.u, NONINCREASING)
    v = _weight(args.v, NONDECREASING)
    rows = []
    for ptxt in args.p_list.split(","):
        for qtxt in args.q_list.split(","):
            try:
                cfg = ExponentConfig(_parse_exp(ptxt), _parse_exp(qtxt),
                                     args.d)
            except ValueError:
                continue
            rep = evaluate(u, v, cfg)
            g = rep.governing
            rows.append([ptxt.strip(), qtxt.strip(), rep.regime,
                         g.state, "" if not g.is_finite else g.value,
                         rep.holds])
    out = args.out or "sweep.csv"
    with open(out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["p", "q", "regime", "state", "constant", "holds"])
        writer.writerows(rows)
    print(f"wrote {len(rows)} rows to {out}")
    return 0


def cmd_verify(args) -> int:
    """Quick built-in verification sweeps (the full suite lives in tests/)."""
    failures: list[str] = []
    suites = {"plancherel", "fourier", "duality"}
    chosen = suites if args.suite == "all" else {args.suite}
    if not chosen <= suites:
        raise InputError(f"unknown suite {args.suite!r}; "
                         f"choose from {sorted(suites)} or 'all'")
    rng = np.random.default_rng(args.seed)
    one_u = WeightSpec.one(NONINCREASING)
    one_v = WeightSpec.one(NONDECREASING)
    if "plancherel" in chosen:
        rep = evaluate(one_u, one_v, ExponentConfig(2, 2))
        ok = rep.governing.is_finite and abs(rep.governing.value - 1) < 1e-9
        print(f"plancherel: C = {rep.governing.value} "
              f"{'ok' if ok else 'FAIL'}")
        if not ok:
            failures.append("plancherel")
    if "fourier" in chosen:
        bad = 0
        for _ in range(20):
            f = random_band_limited(rng)
            F = dft(f)
            if weighted_norm(F, math.inf) > weighted_norm(f, 1) + 1e-9:
                bad += 1
            if abs(weighted_norm(F, 2) / weighted_norm(f, 2) - 1) > 1e-6:
                bad += 1
        print(f"fourier: {bad} violations on 20 signals")
        if bad:
            failures.append("fourier")
    if "duality" in chosen:
        bad = 0
        for (p, q) in [(2, 2), (Fraction(4, 3), 2), (2, 4), (3, 2),
                       (4, 3)]:
            cfg = ExponentConfig(p, q)
            u = WeightSpec.power(Fraction(1, 8))
            v = WeightSpec.power(Fraction(1, 8), NONDECREASING)
            du, dv, dcfg = dual_config(u, v, cfg)
            if (evaluate(u, v, cfg).governing.is_finite
                    != evaluate(du, dv, dcfg).governing.is_finite):
                bad += 1
        print(f"duality: {bad} finiteness mismatches on 5 configs")
        if bad:
            failures.append("duality")
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fourierineq",
        description="Weighted Fourier inequalities: criteria, Hardy "
                    "constants, optimal norms, and empirical brackets.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p, weights=True, exps=True):
        if weights:
            p.add_argument("--u", required=True,
                           help="non-increasing weight DSL, e.g. pow(1/4)")
            p.add_argument("--v", required=True,
                           help="non-decreasing weight DSL")
        if exps:
            p.add_argument("--p", required=True)
            p.add_argument("--q", required=True)
        p.add_argument("--out", default=None, help="write JSON here")

    pc = sub.add_parser("criteria", help="classify and evaluate a config")
    add_common(pc)
    pc.add_argument("--d", type=int, default=1)
    pc.add_argument("--plot-dir", default=None)
    pc.set_defaults(fn=cmd_criteria)

    ph = sub.add_parser("hardy", help="Hardy characterization constants")
    ph.add_argument("--kind", required=True,
                    choices=["head_sum", "head_integral", "tail_integral",
                             "reverse"])
    ph.add_argument("--u", required=True,
                    help="weight DSL (or comma-separated values for "
                         "head_sum; the w weight for reverse)")
    ph.add_argument("--v", default="pow(0)",
                    help="weight DSL or comma-separated values")
    ph.add_argument("--p", required=True)
    ph.add_argument("--q", required=True)
    ph.add_argument("--oracle", action="store_true",
                    help="also run the brute-force lower-bound search")
    ph.add_argument("--seed", type=int, default=0)
    ph.add_argument("--out", default=None)
    ph.set_defaults(fn=cmd_hardy)

    pn = sub.add_parser("norms", help="optimal-space and sequence norms")
    pn.add_argument("--kind", required=True,
                    choices=["optimalY", "morrey", "expL", "theta", "gamma",
                             "bochkarev", "blocks"])
    pn.add_argument("--seq", help="CSV of rows n,value (sequence kinds)")
    pn.add_argument("--f", help="step-function CSV (function kinds)")
    pn.add_argument("--u", help="weight DSL (optimalY)")
    pn.add_argument("--shape", help="shape weight DSL (morrey)")
    pn.add_argument("--exponent", default="2")
    pn.add_argument("--d", type=int, default=1)
    pn.add_argument("--out", default=None)
    pn.set_defaults(fn=cmd_norms)

    pe = sub.add_parser("estimate", help="two-sided constant bracket")
    add_common(pe)
    pe.add_argument("--d", type=int, default=1)
    pe.add_argument("--N", type=int, default=4096)
    pe.add_argument("--L", type=float, default=64.0)
    pe.add_argument("--seed", type=int, default=0)
    pe.add_argument("--budget", type=int, default=8,
                    help="random signals per witness family")
    pe.add_argument("--plot-dir", default=None)
    pe.set_defaults(fn=cmd_estimate)

    pv = sub.add_parser("verify", help="built-in verification sweeps")
    pv.add_argument("--suite", default="all")
    pv.add_argument("--seed", type=int, default=7)
    pv.set_defaults(fn=cmd_verify)

    ps = sub.add_parser("sweep", help="criteria over an exponent grid")
    ps.add_argument("--u", required=True)
    ps.add_argument("--v", required=True)
    ps.add_argument("--p-list", required=True,
                    help="comma-separated p values")
    ps.add_argument("--q-list", required=True,
                    help="comma-separated q values")
    ps.add_argument("--d", type=int, default=1)
    ps.add_argument("--out", default=None)
    ps.set_defaults(fn=cmd_sweep)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # internal error
        print(f"internal error: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
