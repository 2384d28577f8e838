"""Rearrangements on the half line (0, inf).

star(f) is the non-increasing rearrangement with respect to the measure of
(0, inf); radial functions on R^d enter through ball-measure coordinates
(unit ball has measure 1), so the rearrangement of a monotone radial weight
is the profile map t -> w0(t**(1/d)).

All rearrangements of step data are exact: level sets of monotone power
pieces are inverted in closed form (the piece family offset + c*(t-shift)**a
is closed under that inversion), never sampled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .pieces import quad

from .extreal import ExtReal
from .pieces import Piece, StepFunction
from .weights import WeightSpec, NONINCREASING, _recip, radial_map


# ---------------------------------------------------------------------------
# non-increasing rearrangement
# ---------------------------------------------------------------------------


def star(f: StepFunction) -> StepFunction:
    """Non-increasing rearrangement of f, exact.

    Supported pieces: constants and monotone non-increasing power pieces
    whose value ranges do not overlap other non-constant pieces (increasing
    power pieces and log factors would need reflected/transcendental
    inversions and are rejected).
    """
    live = [p for p in f.pieces if p.offset != 0.0 or p.coef != 0.0]
    if not live:
        return StepFunction.constant(0.0)
    for p in live:
        if math.isinf(p.offset):
            return StepFunction.constant(math.inf)
        if p.b != 0:
            raise NotImplementedError("rearrangement of log-factor pieces")
        if not p.is_constant and float(p.a) > 0:
            if math.isinf(p.hi):
                # grows without bound: every super-level set has infinite
                # measure, so the rearrangement is identically +inf
                return StepFunction.constant(math.inf)
            raise NotImplementedError(
                "rearrangement of increasing power pieces")

    # fast exact path: finitely many constant cells, zero tail
    if all(p.is_constant for p in live) and all(math.isfinite(p.hi) for p in live):
        return _star_of_cells(live)
    return _star_general(live)


def _star_of_cells(cells: list[Piece]) -> StepFunction:
    items = sorted(((p.const_value, p.hi - p.lo) for p in cells),
                   key=lambda x: -x[0])
    pieces: list[Piece] = []
    t = 0.0
    for v, length in items:
        if v == 0.0:
            continue
        if pieces and pieces[-1].const_value == v:
            last = pieces.pop()
            pieces.append(Piece(last.lo, last.hi + length, v))
        else:
            pieces.append(Piece(t, t + length, v))
        t += length
    if not pieces:
        return StepFunction.constant(0.0)
    return StepFunction(pieces)


def _star_general(live: list[Piece]) -> StepFunction:
    """Layer-cake merge of constant cells and decreasing power pieces."""
    # floor level below which the super-level measure is infinite
    floor = 0.0
    for p in live:
        if math.isinf(p.hi):
            floor = max(floor, p.limit_at(math.inf))
    # critical levels: endpoint values of every piece
    crits: set[float] = set()
    unbounded_top = False
    for p in live:
        for v in (p.limit_at(p.lo), p.limit_at(p.hi)):
            if math.isinf(v):
                unbounded_top = True
            elif v > floor:
                crits.add(v)
    levels = sorted(crits, reverse=True)
    if unbounded_top:
        levels = [math.inf] + levels
    if floor >= 0.0:
        levels.append(floor)

    def measure_above(lam: float) -> float:
        m = 0.0
        for p in live:
            m += _piece_measure_above(p, lam)
        return m

    pieces: list[Piece] = []
    t_cursor = 0.0
    for lam_hi, lam_lo in zip(levels, levels[1:]):
        mid = lam_lo + 0.5 * (min(lam_hi, 2 * lam_lo + 1.0) - lam_lo) \
            if math.isinf(lam_hi) else 0.5 * (lam_hi + lam_lo)
        straddlers = [p for p in live if not p.is_constant
                      and _straddles(p, lam_lo, lam_hi)]
        if len(straddlers) > 1:
            raise NotImplementedError(
                "rearrangement with overlapping non-constant level ranges")
        const_len = sum((p.hi - p.lo) for p in live
                        if _piece_measure_above(p, mid) == (p.hi - p.lo)
                        and math.isfinite(p.hi))
        if not straddlers:
            # measure is flat on this band: the rearrangement jumps here
            t_next = const_len
            if t_next > t_cursor + 1e-15:
                pieces.append(Piece(t_cursor, t_next, lam_hi
                                    if math.isfinite(lam_hi) else lam_lo))
                t_cursor = t_next
            continue
        p = straddlers[0]
        # decreasing piece: {p > lam} = (lo, g_inv(lam)); measure adds
        # g_inv(lam) - lo, so  t = K + ((lam-off)/c)**(1/a)  with
        # K = const_len + shift - lo, inverted exactly to
        # lam = off + c*(t-K)**a.
        K = const_len + p.shift - p.lo
        t_hi_level = K + _ginv_term(p, lam_hi)   # t at the top level
        t_lo_level = K + _ginv_term(p, lam_lo)   # t at the bottom level
        t0 = max(t_cursor, t_hi_level)
        if t0 > t_cursor + 1e-15:
            pieces.append(Piece(t_cursor, t0, lam_hi
                                if math.isfinite(lam_hi) else lam_lo))
        if t_lo_level > t0 + 1e-15 or math.isinf(t_lo_level):
            pieces.append(Piece(t0, t_lo_level, p.offset, p.coef, K, p.a, 0))
        t_cursor = t_lo_level
    if math.isfinite(t_cursor):
        if floor > 0.0:
            pieces.append(Piece(t_cursor, math.inf, floor))
        else:
            pieces.append(Piece(t_cursor, math.inf))
    if not pieces:
        return StepFunction.constant(floor)
    return StepFunction(pieces)


def _straddles(p: Piece, lam_lo: float, lam_hi: float) -> bool:
    v0, v1 = p.endpoint_range()
    return v0 <= lam_lo + 1e-15 and (v1 >= lam_hi - 1e-15
                                     or (math.isinf(lam_hi) and math.isinf(v1)))


def _ginv_term(p: Piece, lam: float) -> float:
    """((lam - offset)/coef)**(1/a) for a decreasing monomial piece."""
    a = float(p.a)
    if math.isinf(lam):
        return 0.0
    s = lam - p.offset
    if s <= 0.0:
        return math.inf  # level at or below the piece offset: full tail
    return (s / p.coef) ** (1.0 / a)


def _piece_measure_above(p: Piece, lam: float) -> float:
    v_min, v_max = p.endpoint_range()
    if lam >= v_max:
        return 0.0
    if lam < v_min:
        return p.hi - p.lo
    # straddling a decreasing piece: (lo, shift + ginv)
    return max(0.0, min(p.hi, p.shift + _ginv_term(p, lam)) - p.lo)


# ---------------------------------------------------------------------------
# distribution function
# ---------------------------------------------------------------------------


def distribution(f: StepFunction) -> StepFunction:
    """lam -> |{f > lam}| as a StepFunction of lam, exact.

    Computed by analytic inversion of the (already computed) rearrangement;
    tails are never sampled.
    """
    fs = star(f)
    out: list[Piece] = []
    # walk star pieces from the right (small values) to the left
    lam_cursor = 0.0
    for p in reversed(fs.pieces):
        if p.offset == 0.0 and p.coef == 0.0:
            continue
        if p.is_constant:
            v = p.const_value
            if math.isinf(v):
                break
            if v > lam_cursor + 1e-15:
                out.append(Piece(lam_cursor, v, p.hi if math.isfinite(p.hi)
                                 else math.inf))
                lam_cursor = v
        else:
            # lam = off + c*(t-K)**a on (lo, hi]  =>
            # m(lam) = K + ((lam-off)/c)**(1/a) on (value(hi), value(lo))
            v_at_hi = p.limit_at(p.hi)
            v_at_lo = p.limit_at(p.lo)
            a = float(p.a)
            lam_lo = max(lam_cursor, v_at_hi)
            lam_hi = v_at_lo
            if lam_hi <= lam_lo + 1e-15 and not math.isinf(lam_hi):
                continue
            coef = p.coef ** (-1.0 / a)
            out.append(Piece(lam_lo, lam_hi, p.shift, coef, p.offset,
                             _inv_exp(p.a), 0))
            lam_cursor = lam_hi
    if math.isfinite(lam_cursor):
        out.append(Piece(lam_cursor, math.inf))
    if not out:
        return StepFunction.constant(0.0)
    return StepFunction(out)


def _inv_exp(a):
    from fractions import Fraction
    if isinstance(a, Fraction):
        return 1 / a
    return 1.0 / float(a)


# ---------------------------------------------------------------------------
# weight rearrangements
# ---------------------------------------------------------------------------


def circ_profile(w: WeightSpec) -> StepFunction:
    """Non-increasing rearrangement of a radial non-increasing weight.

    For a valid monotone weight this is the ball-measure profile map
    t -> w0(t**(1/d)).  A weight declared non-increasing whose profile
    actually grows rearranges to the constant +inf (its super-level sets all
    have infinite measure).
    """
    prof_half = w.halfline_profile()
    if prof_half.is_nonincreasing():
        return prof_half
    return star(prof_half)


def lower_star(w: WeightSpec) -> StepFunction:
    """Non-decreasing rearrangement v_* defined by 1/v_* = (1/v)*.

    For a valid non-decreasing radial weight this is the profile map; a
    decreasing profile in the non-decreasing slot yields v_* = 0 (so
    integrals of negative powers of v_* diverge, as they must).
    """
    prof_half = w.halfline_profile()
    recip = _recip(prof_half)
    if recip.is_nonincreasing():
        return prof_half
    return _recip(star(recip))


# ---------------------------------------------------------------------------
# maximal average and the Hardy-Littlewood pairing
# ---------------------------------------------------------------------------


class AveragedRearrangement:
    """Callable t -> (1/t) * integral_0^t f* (the level-set maximal average).

    Returned by double_star when the result is not exactly representable as
    power-log pieces; supports pointwise evaluation and knot inspection.
    """

    def __init__(self, fs: StepFunction):
        self.fs = fs
        self.knots = [b for b in fs.breakpoints if b > 0.0]

    def __call__(self, t: float) -> float:
        if t <= 0.0:
            raise ValueError("defined on (0, inf)")
        val = self.fs.integrate(0.0, t)
        if not val.is_finite:
            return math.inf
        return val.value / t


def double_star(f: StepFunction):
    """f** = t -> (1/t) integral_0^t f*; StepFunction when representable."""
    fs = star(f)
    pieces: list[Piece] = []
    acc = 0.0  # integral of f* up to current piece start
    exact = True
    for p in fs.pieces:
        if math.isinf(p.offset):
            return StepFunction.constant(math.inf)
        if p.is_constant:
            v = p.const_value
            # (acc + v*(t-lo))/t = v + (acc - v*lo)/t
            coef = acc - v * p.lo
            if coef < 0:
                coef = 0.0  # exact zero up to roundoff: f* non-increasing
            pieces.append(Piece(p.lo, p.hi, v, coef, 0.0, -1, 0))
        elif p.is_monomial and p.shift == 0.0 and float(p.a) != -1:
            a = float(p.a)
            head = acc - p.coef * p.lo ** (a + 1) / (a + 1) if p.lo > 0 else acc
            if abs(head) <= 1e-12 * max(1.0, acc):
                pieces.append(Piece(p.lo, p.hi, 0.0, p.coef / (a + 1),
                                    0.0, p.a, 0))
            else:
                exact = False
                break
        else:
            exact = False
            break
        seg = p.integral(p.lo, p.hi)
        acc = math.inf if seg.is_infinite else acc + seg.value
    if exact:
        return StepFunction(pieces)
    return AveragedRearrangement(fs)


def hl_pairing(f: StepFunction, g: StepFunction) -> ExtReal:
    """integral_0^inf f*(t) g*(t) dt (the Hardy-Littlewood upper pairing)."""
    fs, gs = star(f), star(g)
    try:
        return (fs * gs).integrate()
    except NotImplementedError:
        knots = sorted(set(fs.breakpoints) | set(gs.breakpoints))
        knots = [k for k in knots if k > 0.0]
        hi = (knots[-1] if knots else 1.0)
        total = 0.0
        lo = 0.0
        for k in knots + [math.inf]:
            ub = k if math.isfinite(k) else hi * 1e6
            val, _ = quad(lambda t: fs(t) * gs(t), lo, ub, limit=200)
            total += val
            lo = ub
            if math.isinf(k):
                break
        return ExtReal.finite(total)
