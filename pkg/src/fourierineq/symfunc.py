"""Non-negative functions on (0, inf) with certified power-log asymptotics.

The criteria constants are nested integrals whose integrands are products of
powers of antiderivatives; such functions have exact power-log leading
behavior at 0 and at infinity even though no closed form exists in between.
A SymFunc couples a numeric callable with those two asymptotic exponents:

    f(t) ~ coef * t**a * log(1/t)**b   as t -> 0+
    f(t) ~ coef * t**a * log(t)**b     as t -> inf

All finiteness decisions (integrability at the endpoints, boundedness of
sups) are made from the exponents symbolically; quadrature is used only for
the finite numeric values and is performed in exp-substituted coordinates so
endpoint singularities are integrated accurately.

Exponents are Fractions whenever the inputs were rational, so boundary
cases (exponent exactly -1 or 0) are decided exactly.
"""

from __future__ import annotations

import bisect
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
import warnings

from scipy.integrate import IntegrationWarning, quad as _scipy_quad


def quad(*args, **kwargs):
    """scipy.integrate.quad with its accuracy warnings silenced; the
    integrands here are piecewise-smooth with known discontinuities and the
    achieved tolerances are validated against closed forms in the tests."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        return _scipy_quad(*args, **kwargs)

from .extreal import ExtReal
from .pieces import StepFunction, Exponent, _as_exp


class Divergence(Exception):
    """Raised when a quantity is certified infinite; carries the reason."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


# ---------------------------------------------------------------------------
# exponent helpers
# ---------------------------------------------------------------------------


def eadd(x: Exponent, y: Exponent) -> Exponent:
    x, y = _as_exp(x), _as_exp(y)
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x + y
    return float(x) + float(y)


def emul(x: Exponent, y: Exponent) -> Exponent:
    x, y = _as_exp(x), _as_exp(y)
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x * y
    return float(x) * float(y)


def eneg(x: Exponent) -> Exponent:
    return -x


def ecmp(x: Exponent, y: Exponent) -> int:
    x, y = _as_exp(x), _as_exp(y)
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return (x > y) - (x < y)
    fx, fy = float(x), float(y)
    return (fx > fy) - (fx < fy)


@dataclass(frozen=True)
class Asym:
    coef: float
    a: Exponent = 0
    b: Exponent = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _as_exp(self.a))
        object.__setattr__(self, "b", _as_exp(self.b))

    def mul(self, other: "Asym") -> "Asym":
        return Asym(self.coef * other.coef, eadd(self.a, other.a),
                    eadd(self.b, other.b))

    def pow(self, e: Exponent) -> "Asym":
        return Asym(self.coef ** float(e), emul(self.a, e), emul(self.b, e))

    def integrable_at_zero(self) -> bool:
        c = ecmp(self.a, -1)
        if c > 0:
            return True
        if c < 0:
            return False
        return ecmp(self.b, -1) < 0

    def integrable_at_inf(self) -> bool:
        c = ecmp(self.a, -1)
        if c < 0:
            return True
        if c > 0:
            return False
        return ecmp(self.b, -1) < 0


def _limit_at_zero(asym: Asym) -> float:
    # t**a with a>0 vanishes at 0, a<0 blows up
    if asym.coef == 0.0:
        return 0.0
    c = ecmp(asym.a, 0)
    if c > 0:
        return 0.0
    if c < 0:
        return math.inf
    bc = ecmp(asym.b, 0)
    if bc > 0:
        return math.inf  # log(1/t)**b grows
    if bc < 0:
        return 0.0
    return asym.coef


def _limit_at_inf(asym: Asym) -> float:
    if asym.coef == 0.0:
        return 0.0
    c = ecmp(asym.a, 0)
    if c > 0:
        return math.inf
    if c < 0:
        return 0.0
    bc = ecmp(asym.b, 0)
    if bc > 0:
        return math.inf
    if bc < 0:
        return 0.0
    return asym.coef


def _dominant(terms: Sequence[Asym], at_zero: bool) -> Asym:
    terms = [t for t in terms if t.coef != 0.0]
    if not terms:
        return Asym(0.0)
    def key(t: Asym):
        return (float(t.a) if not at_zero else -float(t.a), float(t.b))
    best = max(terms, key=key)
    coef = sum(t.coef for t in terms
               if ecmp(t.a, best.a) == 0 and ecmp(t.b, best.b) == 0)
    return Asym(coef, best.a, best.b)


# ---------------------------------------------------------------------------
# SymFunc
# ---------------------------------------------------------------------------


class SymFunc:
    __slots__ = ("fn", "head", "tail", "knots", "step")

    def __init__(self, fn: Callable[[float], float], head: Asym, tail: Asym,
                 knots: Sequence[float] = (), step=None):
        self.fn = fn
        self.head = head
        self.tail = tail
        self.knots = tuple(sorted({float(k) for k in knots
                                   if 0.0 < k < math.inf}))
        # when the function wraps a StepFunction of closed-form pieces,
        # keep it so cumulative integrals can be computed exactly
        self.step = step

    def __call__(self, t: float) -> float:
        return self.fn(t)

    # -- constructors -----------------------------------------------------
    @staticmethod
    def power(coef: float, a: Exponent, b: Exponent = 0) -> "SymFunc":
        """coef * t**a * log(e+t)**b (head is a pure power, tail carries b)."""
        a = _as_exp(a)
        b = _as_exp(b)
        fa, fb, c = float(a), float(b), float(coef)

        def fn(t: float) -> float:
            return c * t ** fa * (math.log(math.e + t) ** fb if fb else 1.0)

        return SymFunc(fn, Asym(c, a, 0), Asym(c, a, b), (1.0,))

    @staticmethod
    def constant(c: float) -> "SymFunc":
        return SymFunc(lambda t: c, Asym(c), Asym(c))

    @staticmethod
    def from_step(sf: StepFunction) -> "SymFunc":
        first, last = sf.pieces[0], sf.pieces[-1]
        head_terms = []
        if first.offset:
            head_terms.append(Asym(first.offset))
        if first.coef:
            if first.shift < 0.0:
                head_terms.append(Asym(first((first.lo + min(first.hi, first.lo + 1)) / 2
                                             if first.lo > 0 else min(first.hi, 1.0) / 2)))
            else:
                head_terms.append(Asym(first.coef, first.a, 0))
        tail_terms = []
        if last.offset:
            tail_terms.append(Asym(last.offset))
        if last.coef:
            tail_terms.append(Asym(last.coef, last.a, last.b))
        return SymFunc(lambda t: sf(t), _dominant(head_terms, True),
                       _dominant(tail_terms, False),
                       [b for b in sf.breakpoints if b > 0.0], step=sf)

    # -- algebra ------------------------------------------------------------
    def mul(self, other: "SymFunc") -> "SymFunc":
        f, g = self.fn, other.fn
        return SymFunc(lambda t: f(t) * g(t), self.head.mul(other.head),
                       self.tail.mul(other.tail), self.knots + other.knots)

    def pow(self, e: Exponent) -> "SymFunc":
        f = self.fn
        fe = float(e)
        if fe == 0.0:
            return SymFunc.constant(1.0)

        def fn(t: float) -> float:
            v = f(t)
            if v == 0.0:
                return 0.0 if fe > 0 else math.inf
            if math.isinf(v):
                return math.inf if fe > 0 else 0.0
            return v ** fe

        step = None
        if self.step is not None:
            try:
                step = self.step.pow_compose(fe)
            except (NotImplementedError, ValueError):
                step = None
        return SymFunc(fn, self.head.pow(e), self.tail.pow(e), self.knots,
                       step=step)

    def add(self, other: "SymFunc") -> "SymFunc":
        f, g = self.fn, other.fn
        return SymFunc(lambda t: f(t) + g(t),
                       _dominant([self.head, other.head], True),
                       _dominant([self.tail, other.tail], False),
                       self.knots + other.knots)

    def scaled(self, k: float) -> "SymFunc":
        f = self.fn
        return SymFunc(lambda t: k * f(t),
                       Asym(k * self.head.coef, self.head.a, self.head.b),
                       Asym(k * self.tail.coef, self.tail.a, self.tail.b),
                       self.knots)

    def recip_arg(self) -> "SymFunc":
        """t -> f(1/t); swaps the roles of 0 and infinity."""
        f = self.fn
        head = Asym(self.tail.coef, eneg(self.tail.a), self.tail.b)
        tail = Asym(self.head.coef, eneg(self.head.a), self.head.b)
        return SymFunc(lambda t: f(1.0 / t), head, tail,
                       [1.0 / k for k in self.knots])

    # -- numeric helpers -----------------------------------------------------
    def _span(self) -> tuple[float, float]:
        lo = min(self.knots) if self.knots else 1.0
        hi = max(self.knots) if self.knots else 1.0
        return lo, hi

    def tabulated(self, n: int = 2048, pad: float = 1e8) -> "SymFunc":
        """Fast log-log interpolated copy (used inside nested quadratures)."""
        lo, hi = self._span()
        lo, hi = lo / pad, hi * pad
        ts = np.geomspace(lo, hi, n)
        vals = np.array([self.fn(float(t)) for t in ts])
        finite = np.isfinite(vals)
        if not finite.all():
            vals = np.where(finite, vals, np.nan)
        logt = np.log(ts)
        with np.errstate(divide="ignore"):
            logv = np.log(vals)
        f = self.fn

        def fn(t: float) -> float:
            if t <= lo or t >= hi:
                return f(t)
            lv = np.interp(math.log(t), logt, logv)
            if not math.isfinite(lv):
                return f(t)
            return math.exp(lv)

        return SymFunc(fn, self.head, self.tail, self.knots)

    # -- calculus ---------------------------------------------------------
    def integral(self) -> ExtReal:
        """integral over (0, inf) with symbolic endpoint certification."""
        if self.head.coef != 0.0 and not self.head.integrable_at_zero():
            return ExtReal.infinite(
                f"integrand ~ t**({self.head.a}) log**({self.head.b}) at 0")
        if self.tail.coef != 0.0 and not self.tail.integrable_at_inf():
            return ExtReal.infinite(
                f"integrand ~ t**({self.tail.a}) log**({self.tail.b}) at inf")
        return ExtReal.finite(_quad_0_inf(self.fn, self.knots))

    def antiderivative(self) -> "SymFunc":
        """U(t) = integral_0^t f; raises Divergence when U is identically inf."""
        if self.head.coef != 0.0 and not self.head.integrable_at_zero():
            raise Divergence(
                f"head ~ t**({self.head.a}) log**({self.head.b}) "
                "not integrable at 0")
        fn = _exact_cumulative(self.step, from_left=True)
        knots = self.knots if self.knots else (1.0,)
        if fn is None:
            cum = _cumulative_at(self.fn, knots)
            fn = _piecewise_cumulative(self.fn, knots, cum, from_left=True)
        # head asymptotics of U
        ha, hb, hc = self.head.a, self.head.b, self.head.coef
        if hc == 0.0:
            head = Asym(0.0)
        elif ecmp(ha, -1) > 0:
            head = Asym(hc / (float(ha) + 1.0), eadd(ha, 1), hb)
        else:  # a == -1, b < -1
            head = Asym(hc / (-(float(hb) + 1.0)), 0, eadd(hb, 1))
        # tail asymptotics of U
        if self.tail.coef == 0.0 or self.tail.integrable_at_inf():
            total = _quad_0_inf(self.fn, self.knots) \
                if (self.tail.coef == 0.0 or self.tail.integrable_at_inf()) else math.inf
            tail = Asym(total, 0, 0)
        elif ecmp(self.tail.a, -1) > 0:
            tail = Asym(self.tail.coef / (float(self.tail.a) + 1.0),
                        eadd(self.tail.a, 1), self.tail.b)
        else:  # a == -1, b >= -1
            if ecmp(self.tail.b, -1) == 0:
                raise Divergence("log-log growth tails are not supported")
            tail = Asym(self.tail.coef / (float(self.tail.b) + 1.0), 0,
                        eadd(self.tail.b, 1))
        return SymFunc(fn, head, tail, knots)

    def tail_integral(self) -> "SymFunc":
        """T(t) = integral_t^inf f; raises Divergence when identically inf."""
        if self.tail.coef != 0.0 and not self.tail.integrable_at_inf():
            raise Divergence(
                f"tail ~ t**({self.tail.a}) log**({self.tail.b}) "
                "not integrable at inf")
        fn = _exact_cumulative(self.step, from_left=False)
        knots = self.knots if self.knots else (1.0,)
        if fn is None:
            cum = _cumulative_at(self.fn, knots, from_right=True)
            fn = _piecewise_cumulative(self.fn, knots, cum, from_left=False)
        ta, tb, tc = self.tail.a, self.tail.b, self.tail.coef
        if tc == 0.0:
            tail = Asym(0.0)
        elif ecmp(ta, -1) < 0:
            tail = Asym(tc / (-(float(ta) + 1.0)), eadd(ta, 1), tb)
        else:  # a == -1, b < -1
            tail = Asym(tc / (-(float(tb) + 1.0)), 0, eadd(tb, 1))
        if self.head.coef == 0.0 or self.head.integrable_at_zero():
            head = Asym(_quad_0_inf(self.fn, self.knots), 0, 0)
        elif ecmp(self.head.a, -1) < 0:
            head = Asym(self.head.coef / (-(float(self.head.a) + 1.0)),
                        eadd(self.head.a, 1), self.head.b)
        else:
            if ecmp(self.head.b, -1) == 0:
                raise Divergence("log-log heads are not supported")
            head = Asym(self.head.coef / (-(float(self.head.b) + 1.0)), 0,
                        eadd(self.head.b, 1))
        return SymFunc(fn, head, tail, knots)

    def sup(self) -> ExtReal:
        """sup over (0, inf) with certified endpoint limits."""
        at0 = _limit_at_zero(self.head)
        atinf = _limit_at_inf(self.tail)
        if math.isinf(at0):
            return ExtReal.infinite(
                f"~ {self.head.coef:.3g} t**({self.head.a}) "
                f"log**({self.head.b}) unbounded at 0")
        if math.isinf(atinf):
            return ExtReal.infinite(
                f"~ {self.tail.coef:.3g} t**({self.tail.a}) "
                f"log**({self.tail.b}) unbounded at inf")
        lo, hi = self._span()
        ts = np.geomspace(lo / 1e8, hi * 1e8, 600)
        vals = [self.fn(float(t)) for t in ts]
        k = int(np.nanargmax(vals))
        best = vals[k]
        from scipy.optimize import minimize_scalar
        a = float(ts[max(k - 1, 0)])
        b = float(ts[min(k + 1, len(ts) - 1)])
        res = minimize_scalar(lambda t: -self.fn(t), bounds=(a, b),
                              method="bounded")
        best = max(best, -res.fun, at0, atinf)
        return ExtReal.finite(float(best))

    def running_sup_from(self) -> "SymFunc":
        """S(x) = sup over [x, inf) of f; requires a bounded tail limit."""
        atinf = _limit_at_inf(self.tail)
        if math.isinf(atinf):
            raise Divergence("running sup of a function unbounded at inf")
        lo, hi = self._span()
        ts = np.geomspace(lo / 1e8, hi * 1e8, 1200)
        vals = np.array([self.fn(float(t)) for t in ts])
        suffix = np.maximum.accumulate(np.maximum(vals, atinf)[::-1])[::-1]

        def fn(x: float) -> float:
            if x >= ts[-1]:
                return max(atinf, float(np.max(
                    [self.fn(float(u)) for u in np.geomspace(x, 10 * x, 16)])))
            i = int(np.searchsorted(ts, x, side="left"))
            return float(suffix[min(i, len(ts) - 1)])

        global_sup = float(max(np.max(vals), atinf))
        return SymFunc(fn, Asym(global_sup), Asym(max(atinf, float(vals[-1]))),
                       self.knots)


# ---------------------------------------------------------------------------
# quadrature backbone
# ---------------------------------------------------------------------------


def _gu(fn):
    """Exp-substituted integrand with under/overflow guards at the ends."""
    def g(u: float) -> float:
        try:
            t = math.exp(u)
        except OverflowError:
            return 0.0
        if t == 0.0 or math.isinf(t):
            return 0.0
        try:
            v = fn(t) * t
        except (OverflowError, ZeroDivisionError):
            return 0.0
        return v if math.isfinite(v) else 0.0
    return g


def _quad_0_inf(fn: Callable[[float], float], knots: Sequence[float]) -> float:
    """integral_0^inf fn with exp substitution at both ends, split at knots."""
    ks = sorted({float(k) for k in knots if 0.0 < k < math.inf})
    if not ks:
        ks = [1.0]
    total = 0.0
    # head: (0, ks[0]) via t = exp(u)
    u0 = math.log(ks[0])
    gu = _gu(fn)
    total += quad(gu, -np.inf, u0, limit=300)[0]
    for a, b in zip(ks, ks[1:]):
        total += quad(fn, a, b, limit=300)[0]
    total += quad(gu, math.log(ks[-1]), np.inf, limit=300)[0]
    return total


def _exact_cumulative(sf, from_left: bool):
    """Closed-form cumulative integral of a StepFunction whose pieces are
    pure monomials (no log factors); None when unavailable."""
    if sf is None or any(p.b != 0 for p in sf.pieces):
        return None
    pieces = sf.pieces
    los = [p.lo for p in pieces]
    if from_left:
        acc = [0.0]
        for p in pieces[:-1]:
            seg = p.integral(p.lo, p.hi)
            if not seg.is_finite:
                return None
            acc.append(acc[-1] + seg.value)

        def fn(t: float) -> float:
            i = bisect.bisect_right(los, t) - 1
            if i < 0:
                return 0.0
            part = pieces[i].integral(pieces[i].lo, t)
            return acc[i] + (part.value if part.is_finite else math.inf)

        return fn
    acc_r = [0.0]
    for p in reversed(pieces[1:]):
        seg = p.integral(p.lo, p.hi)
        if not seg.is_finite:
            return None
        acc_r.append(acc_r[-1] + seg.value)
    suffix = acc_r[::-1]  # suffix[i] = integral over pieces after i

    def fn(t: float) -> float:
        i = bisect.bisect_right(los, t) - 1
        if i < 0:
            i, t = 0, 0.0
        part = pieces[i].integral(t, pieces[i].hi)
        return suffix[i] + (part.value if part.is_finite else math.inf)

    return fn


def _cumulative_at(fn, knots, from_right: bool = False) -> list[float]:
    ks = list(knots)
    gu = _gu(fn)
    if not from_right:
        cum = [quad(gu, -np.inf, math.log(ks[0]), limit=300)[0]]
        for a, b in zip(ks, ks[1:]):
            cum.append(cum[-1] + quad(fn, a, b, limit=300)[0])
    else:
        cum = [quad(gu, math.log(ks[-1]), np.inf, limit=300)[0]]
        for a, b in reversed(list(zip(ks, ks[1:]))):
            cum.append(cum[-1] + quad(fn, a, b, limit=300)[0])
        cum.reverse()
    return cum


def _piecewise_cumulative(fn, knots, cum, from_left: bool):
    ks = list(knots)
    gu = _gu(fn)

    def seg(a: float, b: float) -> float:
        # exp substitution keeps wide ranges well conditioned
        if b > 8.0 * a:
            return quad(gu, math.log(a), math.log(b), limit=300)[0]
        return quad(fn, a, b, limit=300)[0]

    @functools.lru_cache(maxsize=100000)
    def value(t: float) -> float:
        if from_left:
            i = int(np.searchsorted(ks, t, side="right")) - 1
            if i < 0:
                if t <= 0.0:
                    return 0.0
                return quad(gu, -np.inf, math.log(t), limit=300)[0]
            return cum[i] + seg(ks[i], t)
        i = int(np.searchsorted(ks, t, side="left"))
        if i >= len(ks):
            return quad(gu, math.log(t), np.inf, limit=300)[0]
        return cum[i] + seg(t, ks[i])

    return value
