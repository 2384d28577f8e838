"""Hardy-type inequality constants, forward and reverse.

Four problem kinds:

    head_sum       discrete:  (sum_n u_n (sum_{j>=n} x_j)**qq)**(1/qq)
                              <= K (sum_n v_n x_n**pp)**(1/pp),  qq < pp
    head_integral  continuous, inner integral_0^x g
    tail_integral  continuous, inner integral_x^inf g
    reverse        (int f**qq w)**(1/qq) <= K sup_x (nu(x)/x) int_0^x f
                   over non-increasing f, 0 < qq < 1

hardy_K evaluates the classical equivalent constant for each kind (sup form
when qq >= pp, integral form when qq < pp; the discrete pp <= 1 case uses
the inf form).  brute_force_K searches for near-extremal inputs by
multiplicative coordinate ascent from random restarts and returns a genuine
lower bound on the optimal constant, so formula and search bracket the true
constant from both sides up to the equivalence factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .extreal import ExtReal
from .pieces import StepFunction
from .symfunc import Divergence, SymFunc

HEAD_SUM = "head_sum"
HEAD_INTEGRAL = "head_integral"
TAIL_INTEGRAL = "tail_integral"
REVERSE = "reverse"


@dataclass
class HardyProblem:
    kind: str
    pp: float  # exponent on the right-hand side
    qq: float  # exponent on the left-hand side
    # discrete data
    u_seq: Optional[np.ndarray] = None
    v_seq: Optional[np.ndarray] = None
    # continuous data
    u_w: Optional[StepFunction] = None
    v_w: Optional[StepFunction] = None
    # reverse data: weight w and the non-decreasing nu with nu(t)/t
    # non-increasing
    w: Optional[StepFunction] = None
    nu: Optional[StepFunction] = None

    def __post_init__(self) -> None:
        if self.kind not in (HEAD_SUM, HEAD_INTEGRAL, TAIL_INTEGRAL, REVERSE):
            raise ValueError(f"unknown Hardy problem kind {self.kind!r}")
        if self.kind == HEAD_SUM:
            if self.u_seq is None or self.v_seq is None:
                raise ValueError("discrete problems need u_seq and v_seq")
            if not self.qq < self.pp:
                raise ValueError("the discrete form requires qq < pp")
        elif self.kind == REVERSE:
            if not 0 < self.qq < 1:
                raise ValueError("reverse form requires 0 < qq < 1")
            if self.w is None or self.nu is None:
                raise ValueError("reverse problems need w and nu")
        else:
            if self.u_w is None or self.v_w is None:
                raise ValueError("continuous problems need u_w and v_w")
            if self.pp <= 1:
                raise ValueError("continuous forms require pp > 1")

    @property
    def rr(self) -> float:
        return 1.0 / (1.0 / self.qq - 1.0 / self.pp)


# ---------------------------------------------------------------------------
# equivalent constants
# ---------------------------------------------------------------------------


def hardy_K(prob: HardyProblem) -> ExtReal:
    if prob.kind == HEAD_SUM:
        return _discrete_K(prob)
    if prob.kind == REVERSE:
        return reverse_hardy_K(prob)
    return _continuous_K(prob)


def _discrete_K(prob: HardyProblem) -> ExtReal:
    u = np.asarray(prob.u_seq, dtype=float)
    v = np.asarray(prob.v_seq, dtype=float)
    n = len(u)
    v = v[:n] if len(v) >= n else np.pad(v, (0, n - len(v)),
                                         constant_values=np.inf)
    pp, rr = prob.pp, prob.rr
    Ucum = np.cumsum(u)
    if pp <= 1:
        vtail = np.minimum.accumulate(v[::-1])[::-1]  # inf_{j>=n} v_j
        if np.any((u > 0) & (vtail == 0.0)):
            return ExtReal.infinite("inf_{j>=n} v_j vanishes where u_n > 0")
        terms = u * Ucum ** (rr / pp) * vtail ** (-rr / pp)
    else:
        e = 1.0 / (1.0 - pp)
        with np.errstate(divide="ignore"):
            ve = np.where(v > 0, v ** e, np.inf)
        if np.any(np.isinf(ve) & (u > 0)):
            return ExtReal.infinite("v_n vanishes where u_n > 0")
        vtail = np.cumsum(ve[::-1])[::-1]
        terms = u * Ucum ** (rr / pp) * vtail ** (rr / _conj(pp))
    return ExtReal.finite(float(np.sum(terms)) ** (1.0 / rr))


def _conj(p: float) -> float:
    return math.inf if p == 1 else p / (p - 1.0)


def _continuous_K(prob: HardyProblem) -> ExtReal:
    pp, qq = prob.pp, prob.qq
    e = 1.0 / (1.0 - pp)  # negative for pp > 1
    try:
        usym = SymFunc.from_step(prob.u_w)
        vsym = SymFunc.from_step(prob.v_w.pow_compose(e))
        if prob.kind == HEAD_INTEGRAL:
            # conditions pair int_x^inf u with int_0^x v**e
            ufac = usym.tail_integral()
            vfac = vsym.antiderivative()
        else:
            ufac = usym.antiderivative()
            vfac = vsym.tail_integral()
        if qq >= pp:
            return ufac.pow(1.0 / qq).mul(vfac.pow(1.0 / _conj(pp))).sup()
        rr = prob.rr
        integrand = usym.mul(ufac.pow(rr / pp)).mul(vfac.pow(rr / _conj(pp)))
        return integrand.integral().powf(1.0 / rr)
    except Divergence as exc:
        return ExtReal.infinite(exc.reason)


def reverse_hardy_K(prob: HardyProblem) -> ExtReal:
    """Reverse Hardy constant for non-increasing functions (0 < qq < 1):

    xi(t) = t**qq (int_t^inf s**(-1/(1-qq)) W(s)**(1/(1-qq)) ds)**(1-qq),
    K     = (int nu**(-qq) xi**(-qq/(1-qq)) W**(qq/(1-qq)) w dt)**(1/qq),

    where W(x) = int_0^x w; finite iff xi is finite and the integral
    converges."""
    qq = prob.qq
    try:
        wsym = SymFunc.from_step(prob.w)
        W = wsym.antiderivative()
        inner = SymFunc.power(1.0, -1.0 / (1.0 - qq)).mul(
            W.pow(1.0 / (1.0 - qq)))
        xi = SymFunc.power(1.0, qq).mul(
            inner.tail_integral().pow(1.0 - qq))
        nu_sym = SymFunc.from_step(prob.nu)
        integrand = (nu_sym.pow(-qq).mul(xi.pow(-qq / (1.0 - qq)))
                     .mul(W.pow(qq / (1.0 - qq))).mul(wsym))
        return integrand.integral().powf(1.0 / qq)
    except Divergence as exc:
        return ExtReal.infinite(exc.reason)


# ---------------------------------------------------------------------------
# brute-force extremal search (certified lower bound on the true constant)
# ---------------------------------------------------------------------------


def brute_force_K(prob: HardyProblem, rng: np.random.Generator,
                  n_restarts: int = 32, n_cells: int = 24,
                  n_sweeps: int = 30) -> float:
    """Best ratio LHS/RHS found by coordinate ascent over test inputs."""
    if prob.kind == HEAD_SUM:
        ratio = _discrete_ratio_fn(prob)
        dim = len(prob.u_seq)
    elif prob.kind == REVERSE:
        ratio, dim = _reverse_ratio_fn(prob, n_cells)
    else:
        ratio, dim = _continuous_ratio_fn(prob, n_cells)
    best = 0.0
    for _ in range(n_restarts):
        x = rng.lognormal(0.0, 1.0, size=dim)
        cur = ratio(x)
        for _ in range(n_sweeps):
            improved = False
            for i in range(dim):
                for fac in (4.0, 0.25, 1.5, 1 / 1.5):
                    y = x.copy()
                    y[i] *= fac
                    val = ratio(y)
                    if val > cur * (1 + 1e-12):
                        x, cur = y, val
                        improved = True
            if not improved:
                break
        best = max(best, cur)
    return best


def _discrete_ratio_fn(prob: HardyProblem):
    u = np.asarray(prob.u_seq, dtype=float)
    v = np.asarray(prob.v_seq, dtype=float)[:len(u)]
    pp, qq = prob.pp, prob.qq

    def ratio(x: np.ndarray) -> float:
        tails = np.cumsum(x[::-1])[::-1]
        lhs = float(np.sum(u * tails ** qq)) ** (1.0 / qq)
        rhs = float(np.sum(v * x ** pp)) ** (1.0 / pp)
        return lhs / rhs if rhs > 0 else 0.0

    return ratio


def _grid_for(*steps: StepFunction, n_cells: int) -> np.ndarray:
    knots = sorted({k for s in steps for k in s.breakpoints if k > 0})
    lo = (knots[0] if knots else 1.0) / 100.0
    hi = (knots[-1] if knots else 1.0) * 100.0
    return np.geomspace(lo, hi, n_cells + 1)


def _continuous_ratio_fn(prob: HardyProblem, n_cells: int):
    pp, qq = prob.pp, prob.qq
    edges = _grid_for(prob.u_w, prob.v_w, n_cells=n_cells)
    # dense evaluation grid: refine each cell
    dense = np.unique(np.concatenate(
        [np.linspace(a, b, 9) for a, b in zip(edges, edges[1:])]))
    mids = 0.5 * (dense[:-1] + dense[1:])
    widths = np.diff(dense)
    uvals = np.array([prob.u_w(float(t)) for t in mids])
    vvals = np.array([prob.v_w(float(t)) for t in mids])
    cell_of = np.searchsorted(edges, mids, side="right") - 1
    cell_of = np.clip(cell_of, 0, n_cells - 1)

    def ratio(x: np.ndarray) -> float:
        g = x[cell_of]
        masses = g * widths
        if prob.kind == HEAD_INTEGRAL:
            inner = np.cumsum(masses) - 0.5 * masses
        else:
            inner = np.cumsum(masses[::-1])[::-1] - 0.5 * masses
        lhs = float(np.sum(uvals * inner ** qq * widths)) ** (1.0 / qq)
        rhs = float(np.sum(vvals * g ** pp * widths)) ** (1.0 / pp)
        return lhs / rhs if rhs > 0 else 0.0

    return ratio, n_cells


def _reverse_ratio_fn(prob: HardyProblem, n_cells: int):
    qq = prob.qq
    edges = _grid_for(prob.w, prob.nu, n_cells=n_cells)
    dense = np.unique(np.concatenate(
        [np.linspace(a, b, 9) for a, b in zip(edges, edges[1:])]))
    mids = 0.5 * (dense[:-1] + dense[1:])
    widths = np.diff(dense)
    wvals = np.array([prob.w(float(t)) for t in mids])
    nuvals = np.array([prob.nu(float(t)) for t in mids])
    cell_of = np.clip(np.searchsorted(edges, mids, side="right") - 1,
                      0, n_cells - 1)

    def ratio(x: np.ndarray) -> float:
        # enforce a non-increasing test function
        lev = np.maximum.accumulate(x[::-1])[::-1]
        f = lev[cell_of]
        lhs = float(np.sum(wvals * f ** qq * widths)) ** (1.0 / qq)
        cums = np.cumsum(f * widths) - 0.5 * f * widths
        rhs = float(np.max(nuvals / mids * cums))
        return lhs / rhs if rhs > 0 else 0.0

    return ratio, n_cells
