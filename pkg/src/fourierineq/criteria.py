"""Rearrangement criteria for the weighted transform-norm inequality

    || u * Ff ||_q  <=  C * || f * v ||_p

with u radial non-increasing and v radial non-decreasing.  The governing
quantities are built from the half-line rearrangements u* (non-increasing)
and v_* (non-decreasing):

    U(t)   = integral_0^t u*(s)**q ds
    V(t)   = integral_0^t v_*(s)**p ds
    xi(t)  = U(t) + t**(q/2) * (integral_t^inf u*(s)**qs ds)**(q/qs)

where qs = 2q/(2-q) for q < 2 and ps = 2p/(p-2) for p > 2.  Five exponent
regimes carry different equivalent constants (C3 sup-form for p <= q, C4
integral form, and corrections C6/C7/C9 below two); q = infinity and p = 1
degenerate to the product constant ||u||_q * ||1/v||_{p'}, which is sharp
there.  Finiteness of every constant is certified symbolically; values are
computed by certified quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Union

from .extreal import ExtReal
from .pieces import StepFunction
from .rearrange import circ_profile, lower_star
from .symfunc import Asym, Divergence, SymFunc, ecmp
from .weights import WeightSpec, NONINCREASING, NONDECREASING

Exp = Union[Fraction, float]  # math.inf marks an infinite exponent

REGIME_DEG_QINF = "degenerate-q-infinity"
REGIME_DEG_P1 = "degenerate-p-one"
REGIME_I = "I"
REGIME_II = "II"
REGIME_III = "III"
REGIME_IV = "IV"
REGIME_V = "V"


def _exp(x) -> Exp:
    if isinstance(x, str):
        if x in ("inf", "infinity", "oo"):
            return math.inf
        return Fraction(x)
    if isinstance(x, float) and math.isinf(x):
        return math.inf
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12) \
            if float(Fraction(x).limit_denominator(10**12)) == x else Fraction(x)
    raise TypeError(f"bad exponent {x!r}")


def _is_inf(x: Exp) -> bool:
    return isinstance(x, float) and math.isinf(x)


def conjugate(p: Exp) -> Exp:
    """Hoelder conjugate: 1/p + 1/p' = 1 (1 <-> inf)."""
    if _is_inf(p):
        return Fraction(1)
    if p == 1:
        return math.inf
    return p / (p - 1)


@dataclass(frozen=True)
class ExponentConfig:
    """Exponent pair (p, q) with ambient dimension d.

    Exponents are exact rationals (or inf); regime boundaries are decided
    exactly.  Requires p >= 1 and q > 0.
    """

    p: Exp
    q: Exp
    d: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", _exp(self.p))
        object.__setattr__(self, "q", _exp(self.q))
        if not _is_inf(self.p) and self.p < 1:
            raise ValueError("p < 1 is not supported")
        if not _is_inf(self.q) and self.q <= 0:
            raise ValueError("q must be positive")
        if self.d < 1:
            raise ValueError("d must be a positive integer")

    # -- derived exponents ----------------------------------------------
    @property
    def p_prime(self) -> Exp:
        return conjugate(self.p)

    @property
    def q_prime(self) -> Exp:
        if not _is_inf(self.q) and self.q < 1:
            raise ValueError("conjugate undefined for q < 1")
        return conjugate(self.q)

    @property
    def r(self) -> Exp:
        """1/r = 1/q - 1/p, defined for q < p."""
        if _is_inf(self.q) or (not _is_inf(self.p) and self.q >= self.p):
            raise ValueError("r is defined only for q < p")
        if _is_inf(self.p):
            return self.q
        return 1 / (1 / self.q - 1 / self.p)

    @property
    def q_sharp(self) -> Exp:
        """1/q# = |1/2 - 1/q|; infinite exactly at q = 2."""
        if _is_inf(self.q):
            return Fraction(2)
        if self.q == 2:
            return math.inf
        if self.q < 2:
            return 2 * self.q / (2 - self.q)
        return 2 * self.q / (self.q - 2)

    @property
    def p_sharp(self) -> Exp:
        if _is_inf(self.p):
            return Fraction(2)
        if self.p == 2:
            return math.inf
        if self.p < 2:
            return 2 * self.p / (2 - self.p)
        return 2 * self.p / (self.p - 2)

    def to_json(self) -> dict[str, Any]:
        fmt = lambda x: "inf" if _is_inf(x) else str(x)
        return {"p": fmt(self.p), "q": fmt(self.q), "d": self.d}


def classify(cfg: ExponentConfig) -> str:
    """Exponent regime; boundary cases are decided exactly.

    The overlap q < 1 < 2 < p < inf is classified as III (the correction
    term there is the v-side one).
    """
    p, q = cfg.p, cfg.q
    if _is_inf(q):
        return REGIME_DEG_QINF
    if p == 1:
        return REGIME_DEG_P1
    if _is_inf(p):
        if q >= 2:
            return REGIME_II
        return REGIME_IV
    if p <= q:
        return REGIME_I
    # q < p from here on
    if q >= 1 and (q >= 2 or cfg.p_prime >= 2):
        return REGIME_II
    if q < 2 and p > 2:
        return REGIME_III
    # remaining: q < 1 and p <= 2
    return REGIME_V


# ---------------------------------------------------------------------------
# building blocks
# ---------------------------------------------------------------------------


def _ustar_sym(u: WeightSpec, cfg: ExponentConfig, power: Exp) -> SymFunc:
    """u*(t)**power as a SymFunc; raises Divergence when u* is identically inf."""
    prof = circ_profile(u)
    if any(math.isinf(p.offset) for p in prof.pieces):
        raise Divergence("u* is identically infinite (u is not dominated by "
                         "a non-increasing radial weight)")
    return SymFunc.from_step(prof.pow_compose(power))


def _vstar_sym(v: WeightSpec, cfg: ExponentConfig, power: Exp) -> SymFunc:
    """v_*(t)**power (power is typically negative); Divergence when v_* = 0."""
    prof = lower_star(v)
    if prof.essential_sup().is_finite and prof.essential_sup().value == 0.0:
        raise Divergence("v_* vanishes identically (v is not bounded below "
                         "by a positive non-decreasing radial weight)")
    return SymFunc.from_step(prof.pow_compose(power))


def U_func(u: WeightSpec, cfg: ExponentConfig) -> SymFunc:
    """U(t) = integral_0^t u*(s)**q ds; raises Divergence when U = inf."""
    return _ustar_sym(u, cfg, cfg.q).antiderivative()


def xi_func(u: WeightSpec, cfg: ExponentConfig) -> SymFunc:
    """xi(t) = U(t) + t**(q/2) (int_t^inf u*(s)**qs ds)**(q/qs), q < 2."""
    q = cfg.q
    if _is_inf(q) or q >= 2:
        raise ValueError("xi is defined for q < 2")
    qs = cfg.q_sharp
    U = U_func(u, cfg)
    tail = _ustar_sym(u, cfg, qs).tail_integral()  # Divergence if infinite
    bump = SymFunc.power(1.0, q / 2).mul(tail.pow(q / qs))
    return U.add(bump)


def _w_inner_weight(u: WeightSpec, cfg: ExponentConfig) -> SymFunc:
    """w(t) = u*(t)**q U(t)**(qs/2) xi(t)**(-qs/2) t**(-q/2)."""
    q, qs = cfg.q, cfg.q_sharp
    uq = _ustar_sym(u, cfg, q)
    U = U_func(u, cfg)
    xi = xi_func(u, cfg)
    return (uq.mul(U.pow(qs / 2)).mul(xi.pow(-qs / 2))
            .mul(SymFunc.power(1.0, -q / 2)))


def _W_func(v: WeightSpec, cfg: ExponentConfig) -> SymFunc:
    """W(s) = integral_0^{1/s} v_*(t)**(-p') dt.

    For p = 1 the inner quantity is read as the sup-norm of 1/v_* on
    (0, 1/s), which equals the (constant) limit of 1/v_* at 0+ because v_*
    is non-decreasing; divergence of that limit raises.
    """
    if cfg.p == 1:
        prof = lower_star(v)
        lim = prof.pieces[0].limit_at(0.0)
        if lim == 0.0:
            raise Divergence("1/v_* is unbounded near 0 (p' = inf sup-norm)")
        return SymFunc.constant(1.0 / lim)
    pp = cfg.p_prime
    return _vstar_sym(v, cfg, -pp).antiderivative().recip_arg()


# ---------------------------------------------------------------------------
# constants
# ---------------------------------------------------------------------------


def _guarded(compute):
    try:
        return compute()
    except Divergence as exc:
        return ExtReal.infinite(exc.reason)


def C3(u: WeightSpec, v: WeightSpec, cfg: ExponentConfig) -> ExtReal:
    """sup_s U(s)**(1/q) (int_0^{1/s} v_***(-p'))**(1/p'), for p <= q."""
    def compute() -> ExtReal:
        q = cfg.q
        U = U_func(u, cfg)
        W = _W_func(v, cfg)
        lhs = U.pow(1 / q)
        rhs = W if cfg.p == 1 else W.pow(1 / cfg.p_prime)
        return lhs.mul(rhs).sup()
    return _guarded(compute)


def C4(u: WeightSpec, v: WeightSpec, cfg: ExponentConfig) -> ExtReal:
    """Integral-form constant for q < p:

    ( int u*(s)**q U(s)**(r/p) (int_0^{1/s} v_***(-p'))**(r/p') ds )**(1/r).
    """
    def compute() -> ExtReal:
        q, r = cfg.q, cfg.r
        uq = _ustar_sym(u, cfg, q)
        U = U_func(u, cfg)
        W = _W_func(v, cfg)
        integrand = uq
        if not _is_inf(cfg.p):
            integrand = integrand.mul(U.pow(r / cfg.p))
        wfac = W if cfg.p == 1 else W.pow(r / cfg.p_prime)
        integrand = integrand.mul(wfac)
        return integrand.integral().powf(1.0 / float(r))
    return _guarded(compute)


def C6(u: WeightSpec, v: WeightSpec, cfg: ExponentConfig) -> ExtReal:
    """v-side correction for q < 2 < p < inf (regime III)."""
    def compute() -> ExtReal:
        r, ps, p = cfg.r, cfg.p_sharp, cfg.p
        w = _w_inner_weight(u, cfg).tabulated()
        Tw = w.tail_integral()
        vst = lower_star(v)
        vsym_pow = SymFunc.from_step(vst.pow_compose(ps * (p - 2) / 2))
        V = _vstar_sym(v, cfg, p).antiderivative()
        g = (SymFunc.power(1.0, ps / 2).mul(vsym_pow)
             .mul(V.tabulated().pow(-ps / 2)))
        inner2 = g.tail_integral().recip_arg()
        integrand = w.mul(Tw.tabulated().pow(r / p)).mul(
            inner2.tabulated().pow(r / ps))
        return integrand.integral().powf(1.0 / float(r))
    return _guarded(compute)


def C7(u: WeightSpec, v: WeightSpec, cfg: ExponentConfig) -> ExtReal:
    """Constant for q < 2, p = inf (regime IV):

    ( int w(t) ( int_0^t ( int_0^{1/r} v_***(-1) )**2 dr )**(q/2) dt )**(1/q).
    """
    def compute() -> ExtReal:
        q = cfg.q
        w = _w_inner_weight(u, cfg).tabulated()
        A1 = _vstar_sym(v, cfg, -1).antiderivative()
        inner = A1.recip_arg().tabulated()
        G = inner.pow(2).antiderivative()
        integrand = w.mul(G.tabulated().pow(q / 2))
        return integrand.integral().powf(1.0 / float(q))
    return _guarded(compute)


def C9(u: WeightSpec, v: WeightSpec, cfg: ExponentConfig) -> ExtReal:
    """u-side correction for q < 1 <= p <= 2 (regime V):

    ( int w(t) (int_t^inf w)**(r/p) sup_{y >= 1/t} y**(r/2) V(y)**(-r/p) dt
    )**(1/r).
    """
    def compute() -> ExtReal:
        r, p = cfg.r, cfg.p
        w = _w_inner_weight(u, cfg).tabulated()
        Tw = w.tail_integral()
        V = _vstar_sym(v, cfg, p).antiderivative()
        h = SymFunc.power(1.0, r / 2).mul(V.tabulated().pow(-r / p))
        S = h.running_sup_from().recip_arg()
        integrand = w.mul(Tw.tabulated().pow(r / p)).mul(S)
        return integrand.integral().powf(1.0 / float(r))
    return _guarded(compute)


def degenerate_constant(u: WeightSpec, v: WeightSpec,
                        cfg: ExponentConfig) -> ExtReal:
    """||u||_q * ||1/v||_{p'} (always an upper bound; sharp for q = inf or
    p = 1), computed in ball-measure half-line coordinates."""
    def compute() -> ExtReal:
        prof_u = circ_profile(u)
        if any(math.isinf(pc.offset) for pc in prof_u.pieces):
            raise Divergence("u* identically infinite")
        if _is_inf(cfg.q):
            unorm = prof_u.essential_sup()
        else:
            unorm = SymFunc.from_step(
                prof_u.pow_compose(cfg.q)).integral().powf(
                    1.0 / float(cfg.q))
        if cfg.p == 1:
            lim = lower_star(v).pieces[0].limit_at(0.0)
            vnorm = (ExtReal.infinite("1/v_* unbounded near 0")
                     if lim == 0.0 else ExtReal.finite(1.0 / lim))
        else:
            vnorm = _vstar_sym(v, cfg, -cfg.p_prime).integral().powf(
                1.0 / float(cfg.p_prime))
        return unorm * vnorm
    return _guarded(compute)


def qsharp_tail_finite(u: WeightSpec, cfg: ExponentConfig) -> ExtReal:
    """integral_1^inf u*(s)**qs ds (must be finite in regimes III/IV/V)."""
    try:
        f = _ustar_sym(u, cfg, cfg.q_sharp)
    except Divergence as exc:
        return ExtReal.infinite(exc.reason)
    if f.tail.coef != 0.0 and not f.tail.integrable_at_inf():
        return ExtReal.infinite(
            f"u*^qs ~ t**({f.tail.a}) log**({f.tail.b}) at inf")
    import scipy.integrate as si
    knots = [k for k in f.knots if k > 1.0] or [2.0]
    val = si.quad(lambda t: f(t), 1.0, knots[-1], limit=200)[0]
    val += si.quad(lambda x: f(math.exp(x)) * math.exp(x),
                   math.log(knots[-1]), math.inf, limit=200)[0]
    return ExtReal.finite(val)


# ---------------------------------------------------------------------------
# report / evaluation
# ---------------------------------------------------------------------------


@dataclass
class CriterionReport:
    regime: str
    config: ExponentConfig
    u: WeightSpec
    v: WeightSpec
    constants: dict[str, ExtReal] = field(default_factory=dict)
    holds: Optional[bool] = None
    notes: list[str] = field(default_factory=list)

    @property
    def governing(self) -> ExtReal:
        """The constant equivalent to the optimal C in this regime."""
        order = {REGIME_DEG_QINF: ["degenerate"],
                 REGIME_DEG_P1: ["degenerate"],
                 REGIME_I: ["C3"], REGIME_II: ["C4"],
                 REGIME_III: ["C5"], REGIME_IV: ["C7"],
                 REGIME_V: ["C8"]}[self.regime]
        return self.constants[order[0]]

    def to_json(self) -> dict[str, Any]:
        return {
            "regime": self.regime,
            "config": self.config.to_json(),
            "u": self.u.format(),
            "v": self.v.format(),
            "constants": {k: c.to_json() for k, c in self.constants.items()},
            "holds": self.holds,
            "notes": self.notes,
        }


def evaluate(u: WeightSpec, v: WeightSpec, cfg: ExponentConfig) -> CriterionReport:
    """Classify the exponent pair and evaluate the governing constants."""
    regime = classify(cfg)
    rep = CriterionReport(regime, cfg, u, v)
    cs = rep.constants
    if regime in (REGIME_DEG_QINF, REGIME_DEG_P1):
        cs["degenerate"] = degenerate_constant(u, v, cfg)
        rep.holds = cs["degenerate"].is_finite
        rep.notes.append("product constant ||u||_q ||1/v||_{p'} is sharp here")
        return rep
    if regime == REGIME_I:
        cs["C3"] = C3(u, v, cfg)
        rep.holds = cs["C3"].is_finite
        return rep
    if regime == REGIME_II:
        cs["C4"] = C4(u, v, cfg)
        rep.holds = cs["C4"].is_finite
        return rep
    # regimes III / IV / V require the q#-tail condition
    tail = qsharp_tail_finite(u, cfg)
    cs["qsharp_tail"] = tail
    if tail.is_infinite:
        rep.holds = False
        rep.notes.append("necessary tail condition fails: "
                         "integral_1^inf u*^{q#} diverges")
        key = {REGIME_III: "C5", REGIME_IV: "C7", REGIME_V: "C8"}[regime]
        cs[key] = ExtReal.infinite("q#-tail condition fails")
        return rep
    if regime == REGIME_IV:
        cs["C7"] = C7(u, v, cfg)
        rep.holds = cs["C7"].is_finite
        return rep
    c4 = C4(u, v, cfg)
    cs["C4"] = c4
    if regime == REGIME_III:
        c6 = C6(u, v, cfg)
        cs["C6"] = c6
        cs["C5"] = c4 + c6
        rep.holds = cs["C5"].is_finite
    else:
        c9 = C9(u, v, cfg)
        cs["C9"] = c9
        cs["C8"] = c4 + c9
        rep.holds = cs["C8"].is_finite
    return rep


def dual_config(u: WeightSpec, v: WeightSpec, cfg: ExponentConfig
                ) -> tuple[WeightSpec, WeightSpec, ExponentConfig]:
    """The dual problem: (u, v, p, q) -> (1/v, 1/u, q', p').

    The inequality with data (u, v, p, q) holds iff the dual one does, with
    the same constant.  Requires 1 <= p, q <= inf.
    """
    if not _is_inf(cfg.q) and cfg.q < 1:
        raise ValueError("duality requires q >= 1")
    new_cfg = ExponentConfig(cfg.q_prime, cfg.p_prime, cfg.d)
    return (_reciprocal_weight(v, NONINCREASING),
            _reciprocal_weight(u, NONDECREASING), new_cfg)


def _reciprocal_weight(w: WeightSpec, new_direction: str) -> WeightSpec:
    if w.family == "one":
        return WeightSpec.one(new_direction, w.d)
    if w.family == "power":
        return WeightSpec.power(w.a, new_direction, w.d)
    if w.family == "powerlog":
        return WeightSpec.powerlog(w.a, w.b, new_direction, w.d)
    if w.family == "table":
        from .weights import _recip
        return WeightSpec.from_table(_recip(w.table), new_direction, w.d)
    raise ValueError("indicator weights have no reciprocal weight "
                     "(they vanish on a set of positive measure)")
