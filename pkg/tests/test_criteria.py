import math
from fractions import Fraction

import pytest

from fourierineq.criteria import (REGIME_DEG_P1, REGIME_DEG_QINF, REGIME_I,
                                  REGIME_II, REGIME_III, REGIME_IV, REGIME_V,
                                  ExponentConfig, U_func, classify, conjugate,
                                  dual_config, evaluate, xi_func)
from fourierineq.pieces import StepFunction, TailSpec
from fourierineq.weights import NONDECREASING, NONINCREASING, WeightSpec


def cfg(p, q):
    return ExponentConfig(p, q)


def test_conjugate():
    assert conjugate(2) == 2
    assert conjugate(Fraction(4, 3)) == 4
    assert conjugate(1) == math.inf
    assert conjugate(math.inf) == 1


def test_derived_exponents():
    c = cfg(Fraction(3, 2), Fraction(1, 2))
    assert c.p_prime == 3
    # 1/r = 1/q - 1/p
    assert c.r == Fraction(3, 4)
    c2 = cfg(math.inf, 1)
    assert c2.p_sharp == 2  # the p# convention at p = infinity


def test_classify_regimes():
    assert classify(cfg(2, math.inf)) == REGIME_DEG_QINF
    assert classify(cfg(1, 2)) == REGIME_DEG_P1
    assert classify(cfg(2, 2)) == REGIME_I
    assert classify(cfg(Fraction(3, 2), 2)) == REGIME_I
    assert classify(cfg(3, 2)) == REGIME_II
    assert classify(cfg(math.inf, 3)) == REGIME_II
    assert classify(cfg(3, Fraction(1, 2))) == REGIME_III
    assert classify(cfg(math.inf, 1)) == REGIME_IV
    assert classify(cfg(Fraction(3, 2), Fraction(1, 2))) == REGIME_V


def test_invalid_exponents():
    with pytest.raises(ValueError):
        ExponentConfig(Fraction(1, 2), 2)  # p < 1 is not allowed
    with pytest.raises(ValueError):
        ExponentConfig(2, 0)


def test_plancherel_pin():
    u = WeightSpec.one()
    v = WeightSpec.one(NONDECREASING)
    rep = evaluate(u, v, cfg(2, 2))
    assert rep.regime == REGIME_I
    c = rep.constants["C3"]
    assert c.is_finite and c.value == pytest.approx(1.0, abs=1e-12)
    assert rep.holds is True


def test_power_weight_balance():
    # u = |x|^{-1/4}, v = 1, p = 4/3, q = 2: balanced power weights
    u = WeightSpec.power(Fraction(1, 4), NONINCREASING)
    v = WeightSpec.one(NONDECREASING)
    rep = evaluate(u, v, cfg(Fraction(4, 3), 2))
    assert rep.regime == REGIME_I
    c = rep.constants["C3"]
    assert c.is_finite and c.value == pytest.approx(math.sqrt(2.0), rel=1e-9)
    assert rep.holds is True


def test_power_weight_unbalanced():
    # too much decay on u: U diverges at 0? no -- sup blows up at an endpoint
    u = WeightSpec.power(Fraction(3, 4), NONINCREASING)
    v = WeightSpec.one(NONDECREASING)
    rep = evaluate(u, v, cfg(Fraction(4, 3), 2))
    assert rep.holds is False


def test_degenerate_q_inf():
    u = WeightSpec.indicator(1.0)
    v = WeightSpec.one(NONDECREASING)
    rep = evaluate(u, v, cfg(1, math.inf))
    assert rep.regime == REGIME_DEG_QINF
    c = rep.constants["degenerate"]
    assert c.is_finite and c.value == pytest.approx(1.0, rel=1e-12)


def test_degenerate_p_one_divergent():
    # p = 1, q = 2: needs u in L^q; a non-integrable u^q fails
    u = WeightSpec.one()
    v = WeightSpec.one(NONDECREASING)
    rep = evaluate(u, v, cfg(1, 2))
    assert rep.regime == REGIME_DEG_P1
    assert rep.holds is False


def test_u_and_xi_functions():
    u = WeightSpec.one()
    c = cfg(2, 2)
    U = U_func(u, c)
    assert U(3.0) == pytest.approx(3.0, rel=1e-12)
    # for u = ind(1) in regime III, xi stays comparable to U
    u2 = WeightSpec.indicator(1.0)
    c2 = cfg(3, Fraction(1, 2))
    xi = xi_func(u2, c2)
    U2 = U_func(u2, c2)
    for t in [0.1, 0.5, 0.9]:
        assert xi(t) >= U2(t) - 1e-12   # xi = U + extra non-negative term
        assert xi(t) <= 10.0 * U2(t)


def test_governing_constant_monotone_in_u():
    # doubling u doubles the governing constant (homogeneity degree 1 in u)
    base = StepFunction.from_cells([0.0, 1.0], [1.0])
    u1 = WeightSpec.from_table(base, NONINCREASING)
    u2 = WeightSpec.from_table(base.scaled(2.0), NONINCREASING)
    v = WeightSpec.one(NONDECREASING)
    c = cfg(2, 2)
    c1 = evaluate(u1, v, c).governing
    c2 = evaluate(u2, v, c).governing
    assert c2.value == pytest.approx(2.0 * c1.value, rel=1e-9)


def test_regime_constants_finite_for_localized_u():
    u = WeightSpec.indicator(1.0)
    grow = StepFunction.from_cells([0.0, 1.0], [1.0, 1.0],
                                   tail=TailSpec.power(-1))
    v = WeightSpec.from_table(grow, NONDECREASING)
    for p, q, regime in [(3, 2, REGIME_II), (3, Fraction(1, 2), REGIME_III),
                         (math.inf, 1, REGIME_IV),
                         (Fraction(3, 2), Fraction(1, 2), REGIME_V)]:
        rep = evaluate(u, v, cfg(p, q))
        assert rep.regime == regime
        assert rep.holds is True, (p, q, rep.constants)
        assert rep.governing.is_finite


def test_dual_config_roundtrip():
    u = WeightSpec.power(Fraction(1, 4), NONINCREASING)
    v = WeightSpec.power(Fraction(1, 8), NONDECREASING)
    c = cfg(Fraction(4, 3), 2)
    du, dv, dc = dual_config(u, v, c)
    assert dc.p == 2 and dc.q == 4
    # dual weights swap roles and reciprocate: 1/v decays, 1/u grows
    assert du.direction == NONINCREASING
    assert dv.direction == NONDECREASING
    assert du.evaluate(2.0) == pytest.approx(1.0 / v.evaluate(2.0), rel=1e-12)
    assert dv.evaluate(2.0) == pytest.approx(1.0 / u.evaluate(2.0), rel=1e-12)


def test_report_json():
    u = WeightSpec.one()
    v = WeightSpec.one(NONDECREASING)
    rep = evaluate(u, v, cfg(2, 2))
    j = rep.to_json()
    assert j["regime"] == REGIME_I
    assert j["holds"] is True
    assert j["constants"]["C3"]["state"] == "finite"
