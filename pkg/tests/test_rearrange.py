import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fourierineq.pieces import StepFunction
from fourierineq.rearrange import (circ_profile, distribution, double_star,
                                   hl_pairing, lower_star, star)
from fourierineq.weights import NONDECREASING, NONINCREASING, WeightSpec

from conftest import measure_above, random_cells


@st.composite
def step_functions(draw):
    n = draw(st.integers(min_value=1, max_value=8))
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    rng = np.random.default_rng(seed)
    return random_cells(rng, max_cells=n)


@settings(max_examples=60, deadline=None)
@given(step_functions())
def test_star_equimeasurable(f):
    fs = star(f)
    levels = sorted({v for v in f.values if not math.isnan(v)})
    probes = list(levels)
    probes += [(a + b) / 2 for a, b in zip(levels, levels[1:])]
    probes += [0.0, max(levels) + 1.0]
    for lam in probes:
        assert abs(measure_above(f, lam)
                   - measure_above(fs, lam)) <= 1e-10


@settings(max_examples=60, deadline=None)
@given(step_functions())
def test_star_nonincreasing_and_idempotent(f):
    fs = star(f)
    assert fs.is_nonincreasing()
    fss = star(fs)
    assert fss.breakpoints == fs.breakpoints
    assert fss.values == fs.values


@settings(max_examples=40, deadline=None)
@given(step_functions())
def test_double_star_dominates_star(f):
    fs = star(f)
    fss = double_star(f)
    for t in [0.1, 0.5, 1.0, 2.0, 5.0, 9.0, 20.0]:
        assert fss(t) >= fs(t) - 1e-12


@settings(max_examples=40, deadline=None)
@given(step_functions(), step_functions())
def test_hl_pairing_upper_bound(f, g):
    # integral of f g over the common refinement never exceeds the pairing
    fr = f.refine(g.breakpoints)
    gr = g.refine(f.breakpoints)
    direct = (fr * gr).integrate()
    paired = hl_pairing(f, g)
    assert direct.is_finite and paired.is_finite
    assert direct.value <= paired.value + 1e-9 * (1.0 + paired.value)


def test_star_power_exact():
    # t^{-1/2} is already non-increasing: star is the identity
    f = StepFunction.power(1.0, Fraction(1, 2))
    fs = star(f)
    assert fs(4.0) == pytest.approx(0.5, rel=1e-14)


def test_star_increasing_unbounded():
    f = StepFunction.power(1.0, -1)  # grows like t
    fs = star(f)
    assert fs(1.0) == math.inf


def test_distribution_step():
    f = StepFunction.from_cells([0, 1, 3], [2.0, 1.0])
    m = distribution(f)
    assert m(0.5) == pytest.approx(3.0)   # |{f > 0.5}| = 3
    assert m(1.5) == pytest.approx(1.0)   # |{f > 1.5}| = 1
    assert m(2.5) == pytest.approx(0.0)


def test_double_star_exact_constant():
    f = StepFunction.from_cells([0, 1], [1.0])
    fss = double_star(f)
    # f** = 1 on (0,1], 1/t beyond
    assert fss(0.5) == pytest.approx(1.0)
    assert fss(2.0) == pytest.approx(0.5)


def test_circ_profile_dimension():
    w = WeightSpec.power(1, NONINCREASING, d=2)
    prof = circ_profile(w)
    assert prof(4.0) == pytest.approx(0.5, rel=1e-14)


def test_circ_profile_misdeclared():
    # a growing profile in the non-increasing slot rearranges to +inf
    w = WeightSpec.power(1, NONDECREASING)  # r^{+1}
    bad = WeightSpec("power", NONINCREASING, a=-1)  # also r^{+1}, declared dec
    prof = circ_profile(bad)
    assert prof(1.0) == math.inf
    assert w.is_monotone_valid()


def test_lower_star():
    w = WeightSpec.power(Fraction(1, 2), NONDECREASING)  # r^{1/2}, increasing
    ls = lower_star(w)
    assert ls(4.0) == pytest.approx(2.0, rel=1e-14)
    # decreasing profile in the non-decreasing slot collapses to 0
    bad = WeightSpec("power", NONDECREASING, a=-1)  # r^{-1} declared inc
    ls2 = lower_star(bad)
    assert ls2(1.0) == 0.0


def test_hl_pairing_exact_constants():
    f = StepFunction.from_cells([0, 1], [5.0])
    g = StepFunction.from_cells([0, 1], [6.0])
    r = hl_pairing(f, g)
    assert r.is_finite and r.value == pytest.approx(30.0, abs=1e-12)
