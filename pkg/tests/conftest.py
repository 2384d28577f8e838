import math

import numpy as np
import pytest

from fourierineq.pieces import StepFunction, TailSpec


def random_cells(rng: np.random.Generator, max_cells: int = 12,
                 allow_ties: bool = True) -> StepFunction:
    """A random compact non-negative step function on (0, inf)."""
    n = int(rng.integers(1, max_cells + 1))
    edges = np.unique(rng.uniform(0.0, 10.0, size=n + 1))
    while len(edges) < 2:
        edges = np.unique(rng.uniform(0.0, 10.0, size=n + 1))
    edges[0] = 0.0
    vals = rng.uniform(0.0, 5.0, size=len(edges) - 1)
    if allow_ties and len(vals) > 2 and rng.random() < 0.5:
        vals[1] = vals[0]
    return StepFunction.from_cells(edges.tolist(), vals.tolist())


def measure_above(f: StepFunction, lam: float) -> float:
    """|{f > lam}| for compact step data, exact up to fsum rounding."""
    widths = []
    for p in f.pieces:
        if not p.is_constant:
            raise AssertionError("helper expects constant cells")
        if math.isfinite(p.hi) and p.const_value > lam:
            widths.append(p.hi - p.lo)
        elif not math.isfinite(p.hi) and p.const_value > lam:
            return math.inf
    return math.fsum(widths)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
