import math

import numpy as np
import pytest
from hypothesis import strategies as st

from sizedist.size_space import IntervalSamples, from_graph, from_interval_samples, sample_function

CRIT = (0.0, math.pi / 4, math.pi / 2, 3 * math.pi / 4, math.pi)

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def sin_samples(n=5):
    return sample_function(np.sin, n, include=CRIT)


def two_sin2_samples(n=5):
    return sample_function(lambda t: 2 * np.sin(2 * t), n, include=CRIT)


@pytest.fixture
def sin_pair():
    return from_interval_samples(sin_samples(), "sin t")


@pytest.fixture
def two_sin2_pair():
    return from_interval_samples(two_sin2_samples(), "2 sin 2t")


def random_graph(rng, max_vertices=12, integer_values=None):
    """Random vertex-weighted graph; integer values produce ties."""
    n = int(rng.integers(1, max_vertices + 1))
    if integer_values is None:
        integer_values = rng.random() < 0.5
    if integer_values:
        values = rng.integers(-3, 4, size=n).astype(float)
    else:
        values = np.round(rng.normal(size=n), 3)
    p_edge = rng.uniform(0.1, 0.6)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p_edge]
    return from_graph(values, edges)


@st.composite
def graphs(draw, max_vertices=12):
    n = draw(st.integers(1, max_vertices))
    values = draw(st.lists(st.integers(-4, 4) | st.floats(-5, 5, allow_nan=False, width=32), min_size=n, max_size=n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return from_graph([float(v) for v in values], [e for e, keep in zip(pairs, mask) if keep])


def piecewise_linear(rng, n_knots, n_samples, lo=0.0, hi=1.0):
    """Random piecewise-linear function sampled with every knot in the grid."""
    knots_t = np.linspace(lo, hi, n_knots)
    knots_v = np.round(rng.uniform(-2, 2, size=n_knots), 2)
    extra = np.sort(rng.uniform(lo, hi, size=max(0, n_samples - n_knots)))
    t = np.union1d(knots_t, extra)
    return IntervalSamples(t, np.interp(t, knots_t, knots_v))
