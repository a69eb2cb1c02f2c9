"""Acceptance criteria, one test per criterion.

Each test appends a PASS/FAIL line to the terminal summary before asserting,
so a plain ``pytest tests/test_acceptance.py`` prints the full scorecard.
"""

import time
from contextlib import contextmanager

import numpy as np
import pytest

from sizedist.bounds import lambda_lower_bound, natural_lower_bound, restriction_identity_check
from sizedist.matching import (
    BRUTEFORCE_BUDGET,
    INF,
    matching_distance,
    matching_distance_bruteforce,
    point_distance,
)
from sizedist.persistence import compute_diagram, ell_bruteforce, ell_query
from sizedist.reparam import estimate_upper, random_path
from sizedist.seminorms import check_axioms, evaluate
from sizedist.size_space import IntervalSamples, from_interval_samples, product_pair, sample_function

from .conftest import ACCEPTANCE_LINES, CRIT, piecewise_linear, random_graph, sin_samples, two_sin2_samples
from .test_matching import random_diagram
from .test_seminorms import _compose


@contextmanager
def criterion(number, title):
    """Record a PASS/FAIL line for the criterion, whatever happens inside."""
    info = {}
    try:
        yield info
    except BaseException:
        ACCEPTANCE_LINES.append(f"[FAIL] {number:>2}. {title} {info.get('detail', '')}".rstrip())
        raise
    ACCEPTANCE_LINES.append(f"[PASS] {number:>2}. {title} {info.get('detail', '')}".rstrip())


@pytest.fixture(scope="module", autouse=True)
def warm_jit():
    # compile the numba kernels outside the timed regions
    a, b = sin_samples(), two_sin2_samples()
    estimate_upper(a, b, "sup")
    estimate_upper(a, b, "range")
    estimate_upper(a, b, "range", coarse=4)


def _base_pairs(n):
    return from_interval_samples(sin_samples(n)), from_interval_samples(two_sin2_samples(n))


def test_01_base_matching_distance():
    with criterion(1, "base d_match = 2 at 129 samples, < 1 s") as info:
        start = time.perf_counter()
        a, b = _base_pairs(129)
        value = matching_distance(compute_diagram(a), compute_diagram(b))
        elapsed = time.perf_counter() - start
        info["detail"] = f"(value={value}, {elapsed:.3f} s)"
        assert value == 2
        assert elapsed < 1.0


def test_02_product_matching_distance():
    with criterion(2, "product d_match = 3 on 129^2 vertices, < 10 s") as info:
        start = time.perf_counter()
        a, b = _base_pairs(129)
        pa, pb = product_pair(a), product_pair(b)
        assert pa.n_vertices == pb.n_vertices == 129**2
        value = matching_distance(compute_diagram(pa), compute_diagram(pb))
        elapsed = time.perf_counter() - start
        info["detail"] = f"(value={value}, {elapsed:.3f} s)"
        assert value == 3
        assert elapsed < 10.0


def test_03_sup_estimate():
    with criterion(3, "sup estimate in [2, 2.02] at 513 samples, < 5 s") as info:
        a, b = sin_samples(513), two_sin2_samples(513)
        start = time.perf_counter()
        est = estimate_upper(a, b, "sup")
        elapsed = time.perf_counter() - start
        lower = natural_lower_bound(*_base_pairs(513)).bound_value
        info["detail"] = f"(estimate={est.value}, lower={lower}, {elapsed:.3f} s)"
        assert 2 <= est.value <= 2.02
        assert lower == 2
        assert elapsed < 5.0


def test_04_range_estimate():
    with criterion(4, "range estimate in [3, 3.05] at 513 samples, exact < 60 s, coarse < 5 s") as info:
        a, b = sin_samples(513), two_sin2_samples(513)
        start = time.perf_counter()
        exact = estimate_upper(a, b, "range")
        t_exact = time.perf_counter() - start
        start = time.perf_counter()
        coarse = estimate_upper(a, b, "range", coarse=64)
        t_coarse = time.perf_counter() - start
        info["detail"] = (
            f"(exact={exact.value} in {t_exact:.3f} s, coarse={coarse.value} in {t_coarse:.3f} s)"
        )
        assert 3 <= exact.value <= 3.05 and t_exact < 60.0
        assert 3 <= coarse.value <= 3.05 and t_coarse < 5.0


def test_05_against_zero_function():
    with criterion(5, "against zero: sin 2t -> {2,1}, sin t -> {1,1} within 1e-9") as info:
        zero = sample_function(lambda t: 0 * t, 129, include=CRIT)
        s2 = sample_function(lambda t: np.sin(2 * t), 129, include=CRIT)
        s1 = sin_samples(129)
        got = {
            name: (estimate_upper(s, zero, "range").value, estimate_upper(s, zero, "sup").value)
            for name, s in (("sin 2t", s2), ("sin t", s1))
        }
        info["detail"] = f"({got})"
        assert got["sin 2t"] == pytest.approx((2, 1), abs=1e-9)
        assert got["sin t"] == pytest.approx((1, 1), abs=1e-9)


def test_06_representation_oracle():
    with criterion(6, "ell_query == ell_bruteforce on 200 graphs x 100 queries") as info:
        rng = np.random.default_rng(2024)
        mismatches = 0
        for _ in range(200):
            g = random_graph(rng, max_vertices=12)
            d = compute_diagram(g)
            vals = g.vertex_values
            # mix exact vertex values with points in between and outside
            pool = np.concatenate([vals, vals + 0.5, vals - 0.25, [vals.min() - 1, vals.max() + 1]])
            pool = np.unique(pool)
            for _ in range(100):
                x, y = np.sort(rng.choice(pool, size=2, replace=False))
                if ell_query(d, x, y) != ell_bruteforce(g, x, y):
                    mismatches += 1
        info["detail"] = f"(mismatches={mismatches})"
        assert mismatches == 0


def _random_point(rng):
    # quarter-grid coordinates keep every sum and difference exact
    x = int(rng.integers(-12, 13)) / 4
    kind = rng.random()
    if kind < 0.2:
        return (x, INF)
    if kind < 0.3:
        return (x, x)
    return (x, x + int(rng.integers(1, 13)) / 4)


def test_07_matching_oracle():
    with criterion(7, "d_match == bruteforce on 200 pairs; pseudometric axioms on 1000 triples") as info:
        rng = np.random.default_rng(7)
        compared = mismatches = 0
        while compared < 200:
            n_inf = int(rng.integers(0, 3))
            d1 = random_diagram(rng, 4, n_inf)
            d2 = random_diagram(rng, BRUTEFORCE_BUDGET - d1.total_points(), n_inf if rng.random() < 0.9 else None)
            if d1.total_points() + d2.total_points() > BRUTEFORCE_BUDGET:
                continue
            compared += 1
            mismatches += matching_distance(d1, d2) != matching_distance_bruteforce(d1, d2)
        violations = 0
        for _ in range(1000):
            p, q, r = (_random_point(rng) for _ in range(3))
            violations += not (
                point_distance(p, p) == 0
                and point_distance(p, q) == point_distance(q, p) >= 0
                and point_distance(p, r) <= point_distance(p, q) + point_distance(q, r)
            )
            d1, d2, d3 = (random_diagram(rng, 5, 1) for _ in range(3))
            violations += not (
                matching_distance(d1, d1) == 0
                and matching_distance(d1, d2) == matching_distance(d2, d1) >= 0
                and matching_distance(d1, d3) <= matching_distance(d1, d2) + matching_distance(d2, d3) + 1e-12
            )
        info["detail"] = f"(mismatches={mismatches}, axiom violations={violations})"
        assert mismatches == 0 and violations == 0


def test_08_seminorm_axioms():
    with criterion(8, "seminorm axioms i-iv (1000 trials) and per-map triangle chain") as info:
        reports = {s: check_axioms(s, trials=1000, seed=8) for s in ("sup", "range")}
        rng = np.random.default_rng(8)
        chain_violations = 0
        for s in ("sup", "range"):
            for _ in range(1000):
                n, m, k = (int(v) for v in rng.integers(2, 15, size=3))
                phi, psi, xi = (rng.normal(size=size) for size in (n, m, k))
                h = random_path(n, m, rng, "forward")
                g = random_path(m, k, rng, "forward")
                composed = _compose(h, g)
                lhs = evaluate(s, [phi[i] - xi[j] for i, j in composed])
                first = evaluate(s, [phi[i] - psi[j] for i, j in h.steps.tolist()])
                second = evaluate(s, [psi[j] - xi[l] for j, l in g.steps.tolist()])
                chain_violations += lhs > first + second + 1e-12
        info["detail"] = f"({'; '.join(r.summary() for r in reports.values())}; chain violations={chain_violations})"
        for r in reports.values():
            assert r.ok and all(v == 1000 for v in r.passed.values())
        assert chain_violations == 0


def test_09_restriction_identity():
    with criterion(9, "product restriction identity exact on 100 random alignments") as info:
        rng = np.random.default_rng(9)
        unequal = 0
        for _ in range(100):
            n, m = (int(v) for v in rng.integers(2, 40, size=2))
            a = IntervalSamples(np.arange(n, dtype=float), rng.normal(size=n))
            b = IntervalSamples(np.arange(m, dtype=float), rng.normal(size=m) * 3)
            rep = restriction_identity_check(a, b, random_path(n, m, rng))
            unequal += not (rep.equal and rep.product_side == rep.range_side)
        info["detail"] = f"(unequal={unequal})"
        assert unequal == 0


def test_10_bound_sandwich():
    with criterion(10, "lower bounds <= upper estimates on 100 piecewise-linear pairs") as info:
        rng = np.random.default_rng(10)
        violations = 0
        for _ in range(100):
            s = piecewise_linear(rng, int(rng.integers(3, 8)), int(rng.integers(10, 40)))
            t = piecewise_linear(rng, int(rng.integers(3, 8)), int(rng.integers(10, 40)))
            a, b = from_interval_samples(s), from_interval_samples(t)
            violations += natural_lower_bound(a, b).bound_value > estimate_upper(s, t, "sup").value + 1e-9
            violations += lambda_lower_bound(a, b).bound_value > estimate_upper(s, t, "range").value + 1e-9
        info["detail"] = f"(violations={violations})"
        assert violations == 0
