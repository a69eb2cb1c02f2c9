"""Upper estimates of the natural and range pseudodistances for interval pairs.

A homeomorphism of intervals is approximated by a monotone lattice path
through the grid of sample pairs; both orientations are searched. The
cost of a path under a seminorm is the seminorm of the aligned
differences ``a[i] - b[j]``.
"""

from __future__ import annotations

import heapq
import logging
import math
from dataclasses import dataclass, field

import numba as nb
import numpy as np

from .seminorms import SeminormId, evaluate
from .size_space import IntervalSamples

logger = logging.getLogger(__name__)

__all__ = [
    "MonotonePath",
    "Estimate",
    "path_cost",
    "estimate_upper",
    "diagonal_path",
    "knee_path",
    "random_path",
]

FORWARD = "forward"
REVERSED = "reversed"


@dataclass(frozen=True, eq=False)
class MonotonePath:
    """Lattice path from (0, 0) to (n-1, m-1) with unit steps in i, j or both.

    With ``orientation="reversed"`` the index ``j`` refers to the second
    sample list read right-to-left.
    """

    steps: np.ndarray
    orientation: str = FORWARD

    def __post_init__(self):
        steps = np.array(self.steps, dtype=np.int64).reshape(-1, 2)
        if len(steps) == 0:
            raise ValueError("empty path")
        if self.orientation not in (FORWARD, REVERSED):
            raise ValueError(f"unknown orientation {self.orientation!r}")
        if tuple(steps[0]) != (0, 0):
            raise ValueError("path must start at (0, 0)")
        inc = np.diff(steps, axis=0)
        if inc.size and (np.any((inc != 0) & (inc != 1)) or np.any(inc.sum(axis=1) == 0)):
            raise ValueError("each step must advance i, j or both by exactly one")
        steps.setflags(write=False)
        object.__setattr__(self, "steps", steps)

    @property
    def shape(self) -> tuple[int, int]:
        return int(self.steps[-1, 0]) + 1, int(self.steps[-1, 1]) + 1

    def check_sizes(self, n: int, m: int) -> None:
        if self.shape != (n, m):
            raise ValueError(f"path ends at {tuple(self.steps[-1])}, expected ({n - 1}, {m - 1})")

    def transposed(self) -> "MonotonePath":
        return MonotonePath(self.steps[:, ::-1].copy(), self.orientation)

    def to_json(self) -> dict:
        return {"orientation": self.orientation, "steps": self.steps.tolist()}


@dataclass
class Estimate:
    value: float
    witness: MonotonePath
    seminorm: SeminormId
    n: int
    m: int
    provenance: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "seminorm": SeminormId(self.seminorm).value,
            "n": self.n,
            "m": self.m,
            "witness": self.witness.to_json(),
            "provenance": self.provenance,
        }


def _oriented(b: IntervalSamples, orientation: str) -> np.ndarray:
    return b.values[::-1] if orientation == REVERSED else b.values


def aligned_differences(a: IntervalSamples, b: IntervalSamples, h: MonotonePath) -> np.ndarray:
    h.check_sizes(len(a), len(b))
    bv = _oriented(b, h.orientation)
    return a.values[h.steps[:, 0]] - bv[h.steps[:, 1]]


def path_cost(a: IntervalSamples, b: IntervalSamples, h: MonotonePath, s: SeminormId | str) -> float:
    return evaluate(s, aligned_differences(a, b, h))


def diagonal_path(n: int, m: int, orientation: str = FORWARD) -> MonotonePath:
    """The straightest lattice path from (0, 0) to (n-1, m-1)."""
    return MonotonePath(_segment(0, 0, n - 1, m - 1), orientation)


def knee_path(n: int, m: int, i_knee: int, j_knee: int, orientation: str = FORWARD) -> MonotonePath:
    """Two straight pieces: (0, 0) -> (i_knee, j_knee) -> (n-1, m-1)."""
    first = _segment(0, 0, i_knee, j_knee)
    second = _segment(i_knee, j_knee, n - 1, m - 1)[1:]
    return MonotonePath(np.concatenate([first, second]), orientation)


def _segment(i0: int, j0: int, i1: int, j1: int) -> np.ndarray:
    di, dj = i1 - i0, j1 - j0
    k = max(di, dj)
    if k == 0:
        return np.array([[i0, j0]], dtype=np.int64)
    s = np.arange(k + 1)
    # exact integer rounding keeps unit steps along the longer axis
    i = i0 + (2 * s * di + k) // (2 * k)
    j = j0 + (2 * s * dj + k) // (2 * k)
    return np.column_stack([i, j]).astype(np.int64)


def random_path(n: int, m: int, rng: np.random.Generator, orientation: str | None = None) -> MonotonePath:
    """A random monotone path; steps are drawn uniformly among the admissible moves."""
    i = j = 0
    steps = [(0, 0)]
    while (i, j) != (n - 1, m - 1):
        moves = []
        if i < n - 1:
            moves.append((1, 0))
        if j < m - 1:
            moves.append((0, 1))
        if i < n - 1 and j < m - 1:
            moves.append((1, 1))
        di, dj = moves[int(rng.integers(len(moves)))]
        i, j = i + di, j + dj
        steps.append((i, j))
    if orientation is None:
        orientation = FORWARD if rng.random() < 0.5 else REVERSED
    return MonotonePath(np.array(steps), orientation)


@nb.njit(cache=True, nogil=True)
def _minimax_table(c):
    """D[i, j] = least possible max of c over monotone paths from (0, 0) to (i, j)."""
    n, m = c.shape
    D = np.empty((n, m))
    D[0, 0] = c[0, 0]
    for j in range(1, m):
        D[0, j] = max(c[0, j], D[0, j - 1])
    for i in range(1, n):
        D[i, 0] = max(c[i, 0], D[i - 1, 0])
        for j in range(1, m):
            best = D[i - 1, j - 1]
            if D[i - 1, j] < best:
                best = D[i - 1, j]
            if D[i, j - 1] < best:
                best = D[i, j - 1]
            D[i, j] = c[i, j] if c[i, j] > best else best
    return D


@nb.njit(cache=True, nogil=True)
def _backtrack(D):
    n, m = D.shape
    out = np.empty((n + m - 1, 2), dtype=np.int64)
    i, j = n - 1, m - 1
    k = 0
    out[k, 0] = i
    out[k, 1] = j
    while i > 0 or j > 0:
        if i == 0:
            j -= 1
        elif j == 0:
            i -= 1
        else:
            di, dd, dj = D[i - 1, j], D[i - 1, j - 1], D[i, j - 1]
            if dd <= di and dd <= dj:
                i -= 1
                j -= 1
            elif di <= dj:
                i -= 1
            else:
                j -= 1
        k += 1
        out[k, 0] = i
        out[k, 1] = j
    return out[: k + 1][::-1].copy()


def _bottleneck_path(c: np.ndarray) -> tuple[float, np.ndarray]:
    D = _minimax_table(np.ascontiguousarray(c, dtype=float))
    return float(D[-1, -1]), _backtrack(D)


def _differences(a: IntervalSamples, b: IntervalSamples, orientation: str) -> np.ndarray:
    return a.values[:, None] - _oriented(b, orientation)[None, :]


def _estimate_sup(a, b):
    best = None
    for orientation in (FORWARD, REVERSED):
        val, steps = _bottleneck_path(np.abs(_differences(a, b, orientation)))
        if best is None or val < best[0]:
            best = (val, MonotonePath(steps, orientation))
    return best[1], {}


def _range_bounds(d: np.ndarray) -> tuple[float, float]:
    """Bounds valid for every monotone path: its minimum is at most the
    first value, its maximum at least the second."""
    corners = (d[0, 0], d[-1, -1])
    lower_cap = min(min(corners), d.max(axis=1).min(), d.max(axis=0).min())
    upper_floor = max(max(corners), d.min(axis=1).max(), d.min(axis=0).max())
    return float(lower_cap), float(upper_floor)


@nb.njit(cache=True, nogil=True)
def _range_sweep(d, levels, upper_floor, best):
    """Sweep candidate minima L downward, maintaining the min-max table.

    ``levels[k]`` is the admissible minimum assigned to each cell (the cell
    value itself, or a coarser bucket edge below it); cells are enabled in
    decreasing order of level. The table D of least path maxima over
    enabled cells only ever decreases, so each newly enabled cell starts a
    wave of updates processed in row-major (topological) order.
    Returns (best objective, its L).
    """
    n, m = d.shape
    flat_levels = levels.ravel()
    order = np.argsort(-flat_levels, kind="mergesort")
    D = np.full(n * m, np.inf)
    enabled = np.zeros(n * m, dtype=np.bool_)
    queued = np.zeros(n * m, dtype=np.bool_)
    dv = d.ravel()
    best_L = np.nan
    heap = [np.int64(0)]
    heap.pop()
    end = n * m - 1
    k = 0
    total = order.size
    while k < total:
        L = flat_levels[order[k]]
        if upper_floor - L >= best:
            break
        while k < total and flat_levels[order[k]] == L:
            c = order[k]
            enabled[c] = True
            if not queued[c]:
                queued[c] = True
                heapq.heappush(heap, np.int64(c))
            k += 1
        while len(heap) > 0:
            c = heapq.heappop(heap)
            queued[c] = False
            i = c // m
            j = c - i * m
            if c == 0:
                cand = -np.inf
            else:
                cand = np.inf
                if i > 0 and D[c - m] < cand:
                    cand = D[c - m]
                if j > 0 and D[c - 1] < cand:
                    cand = D[c - 1]
                if i > 0 and j > 0 and D[c - m - 1] < cand:
                    cand = D[c - m - 1]
            new = dv[c] if dv[c] > cand else cand
            if new < D[c]:
                D[c] = new
                if i + 1 < n:
                    s = c + m
                    if enabled[s] and not queued[s]:
                        queued[s] = True
                        heapq.heappush(heap, s)
                    if j + 1 < m:
                        s = c + m + 1
                        if enabled[s] and not queued[s]:
                            queued[s] = True
                            heapq.heappush(heap, s)
                if j + 1 < m:
                    s = c + 1
                    if enabled[s] and not queued[s]:
                        queued[s] = True
                        heapq.heappush(heap, s)
        if D[end] - L < best:
            best = D[end] - L
            best_L = L
    return best, best_L


def _estimate_range(a, b, coarse: int | None):
    """Exact grid optimum of max - min over monotone paths.

    For a candidate minimum L the least achievable maximum U(L) over paths
    avoiding cells below L is a bottleneck-path problem; the sweep over L
    stops once no smaller L can beat the incumbent. With ``coarse`` the
    candidate minima are rounded down to ``coarse`` evenly spaced bucket
    edges, which keeps every reported cost achievable but may miss the
    grid optimum.
    """
    best_val, best_L, best_orientation = math.inf, None, None
    grids = {o: _differences(a, b, o) for o in (FORWARD, REVERSED)}
    for orientation, d in grids.items():
        lower_cap, upper_floor = _range_bounds(d)
        levels = np.where(d <= lower_cap, d, lower_cap)
        if coarse:
            lo = float(d.min())
            edges = np.linspace(lo, lower_cap, coarse + 1)
            levels = edges[np.clip(np.searchsorted(edges, levels, side="right") - 1, 0, coarse)]
        val, L = _range_sweep(np.ascontiguousarray(d), np.ascontiguousarray(levels), upper_floor, best_val)
        if val < best_val:
            best_val, best_L, best_orientation = val, L, orientation
    d = grids[best_orientation]
    _, steps = _bottleneck_path(np.where(d >= best_L, d, np.inf))
    return MonotonePath(steps, best_orientation), {"coarse": coarse or 0}


def estimate_upper(
    a: IntervalSamples,
    b: IntervalSamples,
    s: SeminormId | str = SeminormId.SUP,
    coarse: int | None = None,
) -> Estimate:
    """Least path cost over all monotone paths in both orientations.

    ``coarse`` caps the number of candidate minima tried per orientation
    for the range seminorm; the result is then still the cost of an
    actual path, but possibly not the grid optimum.
    """
    if len(a) < 2 or len(b) < 2:
        raise ValueError("need at least 2 samples on each side")
    s = SeminormId(s)
    if s is SeminormId.SUP:
        witness, info = _estimate_sup(a, b)
    elif s is SeminormId.RANGE:
        witness, info = _estimate_range(a, b, coarse)
    else:  # pragma: no cover - registry extensions have no search routine
        raise ValueError(f"no search routine for seminorm {s!r}")
    value = path_cost(a, b, witness, s)
    return Estimate(value, witness, s, len(a), len(b), info)
