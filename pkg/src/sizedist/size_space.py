"""Discrete size pairs: vertex-weighted graphs standing in for (M, phi).

Interval pairs are sampled into path graphs; the product pair (M x M, Phi)
lives on the strong product of the graph with itself.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

logger = logging.getLogger(__name__)

__all__ = [
    "DiscreteSizePair",
    "IntervalSamples",
    "from_interval_samples",
    "from_graph",
    "product_pair",
    "snap_values",
    "sample_function",
    "connected_components",
    "read_interval_csv",
    "read_graph_json",
    "pair_to_json",
]


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DiscreteSizePair:
    """A finite graph with one real value per vertex.

    ``edges`` is an ``(E, 2)`` integer array with ``u < v`` in every row,
    no self-loops and no duplicates. Both arrays are read-only.
    """

    vertex_values: np.ndarray
    edges: np.ndarray
    label: str = ""
    removed_edges: int = field(default=0, compare=False)

    def __post_init__(self):
        values = np.array(self.vertex_values, dtype=float)
        edges = np.array(self.edges, dtype=np.int64).reshape(-1, 2)
        if values.ndim != 1 or values.size < 1:
            raise ValueError("a size pair needs at least one vertex")
        if not np.all(np.isfinite(values)):
            raise ValueError("vertex values must be finite")
        n = values.size
        if edges.size and (edges.min() < 0 or edges.max() >= n):
            raise ValueError(f"edge references a vertex outside 0..{n - 1}")
        if np.any(edges[:, 0] == edges[:, 1]):
            raise ValueError("self-loops are not allowed")
        edges = np.sort(edges, axis=1)
        if len(np.unique(edges, axis=0)) != len(edges):
            raise ValueError("duplicate edges are not allowed")
        object.__setattr__(self, "vertex_values", _frozen(values))
        object.__setattr__(self, "edges", _frozen(edges))

    @property
    def n_vertices(self) -> int:
        return int(self.vertex_values.size)

    def neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for u, v in self.edges.tolist():
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def __repr__(self):
        return (
            f"DiscreteSizePair(label={self.label!r}, n_vertices={self.n_vertices}, "
            f"n_edges={len(self.edges)})"
        )


@dataclass(frozen=True, eq=False)
class IntervalSamples:
    """Samples of a measuring function on an interval [a, b]."""

    parameter_points: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = np.array(self.parameter_points, dtype=float)
        v = np.array(self.values, dtype=float)
        if t.ndim != 1 or v.ndim != 1 or t.size != v.size:
            raise ValueError(
                f"parameter/value length mismatch: {t.size} points, {v.size} values"
            )
        if t.size < 2:
            raise ValueError("interval samples need at least 2 points")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(v))):
            raise ValueError("samples must be finite")
        bad = np.nonzero(np.diff(t) <= 0)[0]
        if bad.size:
            i = int(bad[0])
            raise ValueError(
                f"parameters must be strictly increasing: t[{i}]={t[i]!r} >= t[{i + 1}]={t[i + 1]!r}"
            )
        object.__setattr__(self, "parameter_points", _frozen(t))
        object.__setattr__(self, "values", _frozen(v))

    def __len__(self):
        return int(self.values.size)

    def reversed(self) -> "IntervalSamples":
        """The same samples traversed right-to-left (t -> a + b - t)."""
        t = self.parameter_points
        return IntervalSamples(t[0] + t[-1] - t[::-1], self.values[::-1].copy())

    def shifted(self, c: float) -> "IntervalSamples":
        return IntervalSamples(self.parameter_points, self.values + c)


def snap_values(values: Iterable[float], tol: float) -> np.ndarray:
    """Collapse values that agree up to ``tol``.

    Sorted values are chained into clusters whenever consecutive gaps are at
    most ``tol``; a cluster holding more than one distinct value is replaced
    by its median rounded to the decimal precision of ``tol``. Isolated
    values are left alone. ``tol == 0`` returns the input unchanged.
    """
    arr = np.array(values, dtype=float)
    if tol < 0:
        raise ValueError("snap tolerance must be non-negative")
    if tol == 0 or arr.size == 0:
        return arr
    decimals = max(0, math.ceil(-math.log10(tol)))
    order = np.argsort(arr, kind="stable")
    sorted_vals = arr[order]
    breaks = np.nonzero(np.diff(sorted_vals) > tol)[0] + 1
    out = arr.copy()
    for chunk in np.split(np.arange(arr.size), breaks):
        members = sorted_vals[chunk]
        if members[0] == members[-1]:
            continue
        rep = round(float(np.median(members)), decimals)
        out[order[chunk]] = rep + 0.0  # normalise -0.0
    return out


def from_interval_samples(s: IntervalSamples, label: str = "", snap: float = 0.0) -> DiscreteSizePair:
    n = len(s)
    edges = np.column_stack([np.arange(n - 1), np.arange(1, n)])
    return DiscreteSizePair(snap_values(s.values, snap), edges, label=label)


def from_graph(
    vertices: Sequence[float],
    edges: Iterable[Sequence[int]],
    label: str = "",
    snap: float = 0.0,
) -> DiscreteSizePair:
    """Build a pair from raw data, dropping self-loops and repeated edges."""
    n = len(vertices)
    seen: set[tuple[int, int]] = set()
    kept = []
    removed = 0
    for e in edges:
        u, v = (int(e[0]), int(e[1]))
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) references a vertex outside 0..{n - 1}")
        key = (min(u, v), max(u, v))
        if u == v or key in seen:
            removed += 1
            continue
        seen.add(key)
        kept.append(key)
    if removed:
        logger.warning("from_graph: removed %d self-loop/duplicate edge(s)", removed)
    pair = DiscreteSizePair(
        snap_values(vertices, snap), np.array(kept, dtype=np.int64).reshape(-1, 2), label=label
    )
    object.__setattr__(pair, "removed_edges", removed)
    return pair


def product_pair(p: DiscreteSizePair, connectivity: str = "strong") -> DiscreteSizePair:
    """The pair (M x M, Phi) with Phi(u, v) = phi(u) - phi(v).

    Vertex ``(u, v)`` gets index ``u * n + v``. ``connectivity="strong"``
    joins grid neighbours including diagonals; ``"4"`` keeps only moves
    in one coordinate.
    """
    if connectivity not in ("strong", "4"):
        raise ValueError(f"unknown connectivity {connectivity!r}")
    n = p.n_vertices
    phi = p.vertex_values
    values = (phi[:, None] - phi[None, :]).ravel()
    e = p.edges
    idx = np.arange(n)
    blocks = []
    if len(e):
        # (u, v) ~ (u, v'): one coordinate fixed
        fixed_u = np.stack(
            [(idx[:, None] * n + e[None, :, 0]).ravel(), (idx[:, None] * n + e[None, :, 1]).ravel()],
            axis=1,
        )
        fixed_v = np.stack(
            [(e[None, :, 0] * n + idx[:, None]).ravel(), (e[None, :, 1] * n + idx[:, None]).ravel()],
            axis=1,
        )
        blocks += [fixed_u, fixed_v]
        if connectivity == "strong":
            a0, a1 = e[:, 0][:, None], e[:, 1][:, None]
            b0, b1 = e[:, 0][None, :], e[:, 1][None, :]
            same = np.stack([(a0 * n + b0).ravel(), (a1 * n + b1).ravel()], axis=1)
            cross = np.stack([(a0 * n + b1).ravel(), (a1 * n + b0).ravel()], axis=1)
            blocks += [same, cross]
    edges = np.concatenate(blocks) if blocks else np.empty((0, 2), dtype=np.int64)
    label = f"{p.label} x {p.label}" if p.label else ""
    return DiscreteSizePair(values, edges, label=label)


def connected_components(p: DiscreteSizePair) -> np.ndarray:
    """Component label per vertex, by breadth-first traversal."""
    adj = p.neighbors()
    comp = np.full(p.n_vertices, -1, dtype=np.int64)
    c = 0
    for start in range(p.n_vertices):
        if comp[start] >= 0:
            continue
        comp[start] = c
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if comp[w] < 0:
                    comp[w] = c
                    stack.append(w)
        c += 1
    return comp


def sample_function(
    f: Callable[[np.ndarray], np.ndarray],
    n: int,
    a: float = 0.0,
    b: float = math.pi,
    include: Sequence[float] = (),
    snap: float = 1e-12,
) -> IntervalSamples:
    """Sample ``f`` on ``n`` uniform points of [a, b] plus the points in ``include``.

    Uniform points within ``1e-12 * (b - a)`` of an included point are
    replaced by it, so critical points enter the grid exactly.
    """
    if n < 2:
        raise ValueError("need at least 2 samples")
    grid = np.linspace(a, b, n)
    extra = np.array(sorted(float(x) for x in include if a <= x <= b), dtype=float)
    if extra.size:
        near = np.min(np.abs(grid[:, None] - extra[None, :]), axis=1) <= 1e-12 * (b - a)
        grid = np.union1d(grid[~near], extra)
    return IntervalSamples(grid, snap_values(f(grid), snap))


def read_interval_csv(path: str | Path) -> IntervalSamples:
    """Read a two-column ``t,value`` CSV; a non-numeric first row is a header."""
    text = Path(path).read_text(encoding="utf-8")
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if not rows:
        raise ValueError(f"{path}: empty CSV")
    try:
        float(rows[0][0])
    except ValueError:
        rows = rows[1:]
    t, v = [], []
    for lineno, row in enumerate(rows, 1):
        if len(row) != 2:
            raise ValueError(f"{path}: row {lineno} has {len(row)} columns, expected 2")
        t.append(float(row[0]))
        v.append(float(row[1]))
    return IntervalSamples(t, v)


def read_graph_json(path: str | Path, snap: float = 0.0) -> DiscreteSizePair:
    """Read ``{"vertices": [{"id", "value"}], "edges": [[u, v]]}``.

    Vertex ids may be arbitrary integers; they are remapped to 0..n-1 in
    the order given.
    """
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, dict) or "vertices" not in data:
        raise ValueError(f"{path}: expected an object with a 'vertices' list")
    ids = {}
    values = []
    for k, vert in enumerate(data["vertices"]):
        vid = int(vert["id"])
        if vid in ids:
            raise ValueError(f"{path}: duplicate vertex id {vid}")
        ids[vid] = k
        values.append(float(vert["value"]))
    edges = []
    for e in data.get("edges", []):
        if len(e) != 2 or e[0] not in ids or e[1] not in ids:
            raise ValueError(f"{path}: edge {e!r} references an unknown vertex")
        edges.append((ids[e[0]], ids[e[1]]))
    return from_graph(values, edges, label=Path(path).stem, snap=snap)


def pair_to_json(p: DiscreteSizePair) -> dict:
    return {
        "vertices": [{"id": i, "value": float(v)} for i, v in enumerate(p.vertex_values)],
        "edges": p.edges.tolist(),
    }
