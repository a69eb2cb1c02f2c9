"""Size functions of discrete size pairs.

A size function is stored by its cornerpoints: proper ones (x, y, mult)
with x < y, and cornerpoints at infinity (k, inf). ``compute_diagram``
builds them from a sublevel filtration; ``ell_bruteforce`` and the
multiplicity functions evaluate the definitions directly and serve as
independent oracles.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from .size_space import DiscreteSizePair

__all__ = [
    "SizeFunctionDiagram",
    "compute_diagram",
    "ell_query",
    "ell_bruteforce",
    "multiplicity",
    "multiplicity_at_infinity",
    "read_diagram_json",
]


@dataclass(frozen=True)
class SizeFunctionDiagram:
    """Cornerpoints of a size function.

    ``proper`` is a sorted tuple of ``(x, y, mult)`` with ``x < y`` and
    distinct coordinates; ``infinity`` a sorted tuple of abscissas ``k``
    (repeated when a line has multiplicity above one).
    """

    infinity: tuple[float, ...]
    proper: tuple[tuple[float, float, int], ...]

    def __post_init__(self):
        infinity = tuple(sorted(float(k) for k in self.infinity))
        agg: Counter = Counter()
        for x, y, m in self.proper:
            x, y, m = float(x), float(y), int(m)
            if not x < y:
                raise ValueError(f"proper cornerpoint ({x}, {y}) must satisfy x < y")
            if m <= 0:
                raise ValueError(f"multiplicity of ({x}, {y}) must be positive, got {m}")
            agg[(x, y)] += m
        proper = tuple((x, y, m) for (x, y), m in sorted(agg.items()))
        object.__setattr__(self, "infinity", infinity)
        object.__setattr__(self, "proper", proper)

    @classmethod
    def from_pairs(cls, infinity: Iterable[float], pairs: Iterable[tuple[float, float]]):
        return cls(tuple(infinity), tuple((x, y, 1) for x, y in pairs))

    def expanded(self) -> list[tuple[float, float]]:
        """Proper cornerpoints repeated by multiplicity."""
        return [(x, y) for x, y, m in self.proper for _ in range(m)]

    def total_points(self) -> int:
        return len(self.infinity) + sum(m for _, _, m in self.proper)

    def to_json(self) -> dict:
        return {
            "infinity": list(self.infinity),
            "points": [{"x": x, "y": y, "mult": m} for x, y, m in self.proper],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SizeFunctionDiagram":
        try:
            infinity = [float(k) for k in data["infinity"]]
            proper = [(float(p["x"]), float(p["y"]), int(p.get("mult", 1))) for p in data["points"]]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed diagram JSON: {exc}") from None
        return cls(tuple(infinity), tuple(proper))


def read_diagram_json(path: str | Path) -> SizeFunctionDiagram:
    return SizeFunctionDiagram.from_json(json.loads(Path(path).read_text(encoding="utf-8")))


def _find(parent: list[int], i: int) -> int:
    root = i
    while parent[root] != root:
        root = parent[root]
    while parent[i] != root:
        parent[i], i = root, parent[i]
    return root


def compute_diagram(p: DiscreteSizePair) -> SizeFunctionDiagram:
    """Cornerpoints of the size function of ``p`` via the elder rule.

    Vertices enter in (value, index) order. An edge becomes active when
    its later endpoint enters; joining two components kills the one that
    entered later, at the value of that endpoint.
    """
    values = p.vertex_values
    n = p.n_vertices
    order = np.lexsort((np.arange(n), values))
    rank = np.empty(n, dtype=np.int64)
    rank[order] = np.arange(n)

    pairs: Counter = Counter()
    parent = list(range(n))
    if len(p.edges):
        e = p.edges
        er = rank[e]
        later = er.max(axis=1)
        edge_order = np.argsort(later, kind="stable")
        rank_l = rank.tolist()
        vals = values.tolist()
        for (u, v), t in zip(e[edge_order].tolist(), later[edge_order].tolist()):
            ru, rv = _find(parent, u), _find(parent, v)
            if ru == rv:
                continue
            # roots are always the oldest vertex of their component
            if rank_l[ru] > rank_l[rv]:
                ru, rv = rv, ru
            parent[rv] = ru
            birth, death = vals[rv], float(values[order[t]])
            if birth < death:
                pairs[(birth, death)] += 1

    roots = {_find(parent, i) for i in range(n)}
    infinity = tuple(float(values[r]) for r in roots)
    proper = tuple((x, y, m) for (x, y), m in pairs.items())
    return SizeFunctionDiagram(infinity, proper)


def ell_query(d: SizeFunctionDiagram, x: float, y: float) -> int:
    """Size function value at (x, y) read off the cornerpoints."""
    if not x < y:
        raise ValueError(f"size function is defined only for x < y, got ({x}, {y})")
    total = sum(1 for k in d.infinity if k <= x)
    total += sum(m for cx, cy, m in d.proper if cx <= x and y < cy)
    return total


def ell_bruteforce(p: DiscreteSizePair, x: float, y: float) -> int:
    """Number of classes of {phi <= x} under connectivity inside {phi <= y}."""
    if not x < y:
        raise ValueError(f"size function is defined only for x < y, got ({x}, {y})")
    vals = p.vertex_values
    inside = vals <= y
    adj = p.neighbors()
    seen = np.zeros(p.n_vertices, dtype=bool)
    count = 0
    for s in np.nonzero(vals <= x)[0].tolist():
        if seen[s]:
            continue
        count += 1
        seen[s] = True
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if inside[w] and not seen[w]:
                    seen[w] = True
                    stack.append(w)
    return count


def _probe_eps(p: DiscreteSizePair, *extra: float) -> float:
    levels = np.unique(np.concatenate([p.vertex_values, np.array(extra, dtype=float)]))
    gap = float(np.min(np.diff(levels))) if levels.size > 1 else 1.0
    return gap / 4


def multiplicity(p: DiscreteSizePair, x: float, y: float) -> int:
    """Multiplicity of (x, y) from the four-term alternating sum of ell.

    On finite data the sum is constant for every eps below half the
    smallest spacing among the vertex values, x and y; a quarter of that
    spacing is used.
    """
    if not x < y:
        raise ValueError(f"multiplicity is defined only for x < y, got ({x}, {y})")
    eps = _probe_eps(p, x, y)
    return (
        ell_bruteforce(p, x + eps, y - eps)
        - ell_bruteforce(p, x - eps, y - eps)
        - ell_bruteforce(p, x + eps, y + eps)
        + ell_bruteforce(p, x - eps, y + eps)
    )


def multiplicity_at_infinity(p: DiscreteSizePair, k: float) -> int:
    """Multiplicity of the vertical line x = k."""
    eps = _probe_eps(p, k)
    top = float(np.max(np.abs(p.vertex_values))) + abs(k) + 1.0
    eps = min(eps, 1.0 / top)
    far = 1.0 / eps
    return ell_bruteforce(p, k + eps, far) - ell_bruteforce(p, k - eps, far)
