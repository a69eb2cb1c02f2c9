"""Matching distance between size functions.

Points of the extended half-plane are ``(x, y)`` with ``y`` possibly
``math.inf``. The pseudometric between points follows the usual
conventions: inf - inf = 0, inf - y = inf, inf / 2 = inf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

from .persistence import SizeFunctionDiagram

INF = math.inf

__all__ = [
    "INF",
    "DiagramPoint",
    "point_distance",
    "diagonal_gap",
    "matching_distance",
    "optimal_matching",
    "matching_distance_bruteforce",
    "format_extended",
]


@dataclass(frozen=True)
class DiagramPoint:
    x: float
    y: float
    role: str = "proper"  # "proper" | "infinity" | "diagonal"

    def __post_init__(self):
        if self.role == "infinity" and self.y != INF:
            raise ValueError("points at infinity must have y = inf")
        if self.role == "diagonal" and self.y != self.x:
            raise ValueError("diagonal points must have y = x")
        if self.role == "proper" and not self.x < self.y < INF:
            raise ValueError(f"proper point needs x < y < inf, got ({self.x}, {self.y})")

    @classmethod
    def of(cls, x: float, y: float) -> "DiagramPoint":
        role = "infinity" if y == INF else ("diagonal" if x == y else "proper")
        return cls(float(x), float(y), role)

    def to_json(self):
        return {"x": self.x, "y": None if self.y == INF else self.y, "role": self.role}


def _ext_sub(a: float, b: float) -> float:
    if a == INF and b == INF:
        return 0.0
    return a - b


def diagonal_gap(a) -> float:
    """Cost of pushing ``a`` onto the diagonal: (y - x) / 2."""
    x, y = (a.x, a.y) if isinstance(a, DiagramPoint) else a
    return (y - x) / 2


def point_distance(a, b) -> float:
    """min(max(|x - x'|, |y - y'|), max((y - x)/2, (y' - x')/2))."""
    x, y = (a.x, a.y) if isinstance(a, DiagramPoint) else a
    x2, y2 = (b.x, b.y) if isinstance(b, DiagramPoint) else b
    move = max(abs(x - x2), abs(_ext_sub(y, y2)))
    retire = max(diagonal_gap((x, y)), diagonal_gap((x2, y2)))
    return min(move, retire)


def format_extended(v: float) -> str:
    return "inf" if v == INF else f"{v:.12g}"


def _max_matching(adj: list[list[int]], n_right: int) -> tuple[int, list[int]]:
    """Maximum bipartite matching by repeated augmenting paths."""
    match_r = [-1] * n_right
    size = 0
    for u in range(len(adj)):
        # iterative DFS for an augmenting path from u
        visited = [False] * n_right
        stack = [(u, iter(adj[u]))]
        path = []
        found = False
        while stack and not found:
            node, it = stack[-1]
            for r in it:
                if visited[r]:
                    continue
                visited[r] = True
                path.append((node, r))
                if match_r[r] == -1:
                    found = True
                else:
                    stack.append((match_r[r], iter(adj[match_r[r]])))
                break
            else:
                stack.pop()
                if path:
                    path.pop()
        if found:
            # path holds (left, right) edges along the current DFS branch
            for left, r in path:
                match_r[r] = left
            size += 1
    return size, match_r


def _proper_graph(A, B, t):
    """Bipartite graph whose perfect matchings are the bijections with cost <= t.

    Left = A + one diagonal slot per point of B; right = B + one diagonal
    slot per point of A.
    """
    na, nb = len(A), len(B)
    adj: list[list[int]] = [[] for _ in range(na + nb)]
    for i, a in enumerate(A):
        for j, b in enumerate(B):
            if point_distance(a, b) <= t:
                adj[i].append(j)
        if diagonal_gap(a) <= t:
            adj[i].append(nb + i)
    for j, b in enumerate(B):
        if diagonal_gap(b) <= t:
            adj[na + j].append(j)
        adj[na + j].extend(range(nb, nb + na))
    return adj


def _proper_bottleneck(A, B):
    """Optimal bottleneck value and right-side assignment for proper points."""
    na, nb = len(A), len(B)
    if na + nb == 0:
        return 0.0, []
    cands = {0.0}
    cands.update(diagonal_gap(a) for a in A)
    cands.update(diagonal_gap(b) for b in B)
    cands.update(point_distance(a, b) for a in A for b in B)
    cands = sorted(cands)
    lo, hi = 0, len(cands) - 1
    # the largest candidate (retire everything) is always feasible
    best = None
    while lo <= hi:
        mid = (lo + hi) // 2
        size, match_r = _max_matching(_proper_graph(A, B, cands[mid]), na + nb)
        if size == na + nb:
            best = (cands[mid], match_r)
            hi = mid - 1
        else:
            lo = mid + 1
    return best


def optimal_matching(d1: SizeFunctionDiagram, d2: SizeFunctionDiagram):
    """Matching distance together with an optimal matching.

    The matching is a list of ``{"from", "to", "cost"}`` records; a point
    sent to the diagonal is matched to its orthogonal projection.
    Returns ``(inf, [])`` when the numbers of cornerpoints at infinity
    differ, since no bijection has finite cost then.
    """
    K1, K2 = list(d1.infinity), list(d2.infinity)
    if len(K1) != len(K2):
        return INF, []
    records = []
    value = 0.0
    # on the line at infinity sorted order is an optimal bottleneck assignment
    for k1, k2 in zip(K1, K2):
        c = abs(k1 - k2)
        value = max(value, c)
        records.append(
            {"from": DiagramPoint.of(k1, INF).to_json(), "to": DiagramPoint.of(k2, INF).to_json(), "cost": c}
        )
    A, B = d1.expanded(), d2.expanded()
    proper_value, match_r = _proper_bottleneck(A, B)
    value = max(value, proper_value)
    na, nb = len(A), len(B)
    for r, left in enumerate(match_r):
        if left >= na and r >= nb:
            continue  # diagonal to diagonal
        if left < na:
            a = A[left]
            if r < nb:
                b = B[r]
                src, dst, c = a, b, point_distance(a, b)
            else:
                m = (a[0] + a[1]) / 2
                src, dst, c = a, (m, m), diagonal_gap(a)
        else:
            b = B[r]
            m = (b[0] + b[1]) / 2
            src, dst, c = (m, m), b, diagonal_gap(b)
        records.append({"from": DiagramPoint.of(*src).to_json(), "to": DiagramPoint.of(*dst).to_json(), "cost": c})
    return value, records


def matching_distance(d1: SizeFunctionDiagram, d2: SizeFunctionDiagram) -> float:
    """Bottleneck cost of an optimal bijection between representative sequences."""
    return optimal_matching(d1, d2)[0]


BRUTEFORCE_BUDGET = 7


def matching_distance_bruteforce(d1: SizeFunctionDiagram, d2: SizeFunctionDiagram) -> float:
    """Exhaustive min over bijections; all points, including those at infinity, treated alike.

    Each point either pairs with a point of the other diagram or goes to
    the diagonal. Limited to ``BRUTEFORCE_BUDGET`` points in total.
    """
    A = [(k, INF) for k in d1.infinity] + d1.expanded()
    B = [(k, INF) for k in d2.infinity] + d2.expanded()
    if len(A) + len(B) > BRUTEFORCE_BUDGET:
        raise ValueError(
            f"bruteforce matching limited to {BRUTEFORCE_BUDGET} points, got {len(A) + len(B)}"
        )
    # pad both sides with diagonal slots so every assignment is a permutation
    n = len(A) + len(B)
    best = INF
    for perm in permutations(range(n)):
        cost = 0.0
        for i, j in enumerate(perm):
            a = A[i] if i < len(A) else None
            b = B[j] if j < len(B) else None
            if a is None and b is None:
                c = 0.0
            elif a is None:
                c = diagonal_gap(b)
            elif b is None:
                c = diagonal_gap(a)
            else:
                c = point_distance(a, b)
            cost = max(cost, c)
            if cost >= best:
                break
        best = min(best, cost)
    return best
