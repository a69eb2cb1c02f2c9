"""Reparametrization-invariant seminorms on finite value lists.

Two instances ship: ``sup`` (max |v|) and ``range`` (max v - min v).
Further ones can be added with :func:`register`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = ["SeminormId", "evaluate", "register", "check_axioms", "AxiomReport"]


class SeminormId(str, enum.Enum):
    SUP = "sup"
    RANGE = "range"


def _sup(v: np.ndarray) -> float:
    return float(np.max(np.abs(v)))


def _range(v: np.ndarray) -> float:
    return float(np.max(v) - np.min(v))


_REGISTRY: dict[str, Callable[[np.ndarray], float]] = {"sup": _sup, "range": _range}


def register(tag: str, fn: Callable[[np.ndarray], float]) -> None:
    """Add a seminorm; ``fn`` receives a non-empty float array."""
    _REGISTRY[tag] = fn


def _tag(s) -> str:
    return s.value if isinstance(s, SeminormId) else str(s)


def evaluate(s: SeminormId | str, values) -> float:
    v = np.asarray(values, dtype=float).ravel()
    if v.size == 0:
        raise ValueError("seminorm of an empty value list is undefined")
    if not np.all(np.isfinite(v)):
        raise ValueError("seminorm arguments must be finite")
    try:
        fn = _REGISTRY[_tag(s)]
    except KeyError:
        raise ValueError(f"unknown seminorm {s!r}") from None
    return fn(v)


@dataclass
class AxiomReport:
    seminorm: str
    trials: int
    seed: int
    passed: dict[str, int] = field(default_factory=dict)
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def summary(self) -> str:
        parts = ", ".join(f"{k}: {v}/{self.trials}" for k, v in self.passed.items())
        return f"{self.seminorm}: {parts}" + ("" if self.ok else f" ({len(self.counterexamples)} failures)")


def check_axioms(s: SeminormId | str, trials: int = 1000, seed: int = 0, rtol: float = 1e-12) -> AxiomReport:
    """Randomized check of nonnegativity, homogeneity, subadditivity and
    invariance under relabelling of vertices.

    Floating-point comparisons allow ``rtol`` relative slack. The first
    homogeneity trial uses a zero scalar.
    """
    rng = np.random.default_rng(seed)
    tag = _tag(s)
    report = AxiomReport(tag, trials, seed, {k: 0 for k in ("i", "ii", "iii", "iv")})

    def record(axiom, ok, **data):
        if ok:
            report.passed[axiom] += 1
        else:
            report.counterexamples.append({"axiom": axiom, **data})

    for trial in range(trials):
        n = int(rng.integers(1, 40))
        scale = 10.0 ** rng.uniform(-3, 3)
        f = rng.normal(size=n) * scale
        g = rng.normal(size=n) * scale
        sf, sg = evaluate(tag, f), evaluate(tag, g)
        slack = rtol * (sf + sg + 1e-300)

        record("i", sf >= 0, trial=trial, values=f.tolist())

        lam = 0.0 if trial == 0 else float(rng.normal() * 10.0 ** rng.uniform(-2, 2))
        lhs, rhs = evaluate(tag, lam * f), abs(lam) * sf
        record("ii", abs(lhs - rhs) <= rtol * max(rhs, 1e-300) or lhs == rhs, trial=trial, lam=lam, lhs=lhs, rhs=rhs)

        s_sum = evaluate(tag, f + g)
        record("iii", s_sum <= sf + sg + slack, trial=trial, lhs=s_sum, rhs=sf + sg)

        perm = rng.permutation(n)
        s_perm = evaluate(tag, f[perm])
        record("iv", s_perm == sf, trial=trial, lhs=s_perm, rhs=sf)
    return report
