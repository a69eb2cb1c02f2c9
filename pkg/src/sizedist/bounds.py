"""Certified lower bounds for the natural and range pseudodistances.

Both bounds are matching distances between size functions: of the pairs
themselves (natural pseudodistance) or of their product pairs with
Phi(p, q) = phi(p) - phi(q) (range pseudodistance).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .matching import INF, optimal_matching
from .persistence import SizeFunctionDiagram, compute_diagram
from .reparam import MonotonePath, _oriented
from .size_space import DiscreteSizePair, IntervalSamples, product_pair

__all__ = [
    "BoundReport",
    "natural_lower_bound",
    "lambda_lower_bound",
    "restriction_identity_check",
    "RestrictionReport",
]

NATURAL = "natural-lower"
LAMBDA = "lambda-lower"


@dataclass
class BoundReport:
    bound_value: float
    kind: str
    left_diagram: SizeFunctionDiagram
    right_diagram: SizeFunctionDiagram
    matching: list = field(default_factory=list)
    provenance: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "bound_value": None if self.bound_value == INF else self.bound_value,
            "infinite": self.bound_value == INF,
            "kind": self.kind,
            "left_diagram": self.left_diagram.to_json(),
            "right_diagram": self.right_diagram.to_json(),
            "matching": self.matching,
            "provenance": self.provenance,
            "notes": self.notes,
        }


def _report(kind, da, db, provenance):
    value, records = optimal_matching(da, db)
    notes = []
    if len(da.infinity) != len(db.infinity):
        notes.append(
            f"component counts differ ({len(da.infinity)} vs {len(db.infinity)}): "
            "no homeomorphism exists, the bound carries no information"
        )
    return BoundReport(value, kind, da, db, records, provenance, notes)


def natural_lower_bound(a: DiscreteSizePair, b: DiscreteSizePair) -> BoundReport:
    """Matching distance of the size functions of ``a`` and ``b``."""
    prov = {"left": a.label, "right": b.label, "n_left": a.n_vertices, "n_right": b.n_vertices}
    return _report(NATURAL, compute_diagram(a), compute_diagram(b), prov)


def lambda_lower_bound(a: DiscreteSizePair, b: DiscreteSizePair, connectivity: str = "strong") -> BoundReport:
    """Matching distance of the size functions of the product pairs."""
    pa, pb = product_pair(a, connectivity), product_pair(b, connectivity)
    prov = {
        "left": a.label,
        "right": b.label,
        "n_left": a.n_vertices,
        "n_right": b.n_vertices,
        "connectivity": connectivity,
    }
    return _report(LAMBDA, compute_diagram(pa), compute_diagram(pb), prov)


@dataclass
class RestrictionReport:
    product_side: float
    range_side: float
    equal: bool


def _exact_ints(*arrays: np.ndarray) -> tuple[list[np.ndarray], int]:
    """Scale float arrays to integers over a shared power-of-two denominator."""
    fracs = [[Fraction(float(v)) for v in arr] for arr in arrays]
    denom = max((f.denominator for fs in fracs for f in fs), default=1)
    return [np.array([int(f * denom) for f in fs], dtype=object) for fs in fracs], denom


def restriction_identity_check(a: IntervalSamples, b: IntervalSamples, h: MonotonePath) -> RestrictionReport:
    """Compare max |Phi - Psi o (h, h)| with the range of phi - psi o h.

    The points of the discretized space are the steps of ``h``. Both
    sides are evaluated in exact rational arithmetic, so ``equal`` is an
    exact comparison.
    """
    h.check_sizes(len(a), len(b))
    bv = _oriented(b, h.orientation)
    (av_int, bv_int), denom = _exact_ints(a.values, bv)
    phi = av_int[h.steps[:, 0]]
    psi = bv_int[h.steps[:, 1]]
    big_phi = phi[:, None] - phi[None, :]
    big_psi = psi[:, None] - psi[None, :]
    product_side = max(abs(x) for x in (big_phi - big_psi).ravel())
    diff = phi - psi
    range_side = max(diff) - min(diff)
    return RestrictionReport(
        float(Fraction(product_side, denom)),
        float(Fraction(range_side, denom)),
        product_side == range_side,
    )
