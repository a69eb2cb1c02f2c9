"""Size functions, matching distance and bounds for natural and range pseudodistances."""

from .bounds import BoundReport, lambda_lower_bound, natural_lower_bound, restriction_identity_check
from .matching import INF, matching_distance, matching_distance_bruteforce, point_distance
from .persistence import SizeFunctionDiagram, compute_diagram, ell_bruteforce, ell_query
from .reparam import Estimate, MonotonePath, estimate_upper, path_cost
from .seminorms import SeminormId, check_axioms, evaluate
from .size_space import (
    DiscreteSizePair,
    IntervalSamples,
    from_graph,
    from_interval_samples,
    product_pair,
    sample_function,
)

__all__ = [
    "BoundReport",
    "DiscreteSizePair",
    "Estimate",
    "INF",
    "IntervalSamples",
    "MonotonePath",
    "SeminormId",
    "SizeFunctionDiagram",
    "check_axioms",
    "compute_diagram",
    "ell_bruteforce",
    "ell_query",
    "estimate_upper",
    "evaluate",
    "from_graph",
    "from_interval_samples",
    "lambda_lower_bound",
    "matching_distance",
    "matching_distance_bruteforce",
    "natural_lower_bound",
    "path_cost",
    "point_distance",
    "product_pair",
    "restriction_identity_check",
    "sample_function",
]

__version__ = "0.1.0"
