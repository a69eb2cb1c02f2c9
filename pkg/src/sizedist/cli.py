"""Command-line front end.

    sizedist diagram sin.csv --svg sin.svg
    sizedist product sin.csv --out product.json
    sizedist match d1.json d2.json --matching-out m.json
    sizedist lower-bound a.csv b.csv --kind both
    sizedist estimate a.csv b.csv --seminorm range
    sizedist paper-example --samples 129
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
import time
from pathlib import Path

import numpy as np

from .bounds import lambda_lower_bound, natural_lower_bound
from .matching import format_extended, optimal_matching
from .persistence import SizeFunctionDiagram, compute_diagram
from .reparam import estimate_upper
from .seminorms import SeminormId
from .size_space import (
    DiscreteSizePair,
    IntervalSamples,
    from_interval_samples,
    pair_to_json,
    product_pair,
    read_graph_json,
    read_interval_csv,
    sample_function,
    snap_values,
)
from .svg import render_svg

logger = logging.getLogger("sizedist")

CRITICAL_POINTS = (0.0, math.pi / 4, math.pi / 2, 3 * math.pi / 4, math.pi)
SHARPNESS_TOL = 0.02


class ConfigError(Exception):
    """Invalid combination of command and options (exit status 2)."""


def _num(v: float) -> str:
    return format_extended(v)


def _dump(obj, path: str | None) -> None:
    text = json.dumps(obj, indent=2)
    if path:
        Path(path).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _load_pair(path: str, snap: float) -> DiscreteSizePair:
    p = Path(path)
    if p.suffix.lower() == ".csv":
        return from_interval_samples(read_interval_csv(p), label=p.stem, snap=snap)
    if p.suffix.lower() == ".json":
        return read_graph_json(p, snap=snap)
    raise ConfigError(f"{path}: expected a .csv interval file or a .json graph file")


def _load_samples(path: str, snap: float) -> IntervalSamples:
    p = Path(path)
    if p.suffix.lower() != ".csv":
        raise ConfigError(f"{path}: estimates need interval samples (.csv)")
    s = read_interval_csv(p)
    return IntervalSamples(s.parameter_points, snap_values(s.values, snap))


def _load_diagram(path: str, snap: float, connectivity: str, product: bool) -> SizeFunctionDiagram:
    p = Path(path)
    if p.suffix.lower() == ".json":
        data = json.loads(p.read_text(encoding="utf-8"))
        if isinstance(data, dict) and "infinity" in data:
            return SizeFunctionDiagram.from_json(data)
    pair = _load_pair(path, snap)
    if product:
        pair = product_pair(pair, connectivity)
    return compute_diagram(pair)


def cmd_diagram(args) -> int:
    pair = _load_pair(args.input, args.snap)
    if args.product:
        pair = product_pair(pair, args.connectivity)
    d = compute_diagram(pair)
    _dump(d.to_json(), args.out)
    if args.svg:
        Path(args.svg).write_text(render_svg(d, title=pair.label), encoding="utf-8")
    return 0


def cmd_product(args) -> int:
    pair = product_pair(_load_pair(args.input, args.snap), args.connectivity)
    _dump(pair_to_json(pair), args.out)
    return 0


def cmd_match(args) -> int:
    d1 = _load_diagram(args.first, args.snap, args.connectivity, args.product)
    d2 = _load_diagram(args.second, args.snap, args.connectivity, args.product)
    value, records = optimal_matching(d1, d2)
    print(_num(value))
    if args.matching_out:
        _dump(records, args.matching_out)
    return 0


def cmd_lower_bound(args) -> int:
    a, b = _load_pair(args.first, args.snap), _load_pair(args.second, args.snap)
    reports = {}
    if args.kind in ("natural", "both"):
        reports["natural"] = natural_lower_bound(a, b)
    if args.kind in ("lambda", "both"):
        reports["lambda"] = lambda_lower_bound(a, b, args.connectivity)
    for name, rep in reports.items():
        print(f"{name}: {_num(rep.bound_value)}")
        for note in rep.notes:
            print(f"  note: {note}", file=sys.stderr)
    if args.out:
        _dump({k: r.to_json() for k, r in reports.items()}, args.out)
    return 0


def cmd_estimate(args) -> int:
    a, b = _load_samples(args.first, args.snap), _load_samples(args.second, args.snap)
    est = estimate_upper(a, b, args.seminorm, coarse=args.coarse)
    print(_num(est.value))
    if args.out:
        _dump(est.to_json(), args.out)
    return 0


def paper_example(samples: int = 129, coarse: int | None = None, connectivity: str = "strong") -> dict:
    """sin t against 2 sin 2t on [0, pi]: both lower bounds, both upper
    estimates and the comparisons of sin 2t and sin t with the zero
    function."""
    if samples < 5:
        raise ConfigError("paper-example needs at least 5 samples")
    t0 = time.perf_counter()
    phi = sample_function(np.sin, samples, include=CRITICAL_POINTS)
    psi = sample_function(lambda t: 2 * np.sin(2 * t), samples, include=CRITICAL_POINTS)
    pa, pb = from_interval_samples(phi, "sin t"), from_interval_samples(psi, "2 sin 2t")

    natural = natural_lower_bound(pa, pb)
    lam = lambda_lower_bound(pa, pb, connectivity)
    sup_est = estimate_upper(phi, psi, SeminormId.SUP)
    range_est = estimate_upper(phi, psi, SeminormId.RANGE, coarse=coarse)

    zero = sample_function(lambda t: 0 * t, samples, include=CRITICAL_POINTS)
    motivating = {}
    for name, f in (("sin 2t", lambda t: np.sin(2 * t)), ("sin t", np.sin)):
        s = sample_function(f, samples, include=CRITICAL_POINTS)
        motivating[name] = {
            "range": estimate_upper(s, zero, SeminormId.RANGE).value,
            "sup": estimate_upper(s, zero, SeminormId.SUP).value,
        }

    return {
        "samples": len(phi),
        "natural_lower": natural.bound_value,
        "natural_upper": sup_est.value,
        "lambda_lower": lam.bound_value,
        "lambda_upper": range_est.value,
        "natural_sharp": abs(sup_est.value - natural.bound_value) <= SHARPNESS_TOL,
        "lambda_sharp": abs(range_est.value - lam.bound_value) <= SHARPNESS_TOL,
        "diagrams": {
            "sin t": natural.left_diagram.to_json(),
            "2 sin 2t": natural.right_diagram.to_json(),
            "product sin t": lam.left_diagram.to_json(),
            "product 2 sin 2t": lam.right_diagram.to_json(),
        },
        "against_zero": motivating,
        "seconds": time.perf_counter() - t0,
    }


def cmd_paper_example(args) -> int:
    rep = paper_example(args.samples, args.coarse, args.connectivity)
    print(f"grid: {rep['samples']} samples on [0, pi], critical points included")
    print(f"{'quantity':<44}{'lower':>16}{'upper':>16}")
    print(f"{'natural pseudodistance (sup)':<44}{_num(rep['natural_lower']):>16}{_num(rep['natural_upper']):>16}")
    print(f"{'range pseudodistance (max - min)':<44}{_num(rep['lambda_lower']):>16}{_num(rep['lambda_upper']):>16}")
    verdict = "sharp" if rep["lambda_sharp"] else "NOT sharp"
    print(f"product-pair lower bound: {verdict} (|upper - lower| <= {SHARPNESS_TOL})")
    print("against the zero function:")
    for name, vals in rep["against_zero"].items():
        print(f"  {name:<8} range {_num(vals['range']):>8}   sup {_num(vals['sup']):>8}")
    if args.out:
        _dump(rep, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--snap", type=float, default=0.0, help="snap tolerance for vertex values (0 = off)")
    common.add_argument("--connectivity", choices=("strong", "4"), default="strong")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="sizedist", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diagram", parents=[common], help="cornerpoints of a size function")
    p.add_argument("input")
    p.add_argument("--product", action="store_true", help="use the product pair")
    p.add_argument("--svg")
    p.add_argument("--out")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("product", parents=[common], help="write the product pair as graph JSON")
    p.add_argument("input")
    p.add_argument("--out")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("match", parents=[common], help="matching distance of two diagrams")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--product", action="store_true", help="compare product pairs of pair inputs")
    p.add_argument("--matching-out")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("lower-bound", parents=[common], help="lower bounds from size functions")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--kind", choices=("natural", "lambda", "both"), default="both")
    p.add_argument("--out")
    p.set_defaults(func=cmd_lower_bound)

    p = sub.add_parser("estimate", parents=[common], help="upper estimate by monotone reparametrization")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--seminorm", choices=[s.value for s in SeminormId], default="sup")
    p.add_argument("--coarse", type=int, nargs="?", const=64, default=None,
                   help="bucket the range sweep into N evenly spaced levels (default 64)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("paper-example", parents=[common], help="sin t vs 2 sin 2t on [0, pi]")
    p.add_argument("--samples", type=int, default=129)
    p.add_argument("--coarse", type=int, nargs="?", const=64, default=None,
                   help="bucket the range sweep into N evenly spaced levels (default 64)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_paper_example)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    if getattr(args, "samples", 2) < 2 or (getattr(args, "coarse", None) or 1) < 1 or args.snap < 0:
        print("sizedist: error: --samples must be >= 2, --coarse >= 1, --snap >= 0", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"sizedist: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"sizedist: malformed input: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
