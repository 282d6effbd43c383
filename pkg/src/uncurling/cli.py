"""Command-line front end.

Reads algebra files (JSON structure-constant tables), runs the pipeline, and
emits deterministic JSON reports: identical inputs and flags produce
byte-identical output.  `-` denotes stdin so subcommands compose in shells.

Exit codes: 0 success, 1 validation failure, 2 inconsistent family or
non-normalized metric, 3 numeric failure, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import euclid
from .algebra import (
    Algebra,
    algebra_from_json,
    algebra_to_json,
    left_regular,
    numeric_inverse,
    symbolic_inverse,
    unit_norm_squared,
    usual_norm_poly,
    validate,
)
from .catalog import builtin_algebra
from .errors import (
    AlgebraError,
    NegativeFormError,
    NonUnitError,
    NotNormalizedError,
    PathThroughNonUnitError,
    QuadratureNotConvergedError,
    SingularMatrixError,
)
from .uncurl import (
    SymMetric,
    comparison_signature_multiset,
    distinguish,
    invariant_report,
    normalized_family,
    sample_units,
    uncurling_space,
    verify_uncurling,
)
from .unital import (
    PathSpec,
    QuadConfig,
    check_gradient,
    check_homogeneity,
    check_inversion,
    kernel_orthogonal_projector,
    make_evaluator,
    recover_inverse,
)

SCHEMA = "uncurl-report/1"

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_INCONSISTENT = 2
EXIT_NUMERIC = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits with code 2
        raise UsageError(message)


@dataclass
class RunConfig:
    tolerance: float = 1e-10
    order: int = 16
    max_depth: int = 20
    fd_step: float = 1e-5
    seed: int = 0
    output: str | None = None

    def quad(self) -> QuadConfig:
        return QuadConfig(order=self.order, tolerance=self.tolerance, max_depth=self.max_depth)


# -- serialization helpers ----------------------------------------------------


def _sym_json(metric: SymMetric) -> list[list[str]]:
    return [[str(x) for x in row] for row in metric.rows]


def _matrix_of_polys(pm) -> list[list[str]]:
    return [[str(p) for p in row] for row in pm.entries]


def _report_invariants(a: Algebra) -> dict:
    rep = invariant_report(a)
    return {
        "name": rep.name,
        "dim": rep.dim,
        "dim_uncurling": rep.dim_uncurling,
        "dim_normalized_family": rep.dim_normalized_family,
        "unit_norm_squared": rep.unit_norm_squared,
        "particular_signature": list(rep.particular_signature)
        if rep.particular_signature is not None
        else None,
        "signature_samples": [
            {"offsets": list(off), "signature": list(sig)}
            for off, sig in rep.signature_samples
        ],
        "comparison_signature_multiset": [
            list(sig) for sig in sorted(comparison_signature_multiset(rep))
        ],
        "admits_positive_definite_normalized": rep.admits_positive_definite_normalized,
    }


# -- input helpers --------------------------------------------------------------


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _load_algebra_arg(path: str) -> Algebra:
    text = _read_text(path)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraError(f"input is not valid JSON: {exc}") from exc
    return algebra_from_json(obj)


def _parse_metric_arg(a: Algebra, spec: str) -> SymMetric:
    if spec == "canonical":
        family = normalized_family(a)
        if family.inconsistent:
            raise NotNormalizedError(f"{a.name}: normalized family is inconsistent")
        return family.particular
    text = _read_text(spec[1:]) if spec.startswith("@") else spec
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--metric is not valid JSON: {exc}") from exc
    from .algebra import _parse_rational

    try:
        return SymMetric.from_rows([[_parse_rational(x) for x in row] for row in rows])
    except (TypeError, ValueError, AlgebraError) as exc:
        raise UsageError(f"--metric is not a symmetric rational matrix: {exc}") from exc


def _parse_point_arg(spec: str, dim: int) -> np.ndarray:
    try:
        if spec.lstrip().startswith("["):
            vals = json.loads(spec)
        else:
            vals = [float(x) for x in spec.split(",")]
    except (json.JSONDecodeError, ValueError) as exc:
        raise UsageError(f"--point must be a JSON array or comma-separated floats: {exc}")
    pt = np.asarray(vals, dtype=float)
    if pt.shape != (dim,):
        raise UsageError(f"--point must have {dim} coordinates")
    return pt


# -- commands --------------------------------------------------------------------


def cmd_validate(args, cfg: RunConfig) -> tuple[dict, int]:
    text = _read_text(args.file)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        return {"schema": SCHEMA, "error": {"type": "AlgebraError", "message": str(exc)}}, EXIT_VALIDATION
    try:
        if not isinstance(obj, dict) or "table" not in obj:
            raise AlgebraError("algebra file must be an object with a 'table'")
        from .algebra import _parse_rational

        table = [
            [[_parse_rational(x) for x in row] for row in plane] for plane in obj["table"]
        ]
        rep = validate(table)
    except AlgebraError as exc:
        return {"schema": SCHEMA, "error": {"type": "AlgebraError", "message": str(exc)}}, EXIT_VALIDATION
    supplied = obj.get("unit")
    unit_ok = rep.unit is not None
    if unit_ok and supplied is not None:
        from .algebra import _parse_rational

        unit_ok = tuple(_parse_rational(x) for x in supplied) == rep.unit
    report = {
        "schema": SCHEMA,
        "name": obj.get("name"),
        "dim": rep.dim,
        "associative": rep.associative,
        "witness": list(rep.witness) if rep.witness else None,
        "unit_found": rep.unit is not None,
        "unit": [str(x) for x in rep.unit] if rep.unit is not None else None,
        "unit_matches_supplied": unit_ok,
    }
    ok = rep.associative and unit_ok
    return report, EXIT_OK if ok else EXIT_VALIDATION


def cmd_repinfo(args, cfg: RunConfig) -> tuple[dict, int]:
    a = _load_algebra_arg(args.file)
    inv = symbolic_inverse(a)
    return {
        "schema": SCHEMA,
        "name": a.name,
        "dim": a.dim,
        "unit": [str(x) for x in a.unit],
        "left_regular": _matrix_of_polys(left_regular(a)),
        "usual_norm": str(usual_norm_poly(a)),
        "unit_norm_squared": unit_norm_squared(a),
        "symbolic_inverse": {
            "numerator": [str(p) for p in inv.numerator],
            "denominator": str(inv.denominator),
        },
    }, EXIT_OK


def cmd_uncurl(args, cfg: RunConfig) -> tuple[dict, int]:
    a = _load_algebra_arg(args.file)
    space = uncurling_space(a)
    return {
        "schema": SCHEMA,
        "name": a.name,
        "dimension": space.dimension,
        "basis": [_sym_json(b) for b in space.basis],
    }, EXIT_OK


def cmd_normalize(args, cfg: RunConfig) -> tuple[dict, int]:
    a = _load_algebra_arg(args.file)
    family = normalized_family(a)
    report = {
        "schema": SCHEMA,
        "name": a.name,
        "inconsistent": family.inconsistent,
        "particular": _sym_json(family.particular) if family.particular else None,
        "directions": [_sym_json(d) for d in family.directions],
    }
    if family.inconsistent:
        report["error"] = {
            "type": "InconsistentFamilyError",
            "message": "normalization constraints have no solution on the uncurling space",
        }
        return report, EXIT_INCONSISTENT
    return report, EXIT_OK


def cmd_invariants(args, cfg: RunConfig) -> tuple[dict, int]:
    a = _load_algebra_arg(args.file)
    report = {"schema": SCHEMA}
    report.update(_report_invariants(a))
    return report, EXIT_OK


def cmd_compare(args, cfg: RunConfig) -> tuple[dict, int]:
    a = _load_algebra_arg(args.file1)
    b = _load_algebra_arg(args.file2)
    res = distinguish(a, b)
    return {
        "schema": SCHEMA,
        "left": a.name,
        "right": b.name,
        "distinguishable": res.distinguishable,
        "witness": res.witness,
    }, EXIT_OK


def cmd_unorm(args, cfg: RunConfig) -> tuple[dict, int]:
    a = _load_algebra_arg(args.file)
    metric = _parse_metric_arg(a, args.metric)
    ev = make_evaluator(a, metric, cfg.quad())
    point = _parse_point_arg(args.point, a.dim)
    path = None
    if args.path:
        try:
            waypoints = json.loads(args.path)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--path must be a JSON array of points: {exc}")
        path = PathSpec.through(*waypoints)
    value = ev.eval(point, path)
    used_path = (
        [list(map(float, p)) for p in path.waypoints]
        if path
        else [[float(x) for x in a.unit], point.tolist()]
    )
    return {
        "schema": SCHEMA,
        "name": a.name,
        "metric": _sym_json(metric),
        "point": point.tolist(),
        "value": value,
        "path": used_path,
        "residuals": {},
    }, EXIT_OK


def cmd_check(args, cfg: RunConfig) -> tuple[dict, int]:
    a = _load_algebra_arg(args.file)
    metric = _parse_metric_arg(a, args.metric)
    ev = make_evaluator(a, metric, cfg.quad())
    rng = np.random.default_rng(cfg.seed)
    pts = sample_units(a, rng, args.points)
    worst = {
        "homogeneity": 0.0,
        "inversion": 0.0,
        "gradient": 0.0,
        "scalar_product": 0.0,
        "inverse_recovery": 0.0,
    }
    proj = kernel_orthogonal_projector(ev)
    for s in pts:
        alpha = float(rng.uniform(0.5, 2.0))
        worst["homogeneity"] = max(worst["homogeneity"], check_homogeneity(ev, s, alpha))
        worst["inversion"] = max(worst["inversion"], check_inversion(ev, s))
        g = check_gradient(ev, s, cfg.fd_step)
        worst["gradient"] = max(worst["gradient"], g.field_residual)
        worst["scalar_product"] = max(worst["scalar_product"], g.scalar_product_residual)
        rec = recover_inverse(ev, s, cfg.fd_step)
        true_inv = numeric_inverse(a, s)
        worst["inverse_recovery"] = max(
            worst["inverse_recovery"], float(np.max(np.abs(rec - proj @ true_inv)))
        )
    curl = verify_uncurling(a, metric, trials=args.points, seed=cfg.seed, step=cfg.fd_step)
    return {
        "schema": SCHEMA,
        "name": a.name,
        "metric": _sym_json(metric),
        "seed": cfg.seed,
        "points": args.points,
        "residuals": {**worst, "finite_difference_curl": curl.max_residual},
    }, EXIT_OK


def cmd_demo(args, cfg: RunConfig) -> tuple[dict, int]:
    if args.topic != "pythagoras":
        raise UsageError(f"unknown demo topic {args.topic!r}")
    report = {"schema": SCHEMA, "demo": "pythagoras"}
    report.update(euclid.demo_report(seed=cfg.seed))
    return report, EXIT_OK


def cmd_builtin(args, cfg: RunConfig) -> tuple[dict, int]:
    try:
        a = builtin_algebra(args.name)
    except AlgebraError as exc:
        raise UsageError(str(exc)) from exc
    return algebra_to_json(a), EXIT_OK


# -- driver -----------------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="uncurling", description=__doc__)
    parser.add_argument("--tolerance", type=float, default=1e-10)
    parser.add_argument("--order", type=int, default=16)
    parser.add_argument("--max-depth", type=int, default=20)
    parser.add_argument("--fd-step", type=float, default=1e-5)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--output", default=None, help="write the JSON report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check associativity and the unit of an algebra file")
    p.add_argument("file")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("repinfo", help="left regular representation, norm polynomial, symbolic inverse")
    p.add_argument("file")
    p.set_defaults(fn=cmd_repinfo)

    p = sub.add_parser("uncurl", help="basis and dimension of the uncurling-metric space")
    p.add_argument("file")
    p.set_defaults(fn=cmd_uncurl)

    p = sub.add_parser("normalize", help="normalized uncurling family: particular metric and directions")
    p.add_argument("file")
    p.set_defaults(fn=cmd_normalize)

    p = sub.add_parser("invariants", help="isomorphism-invariant report")
    p.add_argument("file")
    p.set_defaults(fn=cmd_invariants)

    p = sub.add_parser("compare", help="distinguish two algebras by their invariants")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("unorm", help="evaluate the unital norm at a point")
    p.add_argument("file")
    p.add_argument("--metric", required=True, help='"canonical", inline JSON, or @file')
    p.add_argument("--point", required=True)
    p.add_argument("--path", default=None)
    p.set_defaults(fn=cmd_unorm)

    p = sub.add_parser("check", help="full numeric property suite for a metric")
    p.add_argument("file")
    p.add_argument("--metric", required=True)
    p.add_argument("--points", type=int, default=20)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("demo", help="plane-geometry demonstration")
    p.add_argument("topic")
    p.set_defaults(fn=cmd_demo)

    p = sub.add_parser("builtin", help="emit a builtin algebra as an algebra file")
    p.add_argument("name")
    p.set_defaults(fn=cmd_builtin)

    return parser


def _emit(report: dict, cfg: RunConfig) -> None:
    text = json.dumps(report, indent=2) + "\n"
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cfg = RunConfig(
        tolerance=args.tolerance,
        order=args.order,
        max_depth=args.max_depth,
        fd_step=args.fd_step,
        seed=args.seed,
        output=args.output,
    )
    if cfg.tolerance <= 0 or cfg.fd_step <= 0:
        print("usage error: tolerances must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        report, code = args.fn(args, cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AlgebraError as exc:
        _emit({"schema": SCHEMA, "error": {"type": type(exc).__name__, "message": str(exc)}}, cfg)
        return EXIT_VALIDATION
    except (NotNormalizedError,) as exc:
        _emit({"schema": SCHEMA, "error": {"type": type(exc).__name__, "message": str(exc)}}, cfg)
        return EXIT_INCONSISTENT
    except (
        NonUnitError,
        PathThroughNonUnitError,
        QuadratureNotConvergedError,
        NegativeFormError,
        SingularMatrixError,
    ) as exc:
        _emit({"schema": SCHEMA, "error": {"type": type(exc).__name__, "message": str(exc)}}, cfg)
        return EXIT_NUMERIC
    _emit(report, cfg)
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
