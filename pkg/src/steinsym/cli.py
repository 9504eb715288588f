"""Command-line front end.

Exit codes: 0 success, 1 a check failed (or a solver diverged), 2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from . import geometry as geo
from .capacity import capacity_report
from .confmap import exterior_map, map_to_dict
from .errors import InputError, SteinsymError
from .inequality import (
    check_corollary1,
    check_corollary2,
    check_theorem1,
    corollary1_consequences,
    failed_report,
    run_corpus,
)
from .scene import Scene, load_corpus, load_scene

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2
REPORT_COLUMNS = ("name", "lhs", "rhs", "slack", "pass")
PLOT_COLUMNS = ("scene", "functional_E", "functional_Estar", "slack")


@dataclass(frozen=True)
class RunConfig:
    tol: float = 1e-8
    seed: int = 0
    walkers: int = 10**6
    output_format: str = "json"
    quadrature_tol: float = 1e-12

    def __post_init__(self):
        if not (self.tol > 0 and self.quadrature_tol > 0):
            raise InputError("tolerances must be positive")
        if self.walkers < 2:
            raise InputError("need at least two walkers")
        if self.output_format not in ("json", "csv"):
            raise InputError(f"unknown output format {self.output_format!r}")


def _clean(value):
    """JSON-safe copy: non-finite floats become null."""
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def _json(obj):
    return json.dumps(_clean(obj), indent=2, sort_keys=True, allow_nan=False) + "\n"


def _csv(rows, columns):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if isinstance(v, float) and not math.isfinite(v) else v) for k, v in row.items()})
    return buf.getvalue()


def _emit(text, output):
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _report_rows(reports):
    return [{**r.to_dict(), "pass": r.passed} for r in reports]


def _emit_reports(reports, args, extra=None):
    if args.format == "csv":
        _emit(_csv(_report_rows(reports), REPORT_COLUMNS), args.output)
    else:
        payload = {"reports": _report_rows(reports)}
        payload.update(extra or {})
        _emit(_json(payload), args.output)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK


def _config(args):
    return RunConfig(
        tol=getattr(args, "tol", None) or RunConfig.tol,
        seed=getattr(args, "seed", RunConfig.seed),
        walkers=getattr(args, "walkers", RunConfig.walkers),
        output_format=getattr(args, "format", "json"),
    )


# ---------------------------------------------------------------------------
# subcommands


def cmd_symmetrize(args):
    scene = load_scene(args.scene)
    s = geo.validate(scene.set)
    star = geo.steiner_symmetrize(s, n_slices=args.samples or 64)
    out = Scene(name=f"{scene.name}_star", set=star, description=f"Steiner symmetrization of {scene.name}").to_json()
    out["area"] = geo.area(star)
    out["input_area"] = geo.area(s)
    _emit(_json(out), args.output)
    return EXIT_OK


def cmd_map(args):
    scene = load_scene(args.scene)
    fmap = exterior_map(geo.validate(scene.set))
    out = {"scene": scene.name, **map_to_dict(fmap, rho=args.rho, n_samples=args.samples)}
    _emit(_json(out), args.output)
    return EXIT_OK


def cmd_capacity(args):
    cfg = _config(args)
    scene = load_scene(args.scene)
    rep = capacity_report(scene.set, method=args.method, seed=cfg.seed, n_walkers=cfg.walkers, eps=args.eps)
    _emit(_json({"scene": scene.name, **rep.to_dict()}), args.output)
    return EXIT_OK


def cmd_verify(args):
    cfg = _config(args)
    scenes = [load_scene(p) for p in args.scenes] if args.scenes else load_corpus()
    reports = run_corpus(scenes, tol=args.tol)
    plot = []
    for scene in scenes:
        try:
            rep = check_theorem1(scene.set, args.tol)
            plot.append({"scene": scene.name, "functional_E": rep.lhs, "functional_Estar": rep.rhs, "slack": rep.slack})
        except SteinsymError:
            plot.append({"scene": scene.name, "functional_E": math.nan, "functional_Estar": math.nan, "slack": math.nan})
    if args.plot:
        Path(args.plot).write_text(_csv(plot, PLOT_COLUMNS))
    passed = sum(r.passed for r in reports)
    summary = {
        "checks": len(reports),
        "passed": passed,
        "failed": len(reports) - passed,
        "min_slack": min((r.slack for r in reports if r.error is None), default=None),
        "tol": cfg.tol if args.tol else None,
    }
    code = _emit_reports(reports, args, {"plot": plot, "summary": summary})
    for r in reports:
        if r.error:
            print(f"{r.inputs_digest}: {r.name} failed: {r.error}", file=sys.stderr)
    return code


def _parse_point(text):
    try:
        x, y = (float(t) for t in text.split(","))
    except ValueError as exc:
        raise InputError(f"expected 'x,y', got {text!r}") from exc
    return complex(x, y)


def cmd_corollary1(args):
    scene = load_scene(args.scene)
    w0 = _parse_point(args.w0) if args.w0 else scene.corollary1.get("w0")
    phi = args.phi if args.phi is not None else scene.corollary1.get("phi")
    if w0 is None or phi is None:
        raise InputError("corollary1 needs --w0 and --phi (or a 'corollary1' entry in the scene)")
    tol = args.tol or 1e-6
    reports = [check_corollary1(scene.set, w0, phi, tol=tol)]
    try:
        reports += corollary1_consequences(scene.set, w0)
    except SteinsymError as exc:
        reports.append(failed_report("m_bound", scene.name, exc))
    return _emit_reports(reports, args, {"scene": scene.name})


def cmd_corollary2(args):
    scene = load_scene(args.scene)
    tol = args.tol or 1e-10
    rep = check_corollary2(scene.set, args.alpha, args.beta, args.gamma, tol=tol)
    return _emit_reports([rep], args, {"scene": scene.name})


# ---------------------------------------------------------------------------
# parser


def _positive_int(text):
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser():
    parser = argparse.ArgumentParser(prog="steinsym", description="Steiner symmetrization and capacity inequalities.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=False):
        p.add_argument("--output", help="write to this file instead of stdout")
        p.add_argument("--tol", type=_positive_float, help="pass/fail tolerance")
        if fmt:
            p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("symmetrize", help="Steiner symmetrization of a scene")
    p.add_argument("scene")
    p.add_argument("--samples", type=_positive_int, help="samples per curved piece (default 64)")
    common(p)
    p.set_defaults(func=cmd_symmetrize)

    p = sub.add_parser("map", help="exterior conformal map and its Laurent coefficients")
    p.add_argument("scene")
    p.add_argument("--rho", type=float, default=1.5)
    p.add_argument("--samples", type=_positive_int, default=256)
    common(p)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("capacity", help="logarithmic capacity and the hcap functional")
    p.add_argument("scene")
    p.add_argument("--method", choices=("coeff", "mc", "fekete"), default="coeff")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--walkers", type=_positive_int, default=10**6)
    p.add_argument("--eps", type=_positive_float)
    common(p)
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("verify", help="functional, capacity and comparison checks over scenes (default: built-in corpus)")
    p.add_argument("scenes", nargs="*")
    p.add_argument("--plot", help="write the (scene, functional_E, functional_Estar, slack) CSV here")
    common(p, fmt=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("corollary1", help="line-measure / inradius bound for a capacity-1 set")
    p.add_argument("scene")
    p.add_argument("--w0", help="point 'x,y' of the set")
    p.add_argument("--phi", type=float)
    common(p, fmt=True)
    p.set_defaults(func=cmd_corollary1)

    p = sub.add_parser("corollary2", help="Re a_-1 bound from a vertical-slice hypothesis")
    p.add_argument("scene")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    common(p, fmt=True)
    p.set_defaults(func=cmd_corollary2)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"steinsym: input error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SteinsymError as exc:
        print(f"steinsym: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CHECK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
