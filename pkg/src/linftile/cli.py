"""Command-line entry point: ``python -m linftile <command> ...``.

Commands: locate, tiles, render, verify, embed. Verification commands print
a JSON report and exit with status 0 iff it has no failures. Coordinates
starting with ``-`` need the ``--flag=value`` form (``--point=-1,2``).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from .core import DimensionMismatch, scalar
from .covering import locate_sigma, sigma_spec
from .embedding import (
    EmbeddingModel,
    NotNorming,
    NormingSet,
    SearchExhausted,
    build_pairs,
)
from .formats import (
    parse_point,
    parse_window,
    pairs_to_list,
    read_norming,
    read_pairs,
    read_schedule,
    read_space,
    write_pairs,
)
from .refinement import DEFAULT_SCHEDULE, Schedule, TileOverflow, UncoveredPoint, locate_tau, tau_in_window, tau_spec
from .render import render_svg
from .verifier import (
    MUTATIONS,
    Report,
    SampleSpec,
    grid_points,
    run_mutation,
    schedule_suite,
    verify_pullback,
    verify_sigma,
    verify_tau,
)

EXIT_FAIL = 1
EXIT_USAGE = 2


class CliError(Exception):
    pass


def _schedule(args) -> Schedule:
    return read_schedule(args.schedule) if getattr(args, "schedule", None) else DEFAULT_SCHEDULE


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _model(args, dim: Optional[int]) -> EmbeddingModel:
    """Pairs file, else pairs built from --space/--norming, else the identity."""
    if args.space:
        space = read_space(args.space)
        if dim is not None and dim != space.dim:
            raise DimensionMismatch(f"--dim {dim} does not match the space dimension {space.dim}")
        if getattr(args, "pairs", None):
            return read_pairs(args.pairs, space)
        norming = read_norming(args.norming) if args.norming else NormingSet.standard(space)
        return build_pairs(space, norming)
    if dim is None:
        raise CliError("give --dim or --space")
    return EmbeddingModel.identity(dim)


# --- commands ----------------------------------------------------------------


def cmd_locate(args) -> int:
    p = parse_point(args.point)
    if args.dim is not None and len(p) != args.dim:
        raise DimensionMismatch(f"point has {len(p)} coordinates, --dim is {args.dim}")
    sched = _schedule(args)
    if args.sigma:
        sid = locate_sigma(p)
        rows = [(str(sid), str(sigma_spec(sid, len(p))))]
    else:
        if args.space:
            model = _model(args, len(p))
            image = model.embed(p)
            dim = model.gamma
        else:
            image, dim = p, len(p)
        rows = [(str(t), str(tau_spec(t, dim, sched))) for t in locate_tau(image, sched)]
    if args.json:
        print(json.dumps([{"id": i, "box": b} for i, b in rows]))
    else:
        for i, b in rows:
            print(f"{i}  {b}")
    return 0


def cmd_tiles(args) -> int:
    w = parse_window(args.window)
    if args.dim is not None and len(w) != args.dim:
        raise DimensionMismatch(f"window has {len(w)} axes, --dim is {args.dim}")
    try:
        ids = tau_in_window(w, _schedule(args), args.cap)
    except TileOverflow as exc:
        print(json.dumps({"status": "overflow", "cap": exc.cap, "count": len(exc.ids)}))
        return 0
    print(json.dumps({"status": "ok", "count": len(ids), "ids": [str(t) for t in ids]}, indent=2))
    return 0


def cmd_render(args) -> int:
    w = parse_window(args.window)
    svg = render_svg(w, _schedule(args), args.max_slab, labels=not args.no_labels)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return 0


def _finish(reports: Sequence[Report], out: Optional[str], timing: bool = True) -> int:
    body = [r.to_dict(timing) for r in reports]
    text = json.dumps(body[0] if len(body) == 1 else body, indent=2)
    _emit(text, out)
    return 0 if all(r.ok for r in reports) else EXIT_FAIL


def cmd_verify(args) -> int:
    sched = _schedule(args)
    if args.suite == "mutations":
        reports = []
        for name in MUTATIONS:
            caught = Report(f"mutation:{name}")
            caught.checks = 1
            results = run_mutation(name, args.seed)
            caught.stats = {r.suite + "_failures": len(r.failures) for r in results}
            if all(r.ok for r in results):
                caught.fail("mutation survived every suite")
            reports.append(caught)
        return _finish(reports, args.out)
    if args.suite == "pullback":
        model = _model(args, args.dim)
        spec = SampleSpec.cube(model.space.dim, args.radius, args.samples, args.seed, args.mode)
        norming = read_norming(args.norming) if args.norming else None
        return _finish([verify_pullback(model, sched, spec, norming=norming)], args.out)
    if args.suite == "schedule":
        model = _model(args, args.dim) if args.space else None
        gamma = model.gamma if model else args.dim
        if gamma is None:
            raise CliError("give --dim or --space")
        return _finish([schedule_suite(sched, gamma, args.levels, model)], args.out)
    if args.dim is None:
        raise CliError("--dim is required for this suite")
    spec = SampleSpec.cube(args.dim, args.radius, args.samples, args.seed, args.mode)
    grid = grid_points(args.dim) if args.dim <= 4 else ()
    if args.suite == "sigma":
        report = verify_sigma(args.dim, spec, extra_points=grid)
    else:
        report = verify_tau(args.dim, sched, spec, windows=args.windows, window_cap=args.cap, extra_points=grid)
    return _finish([report], args.out)


def cmd_embed(args) -> int:
    space = read_space(args.space)
    norming = read_norming(args.norming) if args.norming else NormingSet.standard(space)
    model = build_pairs(space, norming)
    if args.out:
        write_pairs(model, args.out)
    spec = SampleSpec.cube(space.dim, args.radius, args.samples, args.seed, "adversarial")
    report = verify_pullback(model, _schedule(args), spec, norming=norming)
    body = report.to_dict()
    body["pairs"] = pairs_to_list(model)
    print(json.dumps(body, indent=2))
    return 0 if report.ok else EXIT_FAIL


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="linftile", description="Exact tilings of l-infinity and their pullbacks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--schedule", help="schedule JSON file (default: a = 10^-j 2^n, eps = 9/100)")

    p = sub.add_parser("locate", help="tiles (or covering member) containing a point")
    p.add_argument("--dim", type=int)
    p.add_argument("--point", required=True, help="comma-separated rationals, e.g. 11/5,0 or 0.5,-0.3")
    p.add_argument("--sigma", action="store_true", help="locate in the covering instead of the tiling")
    p.add_argument("--space", help="space file; locate x in the pulled-back tiling of X")
    p.add_argument("--pairs", help="pairs file for --space (default: build from --norming)")
    p.add_argument("--norming", help="norming-set file for --space")
    p.add_argument("--json", action="store_true")
    common(p)
    p.set_defaults(func=cmd_locate)

    p = sub.add_parser("tiles", help="tiles meeting a closed window")
    p.add_argument("--dim", type=int)
    p.add_argument("--window", required=True, help="lo1,hi1,lo2,hi2,...")
    p.add_argument("--cap", type=int, default=10_000)
    common(p)
    p.set_defaults(func=cmd_tiles)

    p = sub.add_parser("render", help="SVG picture of a 2-D window")
    p.add_argument("--window", required=True, help="lo1,hi1,lo2,hi2")
    p.add_argument("--max-slab", type=int, default=3)
    p.add_argument("--no-labels", action="store_true")
    p.add_argument("--out")
    common(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=["sigma", "tau", "pullback", "schedule", "mutations"])
    p.add_argument("--dim", type=int)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=["uniform", "adversarial"], default="adversarial")
    p.add_argument("--radius", default="16", help="samples are drawn from [-radius, radius]^d")
    p.add_argument("--cap", type=int, default=400, help="tile cap for the random windows")
    p.add_argument("--windows", type=int, default=50)
    p.add_argument("--levels", type=int, default=12, help="schedule suite checks n = 0..levels")
    p.add_argument("--space")
    p.add_argument("--norming")
    p.add_argument("--pairs")
    p.add_argument("--out")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("embed", help="build norming pairs and check the pulled-back tiling")
    p.add_argument("--space", required=True)
    p.add_argument("--norming")
    p.add_argument("--out", help="write the pairs file here")
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--radius", default="16")
    common(p)
    p.set_defaults(func=cmd_embed)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "radius"):
        args.radius = scalar(args.radius)
    try:
        return args.func(args)
    except (NotNorming, SearchExhausted) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (CliError, ValueError, TypeError, UncoveredPoint, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
