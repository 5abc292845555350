"""
Command-line front end.

Every command prints one JSON object ``{"command", "result", "residuals",
"config"}`` to stdout. Exit codes: 0 success, 1 internal error, 2 invalid
input, 3 a map failed to converge, 4 a verification check failed.
"""

from __future__ import annotations

import argparse
import inspect
import math
import sys

import numpy as np

from . import io as jio
from .centers import CenterKind
from .conformal import MapConfig, build_exterior_map, build_interior_map
from .curve import JordanDomain, curve_hausdorff, make_domain, normalizer, transform
from .errors import DidNotConverge
from .flow import flow_frames, round_target
from .reach import curvature_cap, inner_offset, medial_axis, reach, reconstruction_error
from .retraction import CenterSolver, RetractionContext, retract_point
from .shapes import GENERATORS, shape_samples

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID, EXIT_CONVERGENCE, EXIT_VERIFY = 0, 1, 2, 3, 4

SHAPE_PARAMS = (
    "r", "cx", "cy", "a", "b", "angle", "size", "e", "outer", "inner", "shift", "fillet", "amp2", "amp3",
)  # fmt: skip


class UsageError(ValueError):
    pass


def _add_input(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("input curve")
    src = g.add_mutually_exclusive_group()
    src.add_argument("--in", dest="infile", metavar="PATH", help="JSON curve {'samples': [[x, y], ...], 'closed': true}")
    src.add_argument("--shape", choices=sorted(GENERATORS), help="built-in generator")
    for name in SHAPE_PARAMS:
        g.add_argument(f"--{name}", type=float, default=None, help=argparse.SUPPRESS)
    g.add_argument("--n", type=int, default=512, help="samples for generators and the initial map (default 512)")
    g.add_argument("--tol", type=float, default=1e-3, help="map tolerance relative to diameter (default 1e-3)")


def _add_kind(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", default="centroid", choices=[k.value for k in CenterKind])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jordancenters", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("center", help="retracted center of a domain")
    _add_input(p)
    _add_kind(p)

    p = sub.add_parser("map", help="build an interior or exterior conformal map")
    _add_input(p)
    p.add_argument("--point", type=float, nargs=2, metavar=("X", "Y"), help="f(0); default the centroid-kind center")
    p.add_argument("--direction", type=float, nargs=2, default=(1.0, 0.0), metavar=("UX", "UY"))
    p.add_argument("--exterior", action="store_true", help="exterior map of the normalized domain")
    p.add_argument("--out", help="write the stage parameters as JSON")

    p = sub.add_parser("retract-point", help="evaluate the retraction r_D(x, t)")
    _add_input(p)
    p.add_argument("--point", type=float, nargs=2, required=True, metavar=("X", "Y"))
    p.add_argument("--t", type=float, default=1.0)

    p = sub.add_parser("flow", help="deformation frames onto the equal-area disk")
    _add_input(p)
    _add_kind(p)
    p.add_argument("--frames", type=int, default=16)
    p.add_argument("--out", help="frames as .csv or .svg")

    p = sub.add_parser("reach", help="reach and inner medial axis")
    _add_input(p)
    p.add_argument("--medial-n", type=int, default=2048, help="boundary samples for the Voronoi step")
    p.add_argument("--out", help="medial axis as CSV (x, y, radius)")

    p = sub.add_parser("offset", help="inward offset domain")
    _add_input(p)
    p.add_argument("--s", type=float, default=None, help="offset depth; default half the reach")
    p.add_argument("--out", help="offset curve as JSON samples")

    p = sub.add_parser("verify", help="run property suites")
    p.add_argument("--suite", default="all", choices=["equivariance", "convex-agreement", "interiority", "reach", "flow", "convergence", "all"])
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--tol", type=float, default=1e-3)

    p = sub.add_parser("render", help="figure of centers, offset and flow")
    _add_input(p)
    p.add_argument("--frames", type=int, default=12)
    p.add_argument("--out", required=True, help="figure path (.png, .svg or .pdf)")
    return parser


# ---------------------------------------------------------------- helpers


def _validate(args) -> None:
    if getattr(args, "n", 512) < 16:
        raise UsageError("--n must be at least 16")
    tol = getattr(args, "tol", 1e-3)
    if not (tol > 0 and math.isfinite(tol)):
        raise UsageError("--tol must be positive")
    if getattr(args, "frames", 4) < 4:
        raise UsageError("--frames must be at least 4")
    if args.command == "retract-point" and not 0 <= args.t <= 1:
        raise UsageError("--t must lie in [0, 1]")
    if args.command == "verify" and args.trials < 1:
        raise UsageError("--trials must be positive")
    if args.command == "reach" and args.medial_n < 256:
        raise UsageError("--medial-n must be at least 256")
    if hasattr(args, "shape") and not (args.shape or args.infile):
        raise UsageError("give --in PATH or --shape NAME")
    if getattr(args, "shape", None):
        accepted = set(inspect.signature(GENERATORS[args.shape]).parameters) - {"n"}
        extra = [k for k in SHAPE_PARAMS if getattr(args, k) is not None and k not in accepted]
        if extra:
            raise UsageError(f"shape {args.shape!r} takes {sorted(accepted)}, not {extra}")


def _shape_params(args) -> dict:
    return {k: getattr(args, k) for k in SHAPE_PARAMS if getattr(args, k) is not None}


def _domain(args) -> JordanDomain:
    if args.infile:
        return jio.load_domain(args.infile)
    return make_domain(shape_samples(args.shape, n=args.n, **_shape_params(args)))


def _map_config(args) -> MapConfig:
    n = max(16, args.n)
    return MapConfig(tol=args.tol, n=n, max_n=max(4096, n))


def _config(args) -> dict:
    out = {k: v for k, v in sorted(vars(args).items()) if k not in SHAPE_PARAMS and v is not None}
    if getattr(args, "shape", None):
        out["shape_params"] = _shape_params(args)
    return out


def _emit(command: str, result, residuals, config) -> None:
    sys.stdout.write(jio.dumps_result({"command": command, "result": result, "residuals": residuals, "config": config}))
    sys.stdout.write("\n")


# ---------------------------------------------------------------- commands


def cmd_center(args):
    D = _domain(args)
    r = CenterSolver(D, _map_config(args)).report(args.kind)
    return r.to_dict(), {"clearance_margin": r.clearance - 0.9 * r.reach / 2}


def cmd_map(args):
    D = _domain(args)
    config = _map_config(args)
    if args.exterior:
        g = build_exterior_map(transform(normalizer(D), D), config)
        dump = g.to_json()
        result = {"kind": "exterior", "leading_coefficient": g.leading_coefficient, "n_samples": len(g.chain)}
        residuals = {"boundary_defect": g.boundary_defect}
    else:
        p = args.point
        if p is None:
            p = CenterSolver(D, config).report(CenterKind.CENTROID).point
        f = build_interior_map(D, p, args.direction, config)
        dump = f.to_json()
        fp = np.array([f.center_derivative.real, f.center_derivative.imag])
        u = np.asarray(args.direction, dtype=float)
        ang = math.atan2(fp[0] * u[1] - fp[1] * u[0], fp @ u)
        result = {
            "kind": "interior",
            "center_value": list(f.center_value),
            "center_derivative": [f.center_derivative.real, f.center_derivative.imag],
            "n_samples": f.n_samples,
        }
        residuals = {"boundary_defect": dump["boundary_defect"], "direction_angle": abs(ang)}
    if args.out:
        jio.atomic_write(args.out, jio.dumps_result(dump))
        result["out"] = args.out
    return result, residuals


def cmd_retract_point(args):
    D = _domain(args)
    ctx = RetractionContext.build(D, _map_config(args))
    y = retract_point(ctx, np.array(args.point, dtype=float), args.t)
    sd = float(D.boundary.signed_distance(y))
    return {"point": y.tolist(), "t": args.t, "signed_distance": sd}, {"boundary_defect": ctx.exterior.boundary_defect}


def cmd_flow(args):
    D = _domain(args)
    config = _map_config(args)
    c = CenterSolver(D, config).report(args.kind).point
    frames = flow_frames(D, args.kind, args.frames, config=config, center=c)
    target = round_target(D, c)
    result = {
        "frames": len(frames),
        "times": [f.time for f in frames],
        "stages": [f.stage.value for f in frames],
        "center": list(c),
        "target_radius": target.radius,
    }
    residuals = {
        "first_frame": curve_hausdorff(frames[0].points, D) / D.diameter,
        "last_frame": curve_hausdorff(target.points(1024), JordanDomain(frames[-1].curve)) / D.diameter,
    }
    if args.out:
        if args.out.endswith(".svg"):
            text = jio.curves_svg([f.points for f in frames], D.circumcircle)
        else:
            text = jio.frames_csv([(f.time, f.points) for f in frames])
        jio.atomic_write(args.out, text)
        result["out"] = args.out
    return result, residuals


def cmd_reach(args):
    D = _domain(args)
    ma = medial_axis(D, args.medial_n)
    R = reach(D, args.medial_n)
    result = {"reach": R, "curvature_cap": curvature_cap(D), "medial_vertices": len(ma), "diameter": D.diameter}
    if args.out:
        jio.atomic_write(args.out, jio.medial_axis_csv(ma.points, ma.radii))
        result["out"] = args.out
    return result, {"radius_mismatch": float(np.abs(ma.radii - D.boundary.distance(ma.points)).max())}


def cmd_offset(args):
    D = _domain(args)
    R = reach(D)
    s = 0.5 * R if args.s is None else args.s
    off = inner_offset(D, s, reach_value=R)
    result = {"s": s, "reach": R, "area": off.area_centroid[0], "samples": off.boundary.n_samples}
    if args.out:
        jio.atomic_write(args.out, jio.samples_json(off.samples))
        result["out"] = args.out
    return result, {"reconstruction": reconstruction_error(D, off, s) / D.diameter}


def cmd_render(args):
    from .plotting import render_figure

    D = _domain(args)
    config = _map_config(args)
    solver = CenterSolver(D, config)
    ma = medial_axis(D)
    frames = flow_frames(D, CenterKind.CENTROID, args.frames, config=config, center=solver.report("centroid").point)
    path = render_figure(solver, frames, args.out, medial=ma)
    centers = {k.value: solver.report(k).to_dict() for k in CenterKind}
    return {"figure": str(path), "centers": centers, "frames": len(frames)}, {}


def cmd_verify(args):
    from .verify import run_suite

    reports = run_suite(args.suite, seed=args.seed, trials=args.trials, config=MapConfig(tol=args.tol))
    for r in reports:
        print(f"{r.suite}: {'pass' if r.passed else 'FAIL'} ({r.seconds:.1f} s)", file=sys.stderr)
    dicts = []
    for r in reports:
        d = r.to_dict()
        d.pop("seconds")  # keeps stdout byte-identical across runs
        dicts.append(d)
    result = {"passed": all(r.passed for r in reports), "suites": dicts}
    residuals = {r.suite: r.to_dict()["max_residual"] for r in reports}
    return result, residuals


COMMANDS = {
    "center": cmd_center,
    "map": cmd_map,
    "retract-point": cmd_retract_point,
    "flow": cmd_flow,
    "reach": cmd_reach,
    "offset": cmd_offset,
    "verify": cmd_verify,
    "render": cmd_render,
}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate(args)
        result, residuals = COMMANDS[args.command](args)
    except DidNotConverge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    _emit(args.command, result, residuals, _config(args))
    if args.command == "verify" and not result["passed"]:
        return EXIT_VERIFY
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
