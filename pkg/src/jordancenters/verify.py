"""
Property-verification harness.

Each suite returns a :class:`SuiteReport` of named checks with their
residuals and thresholds. Residuals that are lengths are reported relative
to the relevant diameter when the threshold is.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .centers import CenterKind, classical_center, is_convex
from .conformal import MapConfig, build_interior_map, convergence_probe
from .curve import (
    JordanDomain,
    Location,
    Point2,
    Similarity,
    curve_hausdorff,
    hausdorff,
    locate,
    make_domain,
    transform,
)
from .flow import flow_frames, round_target
from .reach import half_domain, reach, reconstruction_error
from .retraction import CenterSolver, RetractionContext, exact_disk_retraction, retract_point
from .shapes import FIXTURES, fixture, make_shape

SUITES = ("equivariance", "convex-agreement", "interiority", "reach", "flow", "convergence")


@dataclass
class Check:
    name: str
    residual: float
    threshold: float
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "residual": self.residual,
            "threshold": self.threshold,
            "passed": self.passed,
            "detail": self.detail,
        }


@dataclass
class SuiteReport:
    suite: str
    checks: list[Check] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def at_most(self, name: str, residual: float, threshold: float, **detail) -> Check:
        c = Check(name, float(residual), float(threshold), bool(residual <= threshold), detail)
        self.checks.append(c)
        return c

    def holds(self, name: str, ok: bool, **detail) -> Check:
        c = Check(name, 0.0 if ok else 1.0, 0.0, bool(ok), detail)
        self.checks.append(c)
        return c

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "max_residual": max((c.residual for c in self.checks), default=0.0),
            "checks": [c.to_dict() for c in self.checks],
        }


# ---------------------------------------------------------------- inputs


def random_similarity(rng: np.random.Generator) -> Similarity:
    scale = rng.uniform(0.2, 5.0)
    angle = rng.uniform(0.0, 2 * np.pi)
    tx, ty = rng.uniform(-10.0, 10.0, size=2)
    reflect = bool(rng.random() < 0.5)
    return Similarity(float(scale), float(angle), reflect, Point2(float(tx), float(ty)))


def random_similarities(seed: int, trials: int) -> list[Similarity]:
    rng = np.random.default_rng(seed)
    return [random_similarity(rng) for _ in range(trials)]


def smooth_profile(seed: int = 0, modes=range(2, 7)) -> callable:
    """Fixed random trigonometric polynomial of sup-norm 1."""
    rng = np.random.default_rng(seed)
    modes = list(modes)
    amp = rng.normal(size=len(modes)) / np.array(modes, dtype=float)
    phase = rng.uniform(0, 2 * np.pi, size=len(modes))

    def raw(th):
        th = np.asarray(th, dtype=float)[..., None]
        return (amp * np.cos(np.array(modes) * th + phase)).sum(-1)

    norm = np.abs(raw(np.linspace(0, 2 * np.pi, 4096, endpoint=False))).max()
    return lambda th: raw(th) / norm


def noisy_ellipse(eps: float, a: float = 2.0, b: float = 1.0, n: int = 512, seed: int = 0) -> JordanDomain:
    """Ellipse with smooth relative radial noise of amplitude ``eps``."""
    th = 2 * np.pi * np.arange(n) / n
    prof = smooth_profile(seed)
    x, y = a * np.cos(th), b * np.sin(th)
    s = 1 + eps * prof(th)
    return make_domain(np.column_stack([s * x, s * y]))


def warp(D: JordanDomain, eps: float) -> JordanDomain:
    """Image of ``D`` under the smooth plane diffeomorphism ``x + eps v(x)``."""
    p = D.samples
    v = np.column_stack([np.sin(1.3 * p[:, 1] + 0.4), 0.6 * np.cos(0.9 * p[:, 0] + 0.2)])
    return make_domain(p + eps * v)


def _kinds():
    return list(CenterKind)


# ---------------------------------------------------------------- suites


def suite_equivariance(seed: int = 7, trials: int = 20, config: MapConfig = MapConfig(), names=None) -> SuiteReport:
    rep = SuiteReport("equivariance")
    gs = random_similarities(seed, trials)
    for name in names or FIXTURES:
        D = fixture(name)
        base = CenterSolver(D, config)
        centers = {k: base.report(k).point for k in _kinds()}
        worst = {k: (0.0, -1) for k in _kinds()}
        for i, g in enumerate(gs):
            gD = transform(g, D)
            solver = CenterSolver(gD, config)
            for k in _kinds():
                res = math.dist(g.apply_point(centers[k]), solver.report(k).point) / gD.diameter
                if res > worst[k][0]:
                    worst[k] = (res, i)
        for k in _kinds():
            rep.at_most(f"{name}/{k.value}", worst[k][0], 1e-3, trials=trials, worst_trial=worst[k][1])
    return rep


def suite_convex_agreement(config: MapConfig = MapConfig()) -> SuiteReport:
    rep = SuiteReport("convex-agreement")
    shapes = {
        "ellipse": fixture("ellipse"),
        "ellipse-shifted": make_shape("ellipse", a=2.0, b=1.0, cx=3.0, cy=-1.0, angle=0.4),
        "egg": fixture("egg"),
    }
    for name, D in shapes.items():
        rep.holds(f"{name}/convex", is_convex(D))
        solver = CenterSolver(D, config)
        for k in _kinds():
            r = solver.report(k)
            f = classical_center(D, k)
            inside = float(solver.half.half.boundary.signed_distance(np.array(f))) >= 0
            rep.holds(f"{name}/{k.value}/f-in-half", inside)
            rep.at_most(f"{name}/{k.value}", math.dist(r.point, f) / D.diameter, 1e-3)
    return rep


def suite_interiority(config: MapConfig = MapConfig()) -> SuiteReport:
    rep = SuiteReport("interiority")
    D = fixture("lune-smoothed")
    f = classical_center(D, CenterKind.CENTROID)
    loc = locate(D, f)
    rep.holds("lune/centroid-outside", loc.location is Location.EXTERIOR, signed_distance=loc.signed_distance)
    for name in FIXTURES:
        solver = CenterSolver(fixture(name), config)
        for k in _kinds():
            r = solver.report(k)
            need = 0.9 * r.reach / 2
            rep.at_most(f"{name}/{k.value}/clearance", need - r.clearance, 0.0, clearance=r.clearance, reach=r.reach)

    # retraction onto the unit disk against g(z) = 1/z
    ctx = RetractionContext.build(fixture("circle"), config)
    rng = np.random.default_rng(0)
    rad = 1.05 + 9 * rng.random(50)
    ang = rng.uniform(0, 2 * np.pi, 50)
    x = np.column_stack([rad * np.cos(ang), rad * np.sin(ang)])
    err = max(
        float(np.linalg.norm(retract_point(ctx, x, t) - exact_disk_retraction(x, t), axis=1).max())
        for t in np.linspace(0, 1, 11)
    )
    rep.at_most("disk/closed-form", err, 1e-3)

    # strong retraction, endpoint containment, and gauge independence on the lune
    ctx = RetractionContext.build(D, config)
    inner = D.boundary(np.linspace(0, 1, 40, endpoint=False)) + 0.02 * D.boundary.normal(np.linspace(0, 1, 40, endpoint=False))
    moved = max(float(np.abs(retract_point(ctx, inner, t) - inner).max()) for t in (0.3, 1.0))
    rep.at_most("lune/fixes-interior", moved, 0.0)
    outer = 3 * np.column_stack([np.cos(ang), np.sin(ang)])
    end = retract_point(ctx, outer, 1.0)
    sd = D.boundary.signed_distance(end)
    rep.at_most("lune/endpoint-in-closure", float(-sd.min()) / D.diameter, config.tol)
    twisted = ctx.with_gauge(1.234)
    gauge = max(
        float(np.abs(retract_point(ctx, outer, t) - retract_point(twisted, outer, t)).max()) for t in (0.25, 0.5, 1.0)
    )
    rep.at_most("lune/gauge-independence", gauge / D.diameter, 1e-3)
    return rep


def suite_reach() -> SuiteReport:
    rep = SuiteReport("reach")
    for r in (1.0, 3.0):
        R = reach(make_shape("circle", r=r))
        rep.at_most(f"disk-r{r:g}", abs(R - r) / r, 0.01, reach=R)
    R = reach(fixture("ellipse"), n=2048)
    rep.at_most("ellipse-2-1", abs(R - 0.5) / 0.5, 0.02, reach=R)
    trend = [reach(make_shape("ellipse", a=2.0, b=b)) for b in (1.0, 1.05, 1.1)]
    rep.holds("ellipse-trend-increasing", trend[0] < trend[1] < trend[2], values=trend)
    for name in FIXTURES:
        D = fixture(name)
        H = half_domain(D)
        err = reconstruction_error(D, H.half, H.depth) / D.diameter
        rep.at_most(f"{name}/reconstruction", err, 1e-3, reach=H.reach)
        inside = float(D.boundary.signed_distance(H.half.samples).min())
        rep.holds(f"{name}/half-inside", inside > 0, min_signed_distance=inside)
    return rep


def _frame_distance(a, b) -> float:
    return curve_hausdorff(a.curve.dense, JordanDomain(b.curve))


def suite_flow(frames: int = 8, config: MapConfig = MapConfig()) -> SuiteReport:
    rep = SuiteReport("flow")
    for name in FIXTURES:
        D = fixture(name)
        solver = CenterSolver(D, config)
        c = solver.report(CenterKind.CENTROID).point
        fr = flow_frames(D, CenterKind.CENTROID, frames, config=config, center=c)
        diam = D.diameter
        rep.at_most(f"{name}/first-frame", hausdorff(JordanDomain(fr[0].curve), D) / diam, 1e-3)
        target = round_target(D, c)
        last = curve_hausdorff(target.points(2048), JordanDomain(fr[-1].curve)) / diam
        rep.at_most(f"{name}/last-frame", last, 1e-3)
        times = [f.time for f in fr]
        rep.holds(f"{name}/time-nondecreasing", all(a <= b for a, b in zip(times, times[1:])))
    disk = make_shape("circle", r=1.5, cx=0.7, cy=-0.2)
    fr = flow_frames(disk, CenterKind.CENTROID, frames, config=config)
    worst = max(hausdorff(JordanDomain(f.curve), disk) for f in fr)
    rep.at_most("round-input-fixed", worst, 1e-3)

    D = fixture("blob")
    rot = Similarity(1.0, 0.9, False, Point2(0.0, 0.0))
    a = flow_frames(D, CenterKind.CENTROID, frames, config=config)
    b = flow_frames(transform(rot, D), CenterKind.CENTROID, frames, config=config)
    worst = max(
        curve_hausdorff(rot(fa.curve.dense), JordanDomain(fb.curve)) for fa, fb in zip(a, b)
    )
    rep.at_most("blob/rotation-equivariance", worst / D.diameter, 1e-3)
    return rep


def suite_convergence(config: MapConfig = MapConfig()) -> SuiteReport:
    rep = SuiteReport("convergence")
    eps = [0.1, 0.05, 0.025]
    E = fixture("ellipse")
    sup = convergence_probe(E, [noisy_ellipse(e) for e in eps], (0.0, 0.0), (1.0, 0.0), config)
    rep.holds("ellipse-noise-decreasing", sup[0] > sup[1] > sup[2], eps=eps, sup=sup)
    disk = fixture("circle")
    for e in (0.1, 0.05):
        (d,) = convergence_probe(disk, [make_shape("circle", r=1 + e)], (0.0, 0.0), (1.0, 0.0), config)
        rep.at_most(f"dilated-disk-{e:g}", d / (3 * e), 1.0, sup=d)

    eps = [0.05, 0.025, 0.0125]
    for name in ("lune-smoothed", "blob"):
        D = fixture(name)
        c0 = CenterSolver(D, config).report(CenterKind.CENTROID).point
        dist = [math.dist(CenterSolver(warp(D, e), config).report(CenterKind.CENTROID).point, c0) for e in eps]
        rep.holds(f"{name}/center-continuity", dist[0] > dist[1] > dist[2], eps=eps, distances=dist)
    return rep


def run_suite(name: str, *, seed: int = 7, trials: int = 20, config: MapConfig = MapConfig()) -> list[SuiteReport]:
    names = SUITES if name == "all" else (name,)
    out = []
    for s in names:
        t0 = time.perf_counter()
        if s == "equivariance":
            rep = suite_equivariance(seed, trials, config)
        elif s == "convex-agreement":
            rep = suite_convex_agreement(config)
        elif s == "interiority":
            rep = suite_interiority(config)
        elif s == "reach":
            rep = suite_reach()
        elif s == "flow":
            rep = suite_flow(config=config)
        elif s == "convergence":
            rep = suite_convergence(config)
        else:
            raise ValueError(f"unknown suite {s!r}; choose from {list(SUITES) + ['all']}")
        rep.seconds = time.perf_counter() - t0
        out.append(rep)
    return out
