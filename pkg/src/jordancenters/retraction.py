"""
Deformation retraction of the plane onto a Jordan domain, and the
retracted centers built from it.

For ``x`` outside ``D`` the retraction pulls ``x`` back through the
exterior map ``g`` of the normalized domain, moves it radially toward the
unit circle, and pushes it forward again:

    r_D(x, t) = rho^-1 g h_t g^-1 rho (x),   h_t(z) = (1 - t) z + t z/|z|.

Points of ``D`` never move. A classical center ``f(D)`` is made interior
by retracting it onto the offset domain at half the reach.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .centers import CenterKind, classical_center
from .conformal import ExteriorMap, MapConfig, build_exterior_map
from .curve import JordanDomain, Point2, Similarity, as_complex, as_xy, normalizer, transform
from .errors import InverseFailed
from .reach import DEFAULT_N, HalfDomain, half_domain

MIN_PREIMAGE_RADIUS = 1e-8


@dataclass(frozen=True, eq=False)
class RetractionContext:
    domain: JordanDomain
    normalizer: Similarity
    exterior: ExteriorMap

    @classmethod
    def build(cls, D: JordanDomain, config: MapConfig = MapConfig()) -> RetractionContext:
        rho = normalizer(D)
        return cls(D, rho, build_exterior_map(transform(rho, D), config))

    def with_gauge(self, angle: float) -> RetractionContext:
        return RetractionContext(self.domain, self.normalizer, self.exterior.with_gauge(angle))


def radial_push(z: np.ndarray, t: float) -> np.ndarray:
    r = np.abs(z)
    z = np.where(r < MIN_PREIMAGE_RADIUS, z / np.where(r > 0, r, 1) * MIN_PREIMAGE_RADIUS + (r == 0) * MIN_PREIMAGE_RADIUS, z)
    return (1 - t) * z + t * z / np.abs(z)


def retract_point(ctx: RetractionContext, x, t: float) -> np.ndarray:
    """``r_D(x, t)`` for points ``x`` of shape ``(..., 2)``.

    Points inside ``D``, or outside by less than the resolution of its
    boundary polyline, are returned unchanged.
    """
    if not 0 <= t <= 1:
        raise ValueError("t must lie in [0, 1]")
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("points must be finite")
    out = x.copy()
    if t == 0:
        return out
    D = ctx.domain
    sd = D.boundary.signed_distance(x)
    move = sd < -max(1e-9 * D.diameter, 2 * D.boundary.chord_sag)
    if not np.any(move):
        return out
    y = ctx.normalizer(x[move])
    z = as_complex(ctx.exterior.inverse(y))
    if not np.all(np.isfinite(z)):
        raise InverseFailed("exterior inverse produced non-finite values")
    w = ctx.exterior.forward(as_xy(radial_push(z, t)))
    out[move] = ctx.normalizer.inverse()(w)
    return out


@dataclass(frozen=True)
class CenterReport:
    kind: CenterKind
    point: Point2
    classical: Point2
    clearance: float
    reach: float
    retracted: bool

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "point": list(self.point),
            "classical": list(self.classical),
            "clearance": self.clearance,
            "reach": self.reach,
            "retracted": self.retracted,
        }


@dataclass(eq=False)
class CenterSolver:
    """Caches the half-reach offset and its retraction context so several
    center kinds of one domain share the expensive steps."""

    domain: JordanDomain
    config: MapConfig = field(default_factory=MapConfig)
    n_medial: int = DEFAULT_N
    _half: HalfDomain | None = field(default=None, init=False, repr=False)
    _ctx: RetractionContext | None = field(default=None, init=False, repr=False)

    @property
    def half(self) -> HalfDomain:
        if self._half is None:
            self._half = half_domain(self.domain, self.n_medial)
        return self._half

    @property
    def context(self) -> RetractionContext:
        if self._ctx is None:
            self._ctx = RetractionContext.build(self.half.half, self.config)
        return self._ctx

    def report(self, kind: CenterKind | str) -> CenterReport:
        kind = CenterKind.parse(kind)
        f = classical_center(self.domain, kind)
        H = self.half
        fx = np.array(f, dtype=float)
        if float(H.half.boundary.signed_distance(fx)) >= 0:
            c, moved = fx, False
        else:
            c, moved = retract_point(self.context, fx, 1.0), True
        clearance = float(self.domain.boundary.signed_distance(c))
        return CenterReport(kind, Point2(float(c[0]), float(c[1])), f, clearance, H.reach, moved)


def canonical_center(D: JordanDomain, kind: CenterKind | str, config: MapConfig = MapConfig()) -> Point2:
    """Classical center of ``D`` retracted onto its half-reach offset."""
    return CenterSolver(D, config).report(kind).point


def center_report(D: JordanDomain, kind: CenterKind | str, config: MapConfig = MapConfig()) -> CenterReport:
    return CenterSolver(D, config).report(kind)


def exact_disk_retraction(x, t: float) -> np.ndarray:
    """Closed form of the retraction onto the unit disk, through ``g(z) = 1/z``."""
    z = as_complex(np.asarray(x, dtype=float))
    r = np.abs(z)
    out = np.where(r <= 1, z, 1 / radial_push(1 / np.where(r <= 1, 1, z), t))
    return as_xy(out)


def center_distance(a, b) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])
