"""
Jordan curves and domains in the plane.

A boundary is stored as a periodic C2 cubic spline through the input
samples, oriented counterclockwise, with its parameter ``t in [0, 1)``
refitted so that it is proportional to arc length up to spline error.
Every object here is immutable once built.
"""

from __future__ import annotations

import cmath
import enum
import math
import random
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np
import shapely
from scipy.interpolate import CubicSpline
from scipy.spatial import ConvexHull, cKDTree

from .errors import NonFinite, SelfIntersecting, TooFewSamples

MIN_SAMPLES = 16
TURNING_TOL = 1e-3
GL_NODES = 8
_GL_X, _GL_W = np.polynomial.legendre.leggauss(GL_NODES)


class Point2(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class Circle:
    center: Point2
    radius: float

    def __post_init__(self):
        if not self.radius >= 0:
            raise ValueError(f"circle radius must be >= 0, got {self.radius}")

    def points(self, n: int) -> np.ndarray:
        th = 2 * np.pi * np.arange(n) / n
        return np.column_stack(
            [self.center[0] + self.radius * np.cos(th), self.center[1] + self.radius * np.sin(th)]
        )


def as_complex(points) -> np.ndarray:
    arr = np.asarray(points, dtype=float)
    return arr[..., 0] + 1j * arr[..., 1]


def as_xy(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    return np.stack([z.real, z.imag], axis=-1)


@dataclass(frozen=True)
class Similarity:
    """Planar similarity ``g(x) = scale * R(angle) * F(x) + translation``.

    ``F`` is the reflection in the x-axis when ``reflect`` is set and the
    identity otherwise, so in complex notation
    ``g(z) = a * (conj(z) if reflect else z) + b`` with
    ``a = scale * exp(i * angle)``.
    """

    scale: float = 1.0
    angle: float = 0.0
    reflect: bool = False
    translation: Point2 = Point2(0.0, 0.0)

    def __post_init__(self):
        if not (math.isfinite(self.scale) and self.scale > 0):
            raise ValueError(f"similarity scale must be finite and > 0, got {self.scale}")
        object.__setattr__(self, "translation", Point2(*map(float, self.translation)))

    @classmethod
    def identity(cls) -> Similarity:
        return cls()

    @classmethod
    def from_complex(cls, a: complex, b: complex, reflect: bool = False) -> Similarity:
        return cls(abs(a), cmath.phase(a), bool(reflect), Point2(b.real, b.imag))

    @property
    def linear(self) -> complex:
        return self.scale * cmath.exp(1j * self.angle)

    @property
    def offset(self) -> complex:
        return complex(*self.translation)

    @property
    def orthogonal_part(self) -> Similarity:
        return Similarity(1.0, self.angle, self.reflect)

    def apply_complex(self, z):
        z = np.asarray(z, dtype=complex)
        if self.reflect:
            z = np.conj(z)
        return self.linear * z + self.offset

    def __call__(self, points) -> np.ndarray:
        return as_xy(self.apply_complex(as_complex(points)))

    def apply_point(self, p) -> Point2:
        w = complex(self.apply_complex(complex(p[0], p[1])))
        return Point2(w.real, w.imag)

    def apply_circle(self, c: Circle) -> Circle:
        return Circle(self.apply_point(c.center), self.scale * c.radius)

    def compose(self, other: Similarity) -> Similarity:
        """Return ``self o other``."""
        a1, b1 = self.linear, self.offset
        a2, b2 = other.linear, other.offset
        if self.reflect:
            a2, b2 = a2.conjugate(), b2.conjugate()
        return Similarity.from_complex(a1 * a2, a1 * b2 + b1, self.reflect != other.reflect)

    def inverse(self) -> Similarity:
        a, b = self.linear, self.offset
        if self.reflect:
            # z = conj((w - b) / a)
            ai = (1 / a).conjugate()
            return Similarity.from_complex(ai, -(b / a).conjugate(), True)
        return Similarity.from_complex(1 / a, -b / a, False)

    def to_dict(self) -> dict:
        return {
            "scale": self.scale,
            "angle": self.angle,
            "reflect": self.reflect,
            "translation": list(self.translation),
        }


def _quadrature_nodes(knots: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a, b = knots[:-1, None], knots[1:, None]
    half = 0.5 * (b - a)
    t = (0.5 * (a + b) + half * _GL_X[None, :]).ravel()
    w = (half * _GL_W[None, :]).ravel()
    return t, w


def _fit_spline(points: np.ndarray, knots: np.ndarray) -> CubicSpline:
    closed = np.vstack([points, points[:1]])
    return CubicSpline(knots, closed, bc_type="periodic")


@dataclass(frozen=True, eq=False)
class JordanCurve:
    """Counterclockwise periodic cubic spline through ``samples``.

    ``knots[i]`` is the parameter of ``samples[i]``; ``knots[-1] == 1``
    closes the curve back onto ``samples[0]``.
    """

    samples: np.ndarray
    knots: np.ndarray
    spline: CubicSpline

    def __call__(self, t) -> np.ndarray:
        return self.spline(np.mod(t, 1.0))

    def derivative(self, t, order: int = 1) -> np.ndarray:
        return self.spline(np.mod(t, 1.0), order)

    def speed(self, t) -> np.ndarray:
        return np.hypot(*np.moveaxis(self.derivative(t), -1, 0))

    def tangent(self, t) -> np.ndarray:
        d = self.derivative(t)
        return d / np.linalg.norm(d, axis=-1, keepdims=True)

    def normal(self, t) -> np.ndarray:
        """Inward unit normal (tangent rotated a quarter turn counterclockwise)."""
        tx, ty = np.moveaxis(self.tangent(t), -1, 0)
        return np.stack([-ty, tx], axis=-1)

    def curvature(self, t) -> np.ndarray:
        d1 = self.derivative(t, 1)
        d2 = self.derivative(t, 2)
        cross = d1[..., 0] * d2[..., 1] - d1[..., 1] * d2[..., 0]
        return cross / np.linalg.norm(d1, axis=-1) ** 3

    @property
    def n_samples(self) -> int:
        return len(self.samples)

    @cached_property
    def quadrature(self) -> tuple[np.ndarray, np.ndarray]:
        """Composite Gauss-Legendre nodes and weights in ``t`` (8 per segment)."""
        return _quadrature_nodes(self.knots)

    @cached_property
    def length(self) -> float:
        t, w = self.quadrature
        return float(np.sum(w * self.speed(t)))

    @cached_property
    def total_curvature(self) -> float:
        t, w = self.quadrature
        return float(np.sum(w * self.curvature(t) * self.speed(t)))

    def sample(self, n: int) -> np.ndarray:
        """``n`` points at equal parameter (near equal arc-length) spacing."""
        return self(np.arange(n) / n)

    def refined_parameters(self, per_segment: int) -> np.ndarray:
        a, b = self.knots[:-1, None], self.knots[1:, None]
        frac = np.arange(per_segment)[None, :] / per_segment
        return (a + (b - a) * frac).ravel()

    @cached_property
    def dense(self) -> np.ndarray:
        """Polyline through the spline with 8 points per segment; contains the samples."""
        return self(self.refined_parameters(8))

    @cached_property
    def chord_sag(self) -> float:
        """Largest gap between the spline and :attr:`dense`, from ``kappa h^2 / 8`` per chord."""
        t = self.refined_parameters(8)
        tm = 0.5 * (t + np.append(t[1:], 1.0))
        h = np.linalg.norm(np.diff(self.dense, axis=0, append=self.dense[:1]), axis=1)
        return float(np.max(np.abs(self.curvature(tm)) * h * h / 8))

    @cached_property
    def _dense_tree(self) -> cKDTree:
        return cKDTree(self.dense)

    @cached_property
    def _dense_polygon(self):
        poly = shapely.Polygon(self.dense)
        shapely.prepare(poly)
        return poly

    @cached_property
    def diameter(self) -> float:
        pts = self.samples
        hull = pts[ConvexHull(pts).vertices]
        diff = hull[:, None, :] - hull[None, :, :]
        return float(np.sqrt((diff**2).sum(-1)).max())

    def distance(self, points) -> np.ndarray:
        """Unsigned distance from ``points`` (..., 2) to the curve."""
        return polyline_distance(points, self.dense, tree=self._dense_tree)

    def contains(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        inside = shapely.contains_xy(self._dense_polygon, pts[:, 0], pts[:, 1])
        return inside.reshape(np.shape(points)[:-1])

    def signed_distance(self, points) -> np.ndarray:
        """Positive inside, negative outside."""
        d = self.distance(points)
        return np.where(self.contains(points), d, -d)


@dataclass(frozen=True, eq=False)
class JordanDomain:
    """Closed region bounded by a counterclockwise Jordan curve."""

    boundary: JordanCurve

    @classmethod
    def from_samples(cls, samples, **kwargs) -> JordanDomain:
        return cls(build_curve(samples, **kwargs))

    @property
    def samples(self) -> np.ndarray:
        return self.boundary.samples

    @property
    def diameter(self) -> float:
        return self.boundary.diameter

    @cached_property
    def area_centroid(self) -> tuple[float, Point2]:
        return _area_and_centroid(self.boundary)

    @cached_property
    def circumcircle(self) -> Circle:
        return min_enclosing_circle(self.samples)


def polyline_distance(points, poly: np.ndarray, tree: cKDTree | None = None, k: int = 6) -> np.ndarray:
    """Distance from each point to the closed polyline ``poly``.

    Only the segments adjacent to the ``k`` nearest vertices are examined,
    which is exact for polylines whose spacing is roughly uniform.
    """
    pts = np.asarray(points, dtype=float)
    shape = pts.shape[:-1]
    pts = pts.reshape(-1, 2)
    if tree is None:
        tree = cKDTree(poly)
    m = len(poly)
    k = min(k, m)
    _, idx = tree.query(pts, k=k)
    idx = np.asarray(idx).reshape(len(pts), k)
    best = np.full(len(pts), np.inf)
    for shift in (0, -1):
        i0 = (idx + shift) % m
        a = poly[i0]
        b = poly[(i0 + 1) % m]
        ab = b - a
        ap = pts[:, None, :] - a
        denom = np.maximum((ab**2).sum(-1), 1e-300)
        s = np.clip((ap * ab).sum(-1) / denom, 0.0, 1.0)
        d = np.linalg.norm(ap - s[..., None] * ab, axis=-1).min(axis=1)
        best = np.minimum(best, d)
    return best.reshape(shape)


def shoelace_area(points: np.ndarray) -> float:
    x, y = points[:, 0], points[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def _reverse_keep_first(points: np.ndarray) -> np.ndarray:
    return np.concatenate([points[:1], points[:0:-1]])


def build_curve(samples: Sequence[Sequence[float]] | np.ndarray, *, check: bool = True) -> JordanCurve:
    """Build a counterclockwise periodic C2 spline curve through ``samples``.

    Parameters
    ----------
    samples : array_like, shape (N, 2)
        Ordered boundary points, N >= 16. A trailing copy of the first point
        is dropped, as are consecutive duplicates.
    check : bool
        Run the simplicity and turning-number checks. Only internal callers
        that already hold a validated curve should disable this.

    Raises
    ------
    NonFinite, TooFewSamples, SelfIntersecting
    """
    pts = np.array(samples, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise TooFewSamples(f"expected an (N, 2) array of samples, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise NonFinite("samples contain NaN or infinite coordinates")
    if len(pts):
        scale = max(float(np.ptp(pts, axis=0).max()), 1e-300)
        step = np.linalg.norm(np.diff(np.vstack([pts, pts[:1]]), axis=0), axis=1)
        keep = step > 1e-13 * scale
        pts = pts[keep]
    if len(pts) < MIN_SAMPLES:
        raise TooFewSamples(f"need at least {MIN_SAMPLES} distinct samples, got {len(pts)}")

    area = shoelace_area(pts)
    if check and (abs(area) <= 1e-14 * scale**2 or not shapely.LinearRing(pts).is_simple):
        raise SelfIntersecting("sample polygon is not simple")
    if area < 0:
        pts = _reverse_keep_first(pts)

    chord = np.linalg.norm(np.diff(np.vstack([pts, pts[:1]]), axis=0), axis=1)
    knots = np.concatenate([[0.0], np.cumsum(chord)])
    knots /= knots[-1]
    spline = _fit_spline(pts, knots)
    # one refit pass with knots at spline arc length
    t, w = _quadrature_nodes(knots)
    seg = (w * np.linalg.norm(spline(t, 1), axis=1)).reshape(-1, GL_NODES).sum(axis=1)
    knots = np.concatenate([[0.0], np.cumsum(seg)])
    knots /= knots[-1]
    knots[-1] = 1.0
    curve = JordanCurve(pts, knots, _fit_spline(pts, knots))

    if check:
        fine = curve(curve.refined_parameters(4))
        if not shapely.LinearRing(fine).is_simple:
            raise SelfIntersecting("spline interpolant self-intersects between samples")
        if abs(curve.total_curvature - 2 * np.pi) > TURNING_TOL:
            raise SelfIntersecting(
                f"total curvature {curve.total_curvature:.6f} differs from 2*pi; spline has loops"
            )
    return curve


def make_domain(samples, **kwargs) -> JordanDomain:
    return JordanDomain(build_curve(samples, **kwargs))


def _area_and_centroid(curve: JordanCurve) -> tuple[float, Point2]:
    t, w = curve.quadrature
    (x, y), (dx, dy) = curve(t).T, curve.derivative(t).T
    area = 0.5 * np.sum(w * (x * dy - y * dx))
    cx = np.sum(w * x * x * dy) / (2 * area)
    cy = -np.sum(w * y * y * dx) / (2 * area)
    return float(area), Point2(float(cx), float(cy))


def area_and_centroid(D: JordanDomain) -> tuple[float, Point2]:
    """Area and area centroid by Green's theorem on the spline boundary.

    The integrands are polynomial on each spline segment, so the 8-node
    Gauss-Legendre rule is exact up to rounding.
    """
    return D.area_centroid


def curvature(D: JordanDomain, t) -> np.ndarray | float:
    k = D.boundary.curvature(np.asarray(t, dtype=float))
    return float(k) if np.ndim(k) == 0 else k


def _circle2(a, b):
    cx, cy = (a[0] + b[0]) / 2, (a[1] + b[1]) / 2
    return (cx, cy, math.hypot(a[0] - cx, a[1] - cy))


def _circle3(a, b, c):
    ax, ay = a
    bx, by = b[0] - ax, b[1] - ay
    cx, cy = c[0] - ax, c[1] - ay
    d = 2 * (bx * cy - by * cx)
    if d == 0:
        # collinear: the widest pair spans the circle
        pairs = [(a, b), (a, c), (b, c)]
        return max((_circle2(p, q) for p, q in pairs), key=lambda s: s[2])
    b2, c2 = bx * bx + by * by, cx * cx + cy * cy
    ux = (cy * b2 - by * c2) / d
    uy = (bx * c2 - cx * b2) / d
    return (ax + ux, ay + uy, math.hypot(ux, uy))


def min_enclosing_circle(points, seed: int = 0) -> Circle:
    """Minimum enclosing circle, Welzl's randomized incremental form.

    Expected linear time. The shuffle is seeded so repeated calls agree
    bit for bit; the circle itself does not depend on the order.
    """
    pts = [tuple(map(float, p)) for p in np.asarray(points, dtype=float)]
    if not pts:
        raise ValueError("no points")
    random.Random(seed).shuffle(pts)
    scale = max(max(abs(v) for p in pts for v in p), 1.0)
    eps = 1e-13 * scale

    def inside(c, p):
        return math.hypot(p[0] - c[0], p[1] - c[1]) <= c[2] + eps

    c = (pts[0][0], pts[0][1], 0.0)
    for i in range(1, len(pts)):
        p = pts[i]
        if inside(c, p):
            continue
        c = (p[0], p[1], 0.0)
        for j in range(i):
            q = pts[j]
            if inside(c, q):
                continue
            c = _circle2(p, q)
            for k in range(j):
                r = pts[k]
                if not inside(c, r):
                    c = _circle3(p, q, r)
    return Circle(Point2(c[0], c[1]), c[2])


def circumscribing_circle(D: JordanDomain) -> Circle:
    return D.circumcircle


def normalizer(D: JordanDomain) -> Similarity:
    """Similarity ``x -> (x - x0) / R`` onto circumcenter o, circumradius 1."""
    c = D.circumcircle
    s = 1.0 / c.radius
    return Similarity(s, 0.0, False, Point2(-c.center[0] * s, -c.center[1] * s))


def transform(g: Similarity, D: JordanDomain) -> JordanDomain:
    """Image of ``D`` under ``g``; reflections are re-oriented with the first sample kept first."""
    return JordanDomain(build_curve(g(D.samples), check=False))


class Location(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


class Located(NamedTuple):
    location: Location
    signed_distance: float


def signed_distance(D: JordanDomain, points) -> np.ndarray:
    return D.boundary.signed_distance(points)


def locate(D: JordanDomain, p, tol: float | None = None) -> Located:
    """Classify ``p`` against ``D`` by winding number and boundary distance.

    ``tol`` defaults to ``1e-9 * diam(D)``.
    """
    if tol is None:
        tol = 1e-9 * D.diameter
    sd = float(D.boundary.signed_distance(np.asarray(p, dtype=float)))
    if abs(sd) <= tol:
        return Located(Location.BOUNDARY, sd)
    return Located(Location.INTERIOR if sd > 0 else Location.EXTERIOR, sd)


def directed_hausdorff(A: JordanCurve, B: JordanCurve) -> float:
    return float(B.distance(A.dense).max())


def hausdorff(D1: JordanDomain, D2: JordanDomain) -> float:
    """Hausdorff distance between the two boundaries.

    A lower bound for the parametrization-infimum distance between domains,
    not that distance itself.
    """
    return max(directed_hausdorff(D1.boundary, D2.boundary), directed_hausdorff(D2.boundary, D1.boundary))


def curve_hausdorff(points: np.ndarray, D: JordanDomain) -> float:
    """Symmetric Hausdorff distance between a closed polyline and a boundary."""
    poly = np.asarray(points, dtype=float)
    d1 = float(D.boundary.distance(poly).max())
    d2 = float(polyline_distance(D.boundary.dense, poly).max())
    return max(d1, d2)


def resample_closed(points, n: int) -> np.ndarray:
    """``n`` points at equal arc length along the closed polyline ``points``,
    starting at ``points[0]``."""
    pts = np.asarray(points, dtype=float)
    closed = np.vstack([pts, pts[:1]])
    seg = np.hypot(*np.diff(closed, axis=0).T)
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    s = cum[-1] * np.arange(n) / n
    x = np.interp(s, cum, closed[:, 0])
    y = np.interp(s, cum, closed[:, 1])
    return np.column_stack([x, y])
