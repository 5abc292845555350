"""Classical centers of planar domains and the annulus density used to
compare them with their retracted versions."""

from __future__ import annotations

import enum

import numpy as np

from .curve import JordanDomain, Point2
from .errors import NotConvex
from .reach import HalfDomain, half_domain


class CenterKind(enum.Enum):
    CENTROID = "centroid"
    CIRCUMCENTER = "circumcenter"
    STEINER = "steiner"

    @classmethod
    def parse(cls, name: str | CenterKind) -> CenterKind:
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).lower())
        except ValueError:
            raise ValueError(f"unknown center kind {name!r}; choose from {[k.value for k in cls]}") from None


def steiner_point(D: JordanDomain) -> Point2:
    """Curvature-weighted mean of the boundary, normalized by the computed
    total curvature (signed, so nonconvex curves are allowed)."""
    t, w = D.boundary.quadrature
    wk = w * D.boundary.curvature(t) * D.boundary.speed(t)
    p = (wk[:, None] * D.boundary(t)).sum(0) / wk.sum()
    return Point2(float(p[0]), float(p[1]))


def classical_center(D: JordanDomain, kind: CenterKind | str) -> Point2:
    kind = CenterKind.parse(kind)
    if kind is CenterKind.CENTROID:
        return D.area_centroid[1]
    if kind is CenterKind.CIRCUMCENTER:
        return D.circumcircle.center
    return steiner_point(D)


def is_convex(D: JordanDomain) -> bool:
    t, _ = D.boundary.quadrature
    return bool(D.boundary.curvature(t).min() >= -1e-6 / D.diameter)


def _require_convex(D: JordanDomain) -> None:
    if not is_convex(D):
        raise NotConvex("annulus density is defined for convex domains only")


def annulus_density(D: JordanDomain, t, half: HalfDomain | None = None) -> np.ndarray:
    """Density on the inner boundary whose line integral reproduces area
    integrals over the annulus between ``D`` and its half-reach offset.

    ``delta(t) = (R/2 + R^2 kappa(t)/8) / |A|`` with ``kappa`` the curvature
    of the offset boundary at parameter ``t``.
    """
    _require_convex(D)
    h = half_domain(D) if half is None else half
    R = h.reach
    k = h.half.boundary.curvature(np.asarray(t, dtype=float))
    return (R / 2 + R * R * k / 8) / h.annulus_area


def annulus_moments(D: JordanDomain, half: HalfDomain | None = None) -> tuple[float, Point2]:
    """``(integral of delta ds, integral of gamma_off delta ds)`` over the offset boundary."""
    _require_convex(D)
    h = half_domain(D) if half is None else half
    curve = h.half.boundary
    t, w = curve.quadrature
    wd = w * curve.speed(t) * annulus_density(D, t, h)
    m = (wd[:, None] * curve(t)).sum(0)
    return float(wd.sum()), Point2(float(m[0]), float(m[1]))
