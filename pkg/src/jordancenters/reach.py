"""Inner medial axis, reach, and inward offsets."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import QhullError, Voronoi, cKDTree

from .curve import JordanDomain, build_curve, curve_hausdorff
from .errors import DegenerateVoronoi, OffsetTooLarge

SEPARATION_DEG = 30.0
DEFAULT_N = 2048


@dataclass(frozen=True, eq=False)
class MedialAxisApprox:
    """Centers and radii of maximal inscribed disks found among Voronoi vertices."""

    points: np.ndarray  # (m, 2)
    radii: np.ndarray  # (m,)
    resolution: int

    @property
    def vertices(self) -> list[tuple[tuple[float, float], float]]:
        return [((float(x), float(y)), float(r)) for (x, y), r in zip(self.points, self.radii)]

    def __len__(self) -> int:
        return len(self.radii)


def _jitter(n: int, scale: float) -> np.ndarray:
    # fixed seed: sample i always gets the same nudge
    return scale * np.random.default_rng(0x5EED).uniform(-1, 1, size=(n, 2))


def _vertex_sites(vor: Voronoi) -> list[list[int]]:
    sites: list[list[int]] = [[] for _ in range(len(vor.vertices))]
    for p, reg in enumerate(vor.point_region):
        for v in vor.regions[reg]:
            if v >= 0:
                sites[v].append(p)
    return sites


def medial_axis(D: JordanDomain, n: int = DEFAULT_N, min_angle_deg: float = SEPARATION_DEG) -> MedialAxisApprox:
    """Voronoi vertices of ``n`` boundary samples that lie inside ``D`` and
    whose nearest samples subtend at least ``min_angle_deg`` at the vertex."""
    if n < 256:
        raise ValueError("medial axis needs n >= 256 samples")
    diam = D.diameter
    pts = D.boundary.sample(n)
    jittered = pts + _jitter(n, 1e-9 * diam)
    try:
        vor = Voronoi(jittered)
    except QhullError as exc:
        raise DegenerateVoronoi(str(exc)) from exc

    verts = vor.vertices
    inside = D.boundary.contains(verts)
    cos_min = math.cos(math.radians(min_angle_deg))
    keep, radii = [], []
    for v, sites in enumerate(_vertex_sites(vor)):
        if not inside[v] or len(sites) < 2:
            continue
        dirs = pts[sites] - verts[v]
        r = np.linalg.norm(dirs, axis=1)
        unit = dirs / r[:, None]
        cosines = unit @ unit.T
        if cosines.min() <= cos_min:
            keep.append(v)
            radii.append(r.mean())
    if not keep:
        raise DegenerateVoronoi("no interior Voronoi vertex passed the separation filter")
    mp = verts[keep]
    # the inscribed radius is the true boundary distance, not the site distance
    rad = D.boundary.distance(mp)
    return MedialAxisApprox(mp, rad, n)


def curvature_cap(D: JordanDomain) -> float:
    """``1 / max(kappa+)`` over the quadrature nodes; infinite if nowhere convex."""
    t, _ = D.boundary.quadrature
    kmax = float(np.max(D.boundary.curvature(t)))
    return math.inf if kmax <= 0 else 1.0 / kmax


def reach(D: JordanDomain, n: int = DEFAULT_N) -> float:
    """Inner reach: distance from the boundary to the inner medial axis,
    capped by the smallest radius of curvature on convex arcs."""
    ma = medial_axis(D, n)
    d, _ = cKDTree(ma.points).query(D.boundary.sample(n))
    return float(min(d.min(), curvature_cap(D)))


def inner_offset(D: JordanDomain, s: float, *, reach_value: float | None = None, n: int | None = None) -> JordanDomain:
    """Domain bounded by ``gamma + s N`` with ``N`` the inward unit normal.

    Raises OffsetTooLarge unless ``0 < s < reach(D)``.
    """
    R = reach(D) if reach_value is None else reach_value
    if not 0 < s < R:
        raise OffsetTooLarge(f"offset {s} must lie in (0, reach={R})")
    m = n or max(D.boundary.n_samples, 512)
    t = np.arange(m) / m
    pts = D.boundary(t) + s * D.boundary.normal(t)
    return JordanDomain(build_curve(pts))


def outer_offset_points(D: JordanDomain, s: float) -> np.ndarray:
    """Dense polyline of ``gamma - s N``, the boundary of ``D + s B`` when ``s`` is below
    the outer curvature limit."""
    t = D.boundary.refined_parameters(8)
    return D.boundary(t) - s * D.boundary.normal(t)


def reconstruction_error(D: JordanDomain, inner: JordanDomain, s: float) -> float:
    """Hausdorff distance between ``D`` and ``inner + s B``."""
    return curve_hausdorff(outer_offset_points(inner, s), D)


@dataclass(frozen=True, eq=False)
class HalfDomain:
    """``D`` together with its offset at half the reach."""

    domain: JordanDomain
    reach: float
    half: JordanDomain

    @property
    def depth(self) -> float:
        return 0.5 * self.reach

    @property
    def annulus_area(self) -> float:
        return self.domain.area_centroid[0] - self.half.area_centroid[0]


def half_domain(D: JordanDomain, n: int = DEFAULT_N) -> HalfDomain:
    R = reach(D, n)
    return HalfDomain(D, R, inner_offset(D, 0.5 * R, reach_value=R))
