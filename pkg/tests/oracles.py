"""Slow, independent reference computations for the test suite.

None of these reuse the package's algorithms: they work on dense point sets
with brute force, pixel counting or finite differences.
"""

from __future__ import annotations

import itertools
import math

import numpy as np
from matplotlib.path import Path
from scipy.spatial import cKDTree


# ------------------------------------------------------------ polygons


def shoelace(poly: np.ndarray) -> tuple[float, np.ndarray]:
    """Area and centroid of a simple polygon."""
    x, y = poly[:, 0], poly[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    cross = x * yn - xn * y
    area = cross.sum() / 2
    cx = ((x + xn) * cross).sum() / (6 * area)
    cy = ((y + yn) * cross).sum() / (6 * area)
    return float(area), np.array([cx, cy])


def winding_number(poly: np.ndarray, p) -> int:
    d = poly - np.asarray(p, dtype=float)
    ang = np.arctan2(d[:, 1], d[:, 0])
    step = np.diff(np.concatenate([ang, ang[:1]]))
    step = (step + np.pi) % (2 * np.pi) - np.pi
    return int(round(step.sum() / (2 * np.pi)))


def point_segment_distance(points: np.ndarray, poly: np.ndarray) -> np.ndarray:
    """Exact distance from each point to the closed polyline, by brute force."""
    a = poly
    b = np.roll(poly, -1, axis=0)
    ab = b - a
    out = np.empty(len(points))
    for i in range(0, len(points), 256):
        p = points[i : i + 256, None, :]
        t = np.clip(((p - a) * ab).sum(-1) / (ab * ab).sum(-1), 0, 1)
        q = a + t[..., None] * ab
        out[i : i + 256] = np.sqrt(((p - q) ** 2).sum(-1)).min(axis=1)
    return out


def brute_hausdorff(A: np.ndarray, B: np.ndarray) -> float:
    return max(point_segment_distance(A, B).max(), point_segment_distance(B, A).max())


# ------------------------------------------------------------ circles


def _convex_hull(points: np.ndarray) -> np.ndarray:
    """Andrew's monotone chain."""
    pts = sorted(map(tuple, points))

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1])


def brute_min_enclosing_circle(points: np.ndarray) -> tuple[np.ndarray, float]:
    """Smallest feasible circle among all pair and triple circles of hull vertices."""
    h = _convex_hull(np.asarray(points, dtype=float))
    cands = []
    for i, j in itertools.combinations(range(len(h)), 2):
        c = (h[i] + h[j]) / 2
        cands.append((np.linalg.norm(h[i] - c), c))
    n = len(h)
    i, j, k = np.nonzero(np.triu(np.ones((n, n), bool), 1)[:, :, None] & np.triu(np.ones((n, n), bool), 1)[None, :, :])
    idx = np.column_stack([i, j, k])
    a, b, c = h[idx[:, 0]], h[idx[:, 1]], h[idx[:, 2]]
    bx, by = (b - a).T
    cx, cy = (c - a).T
    d = 2 * (bx * cy - by * cx)
    ok = np.abs(d) > 1e-14
    b2, c2 = bx**2 + by**2, cx**2 + cy**2
    ux = (cy * b2 - by * c2)[ok] / d[ok]
    uy = (bx * c2 - cx * b2)[ok] / d[ok]
    centers = a[ok] + np.column_stack([ux, uy])
    radii = np.hypot(ux, uy)
    all_r = np.concatenate([[r for r, _ in cands], radii])
    all_c = np.vstack([np.array([c for _, c in cands]), centers])
    order = np.argsort(all_r)
    for k in order:
        r, c = all_r[k], all_c[k]
        if np.all(np.hypot(*(h - c).T) <= r * (1 + 1e-12) + 1e-12):
            return c, float(r)
    raise AssertionError("no enclosing circle found")


# ------------------------------------------------------------ curvature and Steiner point


def fd_curvature(curve, t: float, h: float = 1e-4) -> float:
    """Curvature from centered differences of positions only."""
    p0, pm, pp = curve(t), curve(t - h), curve(t + h)
    d1 = (pp - pm) / (2 * h)
    d2 = (pp - 2 * p0 + pm) / (h * h)
    return float((d1[0] * d2[1] - d1[1] * d2[0]) / np.linalg.norm(d1) ** 3)


def turning_angle_steiner(poly: np.ndarray) -> np.ndarray:
    """Vertices weighted by their signed exterior angle."""
    e_in = poly - np.roll(poly, 1, axis=0)
    e_out = np.roll(poly, -1, axis=0) - poly
    ang = np.arctan2(e_in[:, 0] * e_out[:, 1] - e_in[:, 1] * e_out[:, 0], (e_in * e_out).sum(1))
    return (ang[:, None] * poly).sum(0) / ang.sum()


# ------------------------------------------------------------ distance fields


def grid(bounds, nx: int, ny: int):
    (x0, x1), (y0, y1) = bounds
    hx, hy = (x1 - x0) / nx, (y1 - y0) / ny
    xs = x0 + hx * (np.arange(nx) + 0.5)
    ys = y0 + hy * (np.arange(ny) + 0.5)
    X, Y = np.meshgrid(xs, ys)
    return np.column_stack([X.ravel(), Y.ravel()]), hx * hy, max(hx, hy)


def inside_mask(poly: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Even-odd rule through matplotlib's point-in-path test."""
    return Path(poly, closed=False).contains_points(pts)


def distance_field(poly_dense: np.ndarray, pts: np.ndarray) -> np.ndarray:
    d, _ = cKDTree(poly_dense).query(pts)
    return d


def ridge_points(boundary: np.ndarray, bounds, m: int = 512) -> tuple[np.ndarray, float]:
    """Lattice points inside the curve where the distance to the boundary
    samples has two or more discrete local minima within one lattice step
    of the global minimum.

    The lattice has ``m`` intervals per side and includes its center lines.
    """
    (x0, x1), (y0, y1) = bounds
    X, Y = np.meshgrid(np.linspace(x0, x1, m + 1), np.linspace(y0, y1, m + 1))
    pts = np.column_stack([X.ravel(), Y.ravel()])
    h = max(x1 - x0, y1 - y0) / m
    pts = pts[inside_mask(boundary, pts)]
    tree = cKDTree(boundary)
    dmin, _ = tree.query(pts)
    n = len(boundary)
    keep = []
    for p, d, idx in zip(pts, dmin, tree.query_ball_point(pts, dmin + h)):
        if len(idx) < 3:
            continue
        i = np.asarray(idx)
        dist = lambda j: np.hypot(*(boundary[j % n] - p).T)  # noqa: E731
        di = dist(i)
        is_min = (di < dist(i - 1)) & (di <= dist(i + 1))
        if np.count_nonzero(is_min) >= 2:
            keep.append(p)
    return np.array(keep), h


def reach_from_ridge(boundary: np.ndarray, ridge: np.ndarray) -> float:
    d, _ = cKDTree(ridge).query(boundary)
    return float(d.min())


# ------------------------------------------------------------ maps


def cauchy_riemann_residual(f, z: np.ndarray, h: float = 1e-3) -> float:
    """max |f_y - i f_x| / |f_x| by centered differences.

    The step balances O(h^2) truncation against rounding in ``f``.
    """
    fx = (f(z + h) - f(z - h)) / (2 * h)
    fy = (f(z + 1j * h) - f(z - 1j * h)) / (2 * h)
    return float(np.max(np.abs(fy - 1j * fx) / np.abs(fx)))


def disk_retraction(x: np.ndarray, t: float) -> np.ndarray:
    """Retraction onto the closed unit disk through g(z) = 1/z."""
    out = []
    for px, py in x:
        z = complex(px, py)
        if abs(z) <= 1:
            out.append(z)
            continue
        w = 1 / z
        w = (1 - t) * w + t * w / abs(w)
        out.append(1 / w)
    return np.array([[v.real, v.imag] for v in out])


def angle_between(a: complex, b: complex) -> float:
    return abs(math.remainder(np.angle(a) - np.angle(b), 2 * math.pi))
