"""
Interior and exterior Riemann maps by the geodesic zipper algorithm.

The boundary samples ``z_0, ..., z_{n-1}`` are unzipped one at a time.
The first stage ``i sqrt((z - z_1)/(z - z_0))`` opens the chord
``[z_0, z_1]`` onto the real line and sends ``z_0`` to infinity. Each later
stage removes the circular arc orthogonal to R from 0 to the current image
``a`` of the next sample: a real Moebius map straightens the arc onto the
segment ``[0, i d]``, and ``w -> sqrt(w^2 + d^2)`` folds that segment onto
``[-d, d]``, with ``a -> 0``. The last arc, from 0 to infinity, is the
imaginary axis, and ``-w^2`` opens the quadrant on the domain side onto the
upper half-plane H.

Every stage inverts in closed form, so both directions of the map are
explicit compositions. The traversed side of the curve is the one mapped:
counterclockwise samples give the interior and clockwise samples give the
exterior, with infinity as an ordinary interior point.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass, field

import numpy as np

from .curve import JordanDomain, Point2, as_complex, as_xy, locate, Location
from .errors import DidNotConverge, OutOfDomain, PointNotInterior, ZeroDirection


@dataclass(frozen=True)
class MapConfig:
    tol: float = 1e-3
    n: int = 512
    max_n: int = 4096


def _upper(w: np.ndarray) -> np.ndarray:
    # projection onto closed H; also normalizes signed zeros on the real axis
    return w.real + 1j * np.abs(w.imag)


@dataclass(frozen=True, eq=False)
class ZipperChain:
    """Composition of elementary conformal stages taking one side of a
    closed polygon of samples onto the upper half-plane."""

    z0: complex
    z1: complex
    q: np.ndarray  # 1/c of the straightening Moebius map z/(1 - q z)
    d: np.ndarray  # slit heights
    prevertices: np.ndarray  # exact images on the real line of nodes 1..n-1

    @classmethod
    def build(cls, pts: np.ndarray) -> ZipperChain:
        pts = np.asarray(pts, dtype=complex)
        z0, z1 = complex(pts[0]), complex(pts[1])
        w = 1j * np.sqrt((pts[2:] - z1) / (pts[2:] - z0))
        m = len(w)
        q = np.empty(m)
        d = np.empty(m)
        # processed nodes stay on the real line; the newest one sits at 0
        pv = np.zeros(1)
        for k in range(m):
            a = w[k]
            if not a.imag > 0:
                raise DidNotConverge(f"zipper stage {k} left the upper half-plane (a={a})")
            qk = a.real / (a.real * a.real + a.imag * a.imag)
            dk = (a / (1 - a * qk)).imag
            q[k], d[k] = qk, dk
            rest = w[k + 1 :]
            rest = rest / (1 - rest * qk)
            w[k + 1 :] = rest * np.sqrt(1 + (dk / rest) ** 2)
            pv = pv / (1 - pv * qk)
            pv = np.append(np.where(pv > 0, 1.0, -1.0) * np.sqrt(pv * pv + dk * dk), 0.0)
        return cls(z0, z1, q, d, -pv * pv)

    def __len__(self) -> int:
        return len(self.q) + 2

    def to_halfplane(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = 1j * np.sqrt((x - self.z1) / (x - self.z0))
            for qk, dk in zip(self.q, self.d):
                w = w / (1 - w * qk)
                # a node at the slit base goes to the domain side
                w = np.where(w == 0, -dk, w * np.sqrt(1 + (dk / w) ** 2))
        return -w * w

    def infinity_image(self) -> complex:
        w = np.array([1j])
        for qk, dk in zip(self.q, self.d):
            w = w / (1 - w * qk)
            w = w * np.sqrt(1 + (dk / w) ** 2)
        return complex(-w[0] * w[0])

    def from_halfplane(self, w) -> np.ndarray:
        w = np.array(w, dtype=complex)
        shape = w.shape
        w = w.reshape(-1)
        at_inf = ~np.isfinite(w)
        w[at_inf] = 1e300j
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            w = 1j * np.sqrt(_upper(w))
            for qk, dk in zip(self.q[::-1], self.d[::-1]):
                w = _upper(w)
                # the slit base pulls back to the slit tip
                w = np.where(w == 0, 1j * dk, _upper(w * np.sqrt(1 - (dk / w) ** 2)))
                w = w / (1 + w * qk)
            s2 = (-1j * w) ** 2
            z = (self.z1 - s2 * self.z0) / (1 - s2)
        z[at_inf | ~np.isfinite(z)] = self.z0
        return z.reshape(shape)

    def to_json(self) -> dict:
        return {
            "z0": [self.z0.real, self.z0.imag],
            "z1": [self.z1.real, self.z1.imag],
            "q": self.q.tolist(),
            "d": self.d.tolist(),
        }


def _reverse_keep_first(z: np.ndarray) -> np.ndarray:
    return np.concatenate([z[:1], z[:0:-1]])


def _positive_run(x: np.ndarray) -> np.ndarray:
    return abs(x[0]) * np.geomspace(1e-8, 1e8, 65)


class _DiskChart:
    """Shared machinery: a zipper chain followed by the Moebius map
    ``w -> rotation * (w - wc)/(w - conj(wc))`` from H onto the disk."""

    domain: JordanDomain
    chain: ZipperChain
    wc: complex
    rotation: complex
    boundary_defect: float

    def _to_disk(self, x) -> np.ndarray:
        return self._halfplane_to_disk(self.chain.to_halfplane(x))

    def _from_disk(self, z) -> np.ndarray:
        zeta = np.asarray(z, dtype=complex) / self.rotation
        with np.errstate(divide="ignore", invalid="ignore"):
            w = (self.wc - self.wc.conjugate() * zeta) / (1 - zeta)
        return self.chain.from_halfplane(w)

    def _halfplane_to_disk(self, w) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            z = self.rotation * (w - self.wc) / (w - self.wc.conjugate())
        return np.where(np.isfinite(w), z, self.rotation)

    @functools.cached_property
    def _boundary_table(self) -> tuple[np.ndarray, np.ndarray]:
        # boundary parameter on the real line of H: prevertices, the midpoints
        # between them and geometric runs out towards infinity
        x = self.chain.prevertices
        mid = 0.5 * (x[:-1] + x[1:])
        xs = np.sort(np.concatenate([x, mid, x[0] * np.geomspace(1.5, 1e8, 24), _positive_run(x)]))
        return xs, self.chain.from_halfplane(xs.astype(complex))

    def _project_to_circle(self, x: np.ndarray) -> np.ndarray:
        """Preimages on the unit circle of the boundary points nearest ``x``."""
        x = np.asarray(x, dtype=complex).reshape(-1)
        xs, img = self._boundary_table
        j = np.argmin(np.abs(img[None, :] - x[:, None]), axis=1)
        lo = xs[np.maximum(j - 1, 0)]
        hi = xs[np.minimum(j + 1, len(xs) - 1)]
        g = (math.sqrt(5) - 1) / 2
        for _ in range(60):
            a, b = hi - g * (hi - lo), lo + g * (hi - lo)
            fa = np.abs(self.chain.from_halfplane(a.astype(complex)) - x)
            fb = np.abs(self.chain.from_halfplane(b.astype(complex)) - x)
            hi = np.where(fa < fb, b, hi)
            lo = np.where(fa < fb, lo, a)
        z = self._halfplane_to_disk(0.5 * (lo + hi) + 0j)
        return z / np.abs(z)

    def _robust_to_disk(self, x: np.ndarray) -> np.ndarray:
        z = self._to_disk(x)
        back = self._from_disk(np.where(np.abs(z) <= 1, z, z / np.abs(z)))
        scale = self.domain.diameter
        with np.errstate(invalid="ignore"):
            bad = ~np.isfinite(z) | (np.abs(z) > 1 + 1e-9) | (np.abs(back - x) > 1e-7 * scale)
        if np.any(bad):
            z = np.array(z, dtype=complex)
            z[bad] = self._project_to_circle(np.asarray(x)[bad])
        return z

    def node_angles(self) -> np.ndarray:
        """Sorted angles in ``[0, 2 pi)`` of the preimages of the boundary nodes."""
        w = np.concatenate([[np.inf], self.chain.prevertices]).astype(complex)
        return np.sort(np.angle(self._halfplane_to_disk(w)) % (2 * np.pi))

    def _measure_defect(self) -> float:
        # Probe the geodesic arcs between nodes on the real line of H, where
        # prevertices stay separated even when their disk angles crowd together.
        x = self.chain.prevertices
        frac = np.array([0.25, 0.5, 0.75])
        inner = (x[:-1, None] + np.diff(x)[:, None] * frac[None, :]).ravel()
        # the two arcs through z0 = infinity; prevertices are all <= 0
        outer = np.concatenate([_positive_run(x), x[0] / frac])
        img = self.chain.from_halfplane(np.concatenate([inner, outer]).astype(complex))
        if not np.all(np.isfinite(img)):
            return math.inf
        return float(self.domain.boundary.distance(as_xy(img)).max())


@dataclass(frozen=True, eq=False)
class ConformalMap(_DiskChart):
    """Map ``f`` of the closed unit disk onto a Jordan domain.

    ``f(0) = center_value`` and ``f'(0) = center_derivative`` points along
    the requested direction ``u``.
    """

    domain: JordanDomain
    chain: ZipperChain
    wc: complex
    rotation: complex
    center_value: Point2
    center_derivative: complex
    boundary_defect: float = field(default=math.nan)

    @property
    def n_samples(self) -> int:
        return len(self.chain)

    def forward(self, z) -> np.ndarray:
        """Disk to domain; ``z`` is an (..., 2) array with ``|z| <= 1``."""
        zc = as_complex(z)
        if np.any(np.abs(zc) > 1 + 1e-9):
            raise OutOfDomain("forward evaluation needs |z| <= 1")
        return as_xy(self._from_disk(zc))

    def inverse(self, x) -> np.ndarray:
        """Domain to disk; ``x`` must lie in the closed domain."""
        xc = as_complex(x)
        sd = self.domain.boundary.signed_distance(np.asarray(x, dtype=float))
        if np.any(sd < -1e-6 * self.domain.diameter):
            raise OutOfDomain("inverse evaluation needs points in the closed domain")
        return as_xy(self._robust_to_disk(np.atleast_1d(xc)).reshape(xc.shape))

    def to_json(self) -> dict:
        return {
            "kind": "interior",
            "center_value": list(self.center_value),
            "center_derivative": [self.center_derivative.real, self.center_derivative.imag],
            "halfplane_center": [self.wc.real, self.wc.imag],
            "rotation": [self.rotation.real, self.rotation.imag],
            "boundary_defect": self.boundary_defect,
            "stages": self.chain.to_json(),
        }


@dataclass(frozen=True, eq=False)
class ExteriorMap(_DiskChart):
    """Map ``g`` of the punctured closed disk onto the closed complement.

    ``g(z) -> infinity`` as ``z -> 0``; the gauge makes the leading
    coefficient of ``1/g`` at 0 real and positive.
    """

    domain: JordanDomain
    chain: ZipperChain
    wc: complex
    rotation: complex
    leading_coefficient: float
    boundary_defect: float = field(default=math.nan)

    def forward(self, z) -> np.ndarray:
        zc = as_complex(z)
        if np.any(np.abs(zc) > 1 + 1e-9):
            raise OutOfDomain("forward evaluation needs 0 < |z| <= 1")
        return as_xy(self._from_disk(zc))

    def inverse(self, x) -> np.ndarray:
        xc = as_complex(x)
        sd = self.domain.boundary.signed_distance(np.asarray(x, dtype=float))
        if np.any(sd > 1e-6 * self.domain.diameter):
            raise OutOfDomain("exterior inverse needs points in the closed complement")
        return as_xy(self._robust_to_disk(np.atleast_1d(xc)).reshape(xc.shape))

    def with_gauge(self, angle: float) -> ExteriorMap:
        """Same map precomposed with a rotation of the disk by ``angle``."""
        return ExteriorMap(
            self.domain,
            self.chain,
            self.wc,
            self.rotation * cmath.exp(1j * angle),
            self.leading_coefficient,
            self.boundary_defect,
        )

    def to_json(self) -> dict:
        return {
            "kind": "exterior",
            "infinity_image": [self.wc.real, self.wc.imag],
            "rotation": [self.rotation.real, self.rotation.imag],
            "leading_coefficient": self.leading_coefficient,
            "boundary_defect": self.boundary_defect,
            "stages": self.chain.to_json(),
        }


def _refinement_sizes(config: MapConfig):
    n = config.n
    while n <= config.max_n:
        yield n
        n *= 2


def build_interior_map(D: JordanDomain, p=(0.0, 0.0), u=(1.0, 0.0), config: MapConfig = MapConfig()) -> ConformalMap:
    """Riemann map ``f`` of the unit disk onto ``D`` with ``f(0) = p`` and
    ``f'(0)`` parallel to ``u``.

    Boundary samples double from ``config.n`` until the image of the unit
    circle lies within ``config.tol * diam(D)`` of the boundary.

    Raises
    ------
    ZeroDirection, PointNotInterior, DidNotConverge
    """
    uc = complex(u[0], u[1])
    if uc == 0 or not cmath.isfinite(uc):
        raise ZeroDirection("direction u must be a nonzero finite vector")
    if locate(D, p).location is not Location.INTERIOR:
        raise PointNotInterior(f"point {tuple(p)} is not interior to the domain")
    pc = complex(p[0], p[1])
    diam = D.diameter
    h = 1e-5 * diam
    last = None
    for n in _refinement_sizes(config):
        try:
            chain = ZipperChain.build(as_complex(D.boundary.sample(n)))
        except DidNotConverge as exc:
            last = str(exc)
            continue
        wc = complex(chain.to_halfplane(pc))
        if not wc.imag > 0:
            last = "center did not map into the upper half-plane"
            continue
        gp, gm = chain.to_halfplane(np.array([pc + h, pc - h]))
        mob = lambda w: (w - wc) / (w - wc.conjugate())  # noqa: E731
        dG = (mob(gp) - mob(gm)) / (2 * h)
        rotation = cmath.exp(-1j * (cmath.phase(uc) + cmath.phase(dG)))
        fmap = ConformalMap(D, chain, wc, rotation, Point2(pc.real, pc.imag), 1 / (rotation * dG))
        defect = fmap._measure_defect()
        fmap = ConformalMap(D, chain, wc, rotation, fmap.center_value, fmap.center_derivative, defect)
        if defect <= config.tol * diam:
            return fmap
        last = f"boundary defect {defect:.3e} at n={n}"
    raise DidNotConverge(f"interior map did not reach tol={config.tol}: {last}")


def build_exterior_map(Dn: JordanDomain, config: MapConfig = MapConfig()) -> ExteriorMap:
    """Conformal map of the punctured disk onto the closed complement of a
    normalized domain (circumcenter at the origin, circumradius 1)."""
    c = Dn.circumcircle
    if abs(c.radius - 1) > 1e-6 or math.hypot(*c.center) > 1e-6:
        raise ValueError("exterior maps are built for normalized domains; apply the normalizer first")
    h = 1e-4
    last = None
    for n in _refinement_sizes(config):
        try:
            chain = ZipperChain.build(_reverse_keep_first(as_complex(Dn.boundary.sample(n))))
        except DidNotConverge as exc:
            last = str(exc)
            continue
        wc = chain.infinity_image()
        if not wc.imag > 0:
            last = "infinity did not map into the upper half-plane"
            continue
        gp, gm = chain.to_halfplane(np.array([1 / h, -1 / h]))
        lead = ((gp - wc) / (gp - wc.conjugate()) - (gm - wc) / (gm - wc.conjugate())) / (2 * h)
        rotation = lead.conjugate() / abs(lead)
        gmap = ExteriorMap(Dn, chain, wc, rotation, 1 / abs(lead))
        defect = gmap._measure_defect()
        gmap = ExteriorMap(Dn, chain, wc, rotation, 1 / abs(lead), defect)
        if defect <= config.tol * Dn.diameter:
            return gmap
        last = f"boundary defect {defect:.3e} at n={n}"
    raise DidNotConverge(f"exterior map did not reach tol={config.tol}: {last}")


def evaluate(f: ConformalMap | ExteriorMap, z, direction: str = "forward") -> np.ndarray:
    if direction == "forward":
        return f.forward(z)
    if direction == "inverse":
        return f.inverse(z)
    raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")


def disk_grid(n_radii: int = 16, n_angles: int = 64) -> np.ndarray:
    """Polar probe grid of the closed unit disk, boundary circle included."""
    r = np.linspace(0, 1, n_radii + 1)[1:]
    th = 2 * np.pi * np.arange(n_angles) / n_angles
    z = (r[:, None] * np.exp(1j * th)[None, :]).ravel()
    return as_xy(np.concatenate([[0], z]))


def convergence_probe(
    D: JordanDomain, perturbations, p=(0.0, 0.0), u=(1.0, 0.0), config: MapConfig = MapConfig(), grid=None
) -> list[float]:
    """Sup over a disk grid of ``|f_{D_i,p,u} - f_{D,p,u}|`` for each perturbation."""
    grid = disk_grid() if grid is None else grid
    base = build_interior_map(D, p, u, config).forward(grid)
    out = []
    for Di in perturbations:
        fi = build_interior_map(Di, p, u, config).forward(grid)
        out.append(float(np.linalg.norm(fi - base, axis=-1).max()))
    return out
