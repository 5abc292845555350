"""
Deformation of a Jordan domain onto the round disk of equal area.

The conformal stage shows ``D_t = c + (f(t B) - c)/t`` for ``t`` from 1
down to 0, where ``f`` is the Riemann map centered at ``c``; as ``t -> 0``
these converge to the disk of radius ``|f'(0)|`` about ``c``. The Minkowski
stage then interpolates the radius linearly to that of the target disk.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .centers import CenterKind
from .conformal import ConformalMap, MapConfig, build_interior_map
from .curve import Circle, JordanCurve, JordanDomain, Point2, as_xy, build_curve, resample_closed
from .retraction import canonical_center

T_MIN = 0.05
FRAME_SAMPLES = 512


class Stage(enum.Enum):
    CONFORMAL = "conformal"
    MINKOWSKI = "minkowski"


@dataclass(frozen=True, eq=False)
class FlowFrame:
    time: float
    curve: JordanCurve
    stage: Stage

    @property
    def points(self) -> np.ndarray:
        return self.curve.samples


def _unit_circle(n: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(n) / n)


def frame_angles(fmap: ConformalMap, n: int = FRAME_SAMPLES) -> np.ndarray:
    """Uniform angles merged with the node preimages, so boundary arcs of
    tiny harmonic measure are still traced."""
    return np.sort(np.concatenate([2 * np.pi * np.arange(4 * n) / (4 * n), fmap.node_angles()]))


def conformal_frame_points(
    fmap: ConformalMap, t: float, n: int = FRAME_SAMPLES, angles: np.ndarray | None = None
) -> np.ndarray:
    """``n`` equal-arc-length samples of ``h_t(dB)``; the limit circle is used below ``T_MIN``."""
    c = complex(*fmap.center_value)
    if t < T_MIN:
        return as_xy(c + abs(fmap.center_derivative) * _unit_circle(n))
    if t == 1:
        # the map interpolates the boundary nodes at their prevertices
        return fmap.domain.boundary.sample(n)
    th = frame_angles(fmap, n) if angles is None else angles
    w = fmap._from_disk(t * np.exp(1j * th))
    return resample_closed(as_xy(c + (w - c) / t), n)


def conformal_flow_frame(
    D: JordanDomain, c, t: float, *, fmap: ConformalMap | None = None, n: int = FRAME_SAMPLES, config: MapConfig = MapConfig()
) -> JordanCurve:
    if not 0 <= t <= 1:
        raise ValueError("t must lie in [0, 1]")
    if fmap is None:
        fmap = build_interior_map(D, c, (1.0, 0.0), config)
    return build_curve(conformal_frame_points(fmap, t, n))


def round_target(D: JordanDomain, c) -> Circle:
    area = D.area_centroid[0]
    return Circle(Point2(float(c[0]), float(c[1])), math.sqrt(area / math.pi))


def frame_schedule(n: int) -> list[tuple[float, Stage, float]]:
    """``(time, stage, parameter)`` per frame: map parameter ``t`` in the
    conformal stage, interpolation weight in the Minkowski stage."""
    if n < 4:
        raise ValueError("need at least 4 frames")
    n_conf = math.ceil(n / 2)
    n_mink = n - n_conf
    out = []
    for k in range(n_conf):
        tau = 0.5 * k / (n_conf - 1)
        out.append((tau, Stage.CONFORMAL, 1 - 2 * tau))
    for j in range(1, n_mink + 1):
        lam = j / n_mink
        out.append((0.5 + 0.5 * lam, Stage.MINKOWSKI, lam))
    return out


def flow_frames(
    D: JordanDomain,
    kind: CenterKind | str = CenterKind.CENTROID,
    n: int = 16,
    *,
    config: MapConfig = MapConfig(),
    samples: int = FRAME_SAMPLES,
    center=None,
) -> list[FlowFrame]:
    """Frames from ``dD`` (time 0) to the equal-area circle about the
    retracted center (time 1)."""
    c = canonical_center(D, kind, config) if center is None else Point2(*center)
    fmap = build_interior_map(D, c, (1.0, 0.0), config)
    r0 = abs(fmap.center_derivative)
    r1 = round_target(D, c).radius
    cz = complex(c[0], c[1])
    angles = frame_angles(fmap, samples)
    frames = []
    for tau, stage, s in frame_schedule(n):
        if stage is Stage.CONFORMAL:
            pts = conformal_frame_points(fmap, s, samples, angles)
        else:
            pts = as_xy(cz + ((1 - s) * r0 + s * r1) * _unit_circle(samples))
        frames.append(FlowFrame(tau, build_curve(pts), stage))
    return frames
