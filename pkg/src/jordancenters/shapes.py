"""Deterministic fixture shapes.

Every generator returns an ``(n, 2)`` array of counterclockwise samples;
:func:`make_shape` wraps them into a :class:`JordanDomain`.
"""

from __future__ import annotations

import math

import numpy as np

from .curve import JordanDomain, make_domain


def circle(r: float = 1.0, cx: float = 0.0, cy: float = 0.0, n: int = 512) -> np.ndarray:
    th = 2 * np.pi * np.arange(n) / n
    return np.column_stack([cx + r * np.cos(th), cy + r * np.sin(th)])


def ellipse(
    a: float = 2.0, b: float = 1.0, cx: float = 0.0, cy: float = 0.0, angle: float = 0.0, n: int = 512
) -> np.ndarray:
    th = 2 * np.pi * np.arange(n) / n
    x, y = a * np.cos(th), b * np.sin(th)
    c, s = math.cos(angle), math.sin(angle)
    return np.column_stack([cx + c * x - s * y, cy + s * x + c * y])


def egg(size: float = 1.0, e: float = 0.3, n: int = 512) -> np.ndarray:
    """Limacon ``r = size * (1 + e cos th)``; convex for ``e <= 1/2``."""
    th = 2 * np.pi * np.arange(n) / n
    r = size * (1 + e * np.cos(th))
    return np.column_stack([r * np.cos(th), r * np.sin(th)])


def blob(n: int = 512, amp3: float = 0.25, amp2: float = 0.1) -> np.ndarray:
    """Rounded, triangle-like, nonconvex star domain without symmetries."""
    th = 2 * np.pi * np.arange(n) / n
    r = 1 + amp3 * np.cos(3 * th) + amp2 * np.sin(2 * th + 0.5)
    return np.column_stack([r * np.cos(th), r * np.sin(th)])


def _arc_sampler(center, radius, a0, a1):
    length = abs(a1 - a0) * radius

    def at(u):
        ang = a0 + (a1 - a0) * u
        return np.column_stack([center[0] + radius * np.cos(ang), center[1] + radius * np.sin(ang)])

    return length, at


def lune_smoothed(
    outer: float = 1.0, inner: float = 0.85, shift: float = 0.3, fillet: float = 0.08, n: int = 512
) -> np.ndarray:
    """Crescent ``B(0, outer) minus B((shift, 0), inner)`` with filleted horns.

    The two horn tips are replaced by circular fillets of radius ``fillet``
    tangent to both circles, giving a C1 chain of four arcs; ``n`` samples
    equally spaced in arc length along it are returned for spline refitting.
    """
    ro, ri, d, rho = outer, inner, shift, fillet
    xc = ((ro - rho) ** 2 - (ri + rho) ** 2 + d * d) / (2 * d)
    yc = math.sqrt((ro - rho) ** 2 - xc * xc)
    top, bot = np.array([xc, yc]), np.array([xc, -yc])
    ic = np.array([d, 0.0])

    def ang(v):
        return math.atan2(v[1], v[0])

    to_top = top * ro / (ro - rho)
    to_bot = bot * ro / (ro - rho)
    ti_top = ic + (top - ic) * ri / (ri + rho)
    ti_bot = ic + (bot - ic) * ri / (ri + rho)

    a_out0 = ang(to_top)
    a_out1 = 2 * np.pi - a_out0
    # inner circle runs clockwise through its leftmost point
    b_in0 = ang(ti_bot - ic) % (2 * np.pi)
    b_in1 = ang(ti_top - ic) % (2 * np.pi)
    f_bot0 = ang(to_bot - bot)
    f_bot1 = ang(ti_bot - bot)
    while f_bot1 <= f_bot0:
        f_bot1 += 2 * np.pi
    f_top0 = ang(ti_top - top)
    f_top1 = ang(to_top - top)
    while f_top1 <= f_top0:
        f_top1 += 2 * np.pi

    pieces = [
        _arc_sampler((0.0, 0.0), ro, a_out0, a_out1),
        _arc_sampler(bot, rho, f_bot0, f_bot1),
        _arc_sampler(ic, ri, b_in0, b_in1),
        _arc_sampler(top, rho, f_top0, f_top1),
    ]
    lengths = np.array([p[0] for p in pieces])
    cum = np.concatenate([[0.0], np.cumsum(lengths)])
    s = cum[-1] * np.arange(n) / n
    out = np.empty((n, 2))
    which = np.searchsorted(cum, s, side="right") - 1
    for k, (length, at) in enumerate(pieces):
        sel = which == k
        out[sel] = at((s[sel] - cum[k]) / length)
    return out


GENERATORS = {
    "circle": circle,
    "ellipse": ellipse,
    "egg": egg,
    "lune-smoothed": lune_smoothed,
    "blob": blob,
}

# Pinned parameters of the five fixtures used by verification and tests.
FIXTURES: dict[str, dict] = {
    "circle": {"r": 1.0},
    "ellipse": {"a": 2.0, "b": 1.0},
    "egg": {"size": 1.0, "e": 0.3},
    "lune-smoothed": {},
    "blob": {},
}


def shape_samples(name: str, n: int = 512, **params) -> np.ndarray:
    try:
        gen = GENERATORS[name]
    except KeyError:
        raise ValueError(f"unknown shape {name!r}; choose from {sorted(GENERATORS)}") from None
    return gen(n=n, **params)


def make_shape(name: str, n: int = 512, **params) -> JordanDomain:
    return make_domain(shape_samples(name, n=n, **params))


def fixture(name: str, n: int = 512) -> JordanDomain:
    return make_shape(name, n=n, **FIXTURES[name])
