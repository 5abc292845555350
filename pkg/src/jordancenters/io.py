"""Curve ingest and atomic emission of JSON, CSV and SVG outputs."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from pathlib import Path
from typing import Sequence

import numpy as np

from .curve import Circle, JordanDomain, make_domain


def load_samples(path: str | os.PathLike) -> np.ndarray:
    """Read ``{"samples": [[x, y], ...], "closed": true}``."""
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(data, dict) or "samples" not in data:
        raise ValueError(f"{path}: expected an object with a 'samples' list")
    if data.get("closed", True) is not True:
        raise ValueError(f"{path}: only closed curves are supported")
    pts = np.asarray(data["samples"], dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError(f"{path}: samples must be a list of [x, y] pairs")
    return pts


def load_domain(path: str | os.PathLike) -> JordanDomain:
    return make_domain(load_samples(path))


def samples_json(points: np.ndarray) -> str:
    return json.dumps({"samples": np.asarray(points, dtype=float).tolist(), "closed": True})


def atomic_write(path: str | os.PathLike, data: str | bytes) -> None:
    """Write to a sibling temp file, then rename over ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    mode = "wb" if isinstance(data, bytes) else "w"
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, mode, **({} if mode == "wb" else {"encoding": "utf-8", "newline": ""})) as fh:
            fh.write(data)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dumps_result(payload: dict) -> str:
    return json.dumps(_plain(payload), sort_keys=True, indent=2, allow_nan=True)


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else repr(v)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def frames_csv(frames: Sequence[tuple[float, np.ndarray]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["frame_index", "time", "x", "y"])
    for k, (time, pts) in enumerate(frames):
        for x, y in pts:
            w.writerow([k, repr(float(time)), repr(float(x)), repr(float(y))])
    return buf.getvalue()


def medial_axis_csv(points: np.ndarray, radii: np.ndarray) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y", "radius"])
    for (x, y), r in zip(points, radii):
        w.writerow([repr(float(x)), repr(float(y)), repr(float(r))])
    return buf.getvalue()


def _path_d(pts: np.ndarray) -> str:
    head = f"M{pts[0, 0]:.6f},{-pts[0, 1]:.6f}"
    body = " ".join(f"L{x:.6f},{-y:.6f}" for x, y in pts[1:])
    return f"{head} {body} Z"


def curves_svg(curves: Sequence[np.ndarray], frame: Circle, *, stroke: str = "#1f4e79", width_px: int = 600) -> str:
    """One closed path per curve; opacity ramps from faint to solid in order.

    The viewBox is the square around ``frame`` padded by 10 percent. The y
    axis is flipped so that the picture has the usual orientation.
    """
    r = 1.1 * frame.radius
    cx, cy = frame.center
    x0, y0, side = cx - r, -cy - r, 2 * r
    sw = side / 400
    m = len(curves)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width_px}" height="{width_px}" '
        f'viewBox="{x0:.6f} {y0:.6f} {side:.6f} {side:.6f}">',
    ]
    for k, pts in enumerate(curves):
        op = 1.0 if m == 1 else 0.15 + 0.85 * k / (m - 1)
        lines.append(
            f'  <path d="{_path_d(np.asarray(pts))}" fill="none" stroke="{stroke}" '
            f'stroke-width="{sw:.6f}" stroke-opacity="{op:.3f}"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
