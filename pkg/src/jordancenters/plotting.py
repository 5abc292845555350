"""Matplotlib figures for the ``render`` command."""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .centers import CenterKind  # noqa: E402
from .flow import FlowFrame  # noqa: E402
from .reach import MedialAxisApprox  # noqa: E402
from .retraction import CenterSolver  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.linewidth": 0.6,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 150,
}
MARKERS = {CenterKind.CENTROID: "o", CenterKind.CIRCUMCENTER: "s", CenterKind.STEINER: "^"}


def _closed(pts: np.ndarray) -> np.ndarray:
    return np.vstack([pts, pts[:1]])


def draw_centers(ax, solver: CenterSolver, medial: MedialAxisApprox | None = None) -> None:
    D = solver.domain
    b = _closed(D.boundary.dense)
    ax.plot(b[:, 0], b[:, 1], color="k", lw=1.0, label="boundary")
    h = _closed(solver.half.half.boundary.dense)
    ax.plot(h[:, 0], h[:, 1], color="0.5", lw=0.8, ls="--", label="half-reach offset")
    if medial is not None:
        ax.scatter(medial.points[:, 0], medial.points[:, 1], s=1, color="tab:green", alpha=0.5, label="medial axis")
    for kind in CenterKind:
        r = solver.report(kind)
        m = MARKERS[kind]
        ax.plot(*r.classical, m, mfc="none", mec="tab:red", ms=7)
        ax.plot(*r.point, m, color="tab:blue", ms=5, label=f"{kind.value}")
        if r.retracted:
            ax.annotate("", xy=r.point, xytext=r.classical, arrowprops={"arrowstyle": "->", "color": "0.4", "lw": 0.6})
    ax.set_aspect("equal")
    ax.set_title("classical (open) and retracted (filled) centers")
    ax.legend(loc="best", fontsize=7, frameon=False)


def draw_flow(ax, frames: list[FlowFrame]) -> None:
    cmap = plt.get_cmap("viridis")
    for k, fr in enumerate(frames):
        p = _closed(fr.points)
        ax.plot(p[:, 0], p[:, 1], color=cmap(k / max(len(frames) - 1, 1)), lw=0.8)
    ax.set_aspect("equal")
    ax.set_title("flow frames (time from dark to light)")


def render_figure(solver: CenterSolver, frames: list[FlowFrame], path: str | os.PathLike, medial=None) -> Path:
    """Two panels, centers and flow, saved atomically to ``path``; the format follows the suffix."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with plt.rc_context(STYLE):
        fig, axes = plt.subplots(1, 2, figsize=(9, 4.2))
        draw_centers(axes[0], solver, medial)
        draw_flow(axes[1], frames)
        fig.tight_layout()
        fd, tmp = tempfile.mkstemp(prefix=f".{path.stem}.", suffix=path.suffix, dir=path.parent)
        os.close(fd)
        try:
            fig.savefig(tmp)
            os.chmod(tmp, 0o644)
            os.replace(tmp, path)
        finally:
            plt.close(fig)
            if os.path.exists(tmp):
                os.unlink(tmp)
    return path
