"""Matplotlib figures of Newton polygons, written to image files."""

from __future__ import annotations

from typing import Sequence

from .polygon import SlopeMultiset


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def plot_polygons(polys: Sequence[SlopeMultiset], labels: Sequence[str], path: str,
                  title: str | None = None, width: float = 6.0) -> str:
    """Draw each polygon from the origin on one set of axes and save to ``path``."""
    if not polys:
        raise ValueError("nothing to plot")
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(width, width * 0.62))
    for poly, label in zip(polys, labels):
        verts = poly.vertices()
        xs = [float(x) for x, _ in verts]
        ys = [float(y) for _, y in verts]
        ax.plot(xs, ys, marker="o", markersize=3, linewidth=1.5, label=label)
    dim = max(p.dim for p in polys)
    ax.set_xlim(0, dim)
    if dim <= 32:
        ax.set_xticks(range(dim + 1))
    ax.set_xlabel("dimension")
    ax.set_ylabel("valuation")
    ax.grid(True, linewidth=0.3)
    ax.legend(loc="upper left", fontsize="small")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None} if path.endswith(".png") else None)
    plt.close(fig)
    return path
