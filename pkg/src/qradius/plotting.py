"""Matplotlib renderers for figure series, range boundaries, and reports.

PNG files accompany the delimited outputs of the CLI. Rendering is headless
(Agg) and metadata is pinned so repeated runs produce identical bytes.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_PNG_META = {"Software": "qradius"}


def _save(fig, path):
    fig.savefig(path, dpi=150, metadata=_PNG_META)
    plt.close(fig)


def render_figure(fd, path) -> None:
    """Line plot of every column of a FigureData against its grid."""
    fig, ax = plt.subplots(figsize=(6, 4))
    for name, col in fd.columns.items():
        ax.plot(fd.grid, col, label=name, linewidth=1.5)
    ax.set_xlabel(fd.grid_name)
    ax.set_title(fd.figure_id)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    _save(fig, path)


def render_boundary(poly, path, overlay=None) -> None:
    """Draw the boundary polygon (closed), with axes through the origin."""
    fig, ax = plt.subplots(figsize=(5, 5))
    v = poly.vertices
    if len(v) == 1:
        ax.plot(v.real, v.imag, "o", color="C0", label="range point")
    else:
        closed = np.append(v, v[0])
        ax.plot(closed.real, closed.imag, "-", color="C0", linewidth=1.5, label="outer polygon")
        ax.fill(closed.real, closed.imag, color="C0", alpha=0.15)
    if overlay is not None:
        t = np.linspace(0, 2 * np.pi, 512)
        z = overlay.boundary(t)
        ax.plot(z.real, z.imag, "--", color="C1", linewidth=1.2, label="closed-form ellipse")
    ax.axhline(0.0, color="gray", linewidth=0.6)
    ax.axvline(0.0, color="gray", linewidth=0.6)
    ax.set_aspect("equal")
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_title(f"q = {poly.q.q:g}".replace("(", "").replace(")", ""))
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    _save(fig, path)


def render_report(report, path) -> None:
    """Bar chart of mean tightness per bound, annotated with violation counts."""
    rows = [r for r in report["results"] if r["trials"] > 0]
    ids = [r["bound_id"] for r in rows]
    tight = [r["mean_tightness"] if r["mean_tightness"] is not None else 0.0 for r in rows]
    fig, ax = plt.subplots(figsize=(7, 0.3 * max(8, len(ids)) + 1))
    ypos = np.arange(len(ids))
    colors = ["C3" if r["violations"] else ("C1" if r["warnings"] else "C0") for r in rows]
    ax.barh(ypos, tight, color=colors)
    ax.set_yticks(ypos, ids, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("mean tightness (lhs / rhs)")
    ax.set_xlim(0, 1)
    ax.set_title("campaign: bound tightness")
    fig.tight_layout()
    _save(fig, path)
