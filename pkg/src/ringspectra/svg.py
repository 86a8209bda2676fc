"""Deterministic SVG emission for locus points and region boundaries.

Byte output is a pure function of the input: fixed canvas, fixed float
formatting, no timestamps, points and boundary rendered in input order.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

WIDTH = 640
HEIGHT = 480
MARGIN = 40


def _fmt(v: float) -> str:
    return f"{v:.4f}"


def render_svg(points, boundary=None) -> str:
    """SVG document with axes, an optional boundary polyline, and point markers."""
    pts = np.asarray(points, dtype=complex).ravel()
    if pts.size == 0:
        raise ValueError("emit_svg needs at least one point")
    bnd = None
    if boundary is not None:
        bnd = np.asarray(boundary, dtype=complex).ravel()
        if bnd.size == 0:
            bnd = None

    xs = [pts.real.min(), pts.real.max()]
    ys = [pts.imag.min(), pts.imag.max()]
    if bnd is not None:
        xs += [bnd.real.min(), bnd.real.max()]
        ys += [bnd.imag.min(), bnd.imag.max()]
    x_lo, x_hi = min(xs + [0.0]), max(xs + [0.0])
    y_lo, y_hi = min(ys + [0.0]), max(ys + [0.0])
    x_pad = 0.05 * (x_hi - x_lo) or 1.0
    y_pad = 0.05 * (y_hi - y_lo) or 1.0
    x_lo, x_hi = x_lo - x_pad, x_hi + x_pad
    y_lo, y_hi = y_lo - y_pad, y_hi + y_pad

    def sx(x: float) -> float:
        return MARGIN + (x - x_lo) / (x_hi - x_lo) * (WIDTH - 2 * MARGIN)

    def sy(y: float) -> float:
        return HEIGHT - MARGIN - (y - y_lo) / (y_hi - y_lo) * (HEIGHT - 2 * MARGIN)

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        # axes through the origin
        f'<line x1="{_fmt(sx(x_lo))}" y1="{_fmt(sy(0.0))}" x2="{_fmt(sx(x_hi))}" '
        f'y2="{_fmt(sy(0.0))}" stroke="#888888" stroke-width="1"/>',
        f'<line x1="{_fmt(sx(0.0))}" y1="{_fmt(sy(y_lo))}" x2="{_fmt(sx(0.0))}" '
        f'y2="{_fmt(sy(y_hi))}" stroke="#888888" stroke-width="1"/>',
    ]
    if bnd is not None:
        coords = " ".join(f"{_fmt(sx(p.real))},{_fmt(sy(p.imag))}" for p in bnd)
        lines.append(
            f'<polyline points="{coords}" fill="none" stroke="#cc2222" stroke-width="1.5"/>'
        )
    for p in pts:
        lines.append(
            f'<circle cx="{_fmt(sx(p.real))}" cy="{_fmt(sy(p.imag))}" r="2.5" '
            f'fill="#1155cc"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def emit_svg(points, boundary=None, path=None) -> str:
    """Write the SVG for the given points (and optional boundary polyline).

    Returns the document text; writes it to path when given.  Output bytes
    are deterministic for fixed input.
    """
    doc = render_svg(points, boundary)
    if path is not None:
        Path(path).write_text(doc, encoding="utf-8")
    return doc
