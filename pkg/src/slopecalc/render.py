"""Text renderings of a single polygon: ASCII art and a standalone SVG."""

from __future__ import annotations

import math
from fractions import Fraction

from .polygon import SlopeMultiset

SVG_SCALE = 100
_SVG_DIGITS = 4


def _vertices(poly: SlopeMultiset | None):
    if poly is None or not getattr(poly, "entries", None):
        raise ValueError("cannot render an empty polygon")
    return poly.vertices()


def _dec(q: Fraction) -> str:
    """Fixed-point decimal of an exact rational, trailing zeros stripped."""
    scaled = round(q * 10 ** _SVG_DIGITS)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10 ** _SVG_DIGITS)
    if frac == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{str(frac).rjust(_SVG_DIGITS, '0').rstrip('0')}"


def render_svg(poly: SlopeMultiset) -> str:
    """One ``<polyline>`` through the vertices, 100 units per lattice step.

    The y axis is flipped so the polygon rises upward.  A flat polygon gets
    a viewBox one lattice step tall so the document stays valid.
    """
    verts = _vertices(poly)
    xs = [x for x, _ in verts]
    ys = [y for _, y in verts]
    ymin, ymax = min(ys), max(ys)
    width = (max(xs) - min(xs)) * SVG_SCALE
    height = (ymax - ymin) * SVG_SCALE or Fraction(SVG_SCALE)
    pts = " ".join(f"{_dec(x * SVG_SCALE)},{_dec((ymax - y) * SVG_SCALE)}" for x, y in verts)
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_dec(width)} {_dec(height)}" '
        f'width="{_dec(width)}" height="{_dec(height)}">\n'
        f'  <polyline points="{pts}" fill="none" stroke="black" stroke-width="2"/>\n'
        "</svg>\n"
    )


def render_ascii(poly: SlopeMultiset, xscale: int = 4, yscale: int = 2) -> str:
    """Character plot of the polygon from (0, 0); one column per 1/xscale step.

    Flat stretches are drawn with ``_``, rising ones with ``/`` and falling
    ones with ``\\``.  A vertex list follows the picture.
    """
    verts = _vertices(poly)
    ys = [y for _, y in verts]
    ymin, ymax = min(ys), max(ys)
    rows = max(1, math.ceil((ymax - ymin) * yscale))
    cols = poly.dim * xscale
    grid = [[" "] * cols for _ in range(rows)]
    for c in range(cols):
        x_mid = Fraction(2 * c + 1, 2 * xscale)
        y = poly.evaluate(x_mid)
        slope = next(s for (x0, _), (x1, _), (s, _) in zip(verts, verts[1:], poly.entries)
                     if x0 <= x_mid <= x1)
        ch = "_" if slope == 0 else ("/" if slope > 0 else "\\")
        row = rows - 1 - math.floor((y - ymin) * yscale)
        grid[min(max(row, 0), rows - 1)][c] = ch
    lines = ["".join(r).rstrip() for r in grid]
    lines.append("vertices: " + " ".join(f"({_frac(x)},{_frac(y)})" for x, y in verts))
    return "\n".join(lines) + "\n"


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render(poly: SlopeMultiset, fmt: str) -> str:
    if fmt == "ascii":
        return render_ascii(poly)
    if fmt == "svg":
        return render_svg(poly)
    raise ValueError(f"unknown render format {fmt!r}")
