"""Deterministic SVG drawings of trapezoid representations."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from xml.sax.saxutils import escape

from .representation import TrapezoidRepresentation

WIDTH = 800
HEIGHT = 300
MARGIN = 40
TOP_Y = 60  # y of the upper baseline (model height 1)
BOTTOM_Y = 240  # y of the lower baseline (model height 0)

PALETTE = (
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
)


def _fmt(v: Fraction | float) -> str:
    s = f"{float(v):.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def viewport(rep: TrapezoidRepresentation):
    """Affine map from model x to pixel x (identity-ish for empty input)."""
    xs = [c for tz in rep.values() for c in tz.coords()]
    if not xs:
        return lambda v: Fraction(MARGIN)
    lo, hi = min(xs), max(xs)
    span = hi - lo or Fraction(1)
    scale = Fraction(WIDTH - 2 * MARGIN) / span
    return lambda v: MARGIN + (Fraction(v) - lo) * scale


def to_svg(rep: TrapezoidRepresentation, title: str | None = None) -> str:
    px = viewport(rep)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{MARGIN}" y="24" font-family="sans-serif" font-size="14">{escape(title)}</text>')
    for y in (TOP_Y, BOTTOM_Y):
        out.append(
            f'<line class="baseline" x1="0" y1="{y}" x2="{WIDTH}" y2="{y}" stroke="black" stroke-width="1.5"/>'
        )
    for k, name in enumerate(rep.elements):
        tz = rep[name]
        pts = [(px(tz.L), TOP_Y), (px(tz.R), TOP_Y), (px(tz.r), BOTTOM_Y), (px(tz.l), BOTTOM_Y)]
        points = " ".join(f"{_fmt(x)},{y}" for x, y in pts)
        color = PALETTE[k % len(PALETTE)]
        out.append(
            f'<polygon class="trapezoid" data-name="{escape(name)}" points="{points}" '
            f'fill="{color}" fill-opacity="0.35" stroke="{color}" stroke-width="1"/>'
        )
        cx = sum(x for x, _ in pts) / 4
        cy = (TOP_Y + BOTTOM_Y) / 2 + (k % 5 - 2) * 14
        out.append(
            f'<text x="{_fmt(cx)}" y="{_fmt(cy)}" font-family="sans-serif" font-size="12" '
            f'text-anchor="middle">{escape(name)}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(rep: TrapezoidRepresentation, out: str | Path, title: str | None = None) -> Path:
    path = Path(out)
    try:
        path.write_text(to_svg(rep, title))
    except OSError as exc:
        raise OSError(f"cannot write SVG to {path}: {exc.strerror or exc}") from exc
    return path
