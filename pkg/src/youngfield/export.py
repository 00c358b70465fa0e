"""Serialization helpers: exact rationals as strings, CSV files with metadata
headers, and self-contained SVG heatmaps.

SVG heatmaps use a fixed 640 x 480 canvas and a fixed diverging ramp
(blue ``#2166ac`` - white ``#f7f7f7`` - red ``#b2182b``) symmetric around
zero, so identical data always produce byte-identical files.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import __version__

CANVAS_WIDTH = 640
CANVAS_HEIGHT = 480
MARGIN = 40
RAMP = ((0x21, 0x66, 0xAC), (0xF7, 0xF7, 0xF7), (0xB2, 0x18, 0x2B))


def rational(x) -> str:
    """``"num/den"`` (or ``"num"`` for integers) for exact values."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def to_plain(obj):
    """Recursively replace :class:`Fraction` values by ``"num/den"`` strings."""
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def metadata(config: dict) -> dict:
    return {"library": "youngfield", "version": __version__, "config": to_plain(config)}


def dumps_json(payload: dict, config: dict) -> str:
    document = {"meta": metadata(config), **to_plain(payload)}
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def dumps_csv(header: Sequence[str], rows: Iterable[Sequence], config: dict) -> str:
    """CSV text preceded by ``#``-comment lines carrying the version and run configuration."""
    buf = io.StringIO()
    buf.write(f"# youngfield {__version__}\n")
    buf.write("# config " + json.dumps(to_plain(config), sort_keys=True) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([to_plain(v) for v in row])
    return buf.getvalue()


def read_csv(text: str) -> tuple[list[str], list[list[str]]]:
    """Inverse of :func:`dumps_csv` for the data part (comment lines skipped)."""
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    rows = list(csv.reader(lines))
    return rows[0], rows[1:]


def ramp_color(value: float, scale: float) -> str:
    """Diverging colour for ``value`` in ``[-scale, scale]``."""
    if scale <= 0:
        t = 0.0
    else:
        t = max(-1.0, min(1.0, value / scale))
    lo, mid, hi = RAMP
    a, b, s = (mid, hi, t) if t >= 0 else (mid, lo, -t)
    rgb = tuple(round(a[i] + (b[i] - a[i]) * s) for i in range(3))
    return "#%02x%02x%02x" % rgb


def svg_heatmap(values: np.ndarray, x_labels: Sequence, y_labels: Sequence, title: str, config: dict) -> str:
    """Heatmap of ``values[i, j]`` (row ``i`` drawn bottom-up, column ``j`` left to right)."""
    values = np.asarray(values, dtype=float)
    rows, cols = values.shape
    scale = float(np.max(np.abs(values))) if values.size else 0.0
    width = CANVAS_WIDTH - 2 * MARGIN
    height = CANVAS_HEIGHT - 2 * MARGIN
    cw, ch = width / max(cols, 1), height / max(rows, 1)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS_WIDTH}" height="{CANVAS_HEIGHT}" '
        f'viewBox="0 0 {CANVAS_WIDTH} {CANVAS_HEIGHT}">',
        "<metadata>" + json.dumps(metadata(config), sort_keys=True).replace("&", "&amp;").replace("<", "&lt;") + "</metadata>",
        f'<rect x="0" y="0" width="{CANVAS_WIDTH}" height="{CANVAS_HEIGHT}" fill="#ffffff"/>',
        f'<text x="{CANVAS_WIDTH / 2:.1f}" y="{MARGIN / 2 + 5:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{title}</text>',
    ]
    for i in range(rows):
        y = MARGIN + (rows - 1 - i) * ch
        for j in range(cols):
            x = MARGIN + j * cw
            out.append(f'<rect x="{x:.2f}" y="{y:.2f}" width="{cw:.2f}" height="{ch:.2f}" '
                       f'fill="{ramp_color(values[i, j], scale)}"/>')
    if cols:
        out.append(f'<text x="{MARGIN}" y="{CANVAS_HEIGHT - MARGIN / 2:.1f}" font-family="sans-serif" '
                   f'font-size="10">{x_labels[0]}</text>')
        out.append(f'<text x="{CANVAS_WIDTH - MARGIN}" y="{CANVAS_HEIGHT - MARGIN / 2:.1f}" text-anchor="end" '
                   f'font-family="sans-serif" font-size="10">{x_labels[-1]}</text>')
    if rows:
        out.append(f'<text x="{MARGIN / 2:.1f}" y="{CANVAS_HEIGHT - MARGIN:.1f}" font-family="sans-serif" '
                   f'font-size="10">{y_labels[0]}</text>')
        out.append(f'<text x="{MARGIN / 2:.1f}" y="{MARGIN + 10:.1f}" font-family="sans-serif" '
                   f'font-size="10">{y_labels[-1]}</text>')
    out.append(f'<text x="{CANVAS_WIDTH - MARGIN}" y="{MARGIN / 2 + 5:.1f}" text-anchor="end" '
               f'font-family="sans-serif" font-size="10">|max| = {scale:.4g}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
