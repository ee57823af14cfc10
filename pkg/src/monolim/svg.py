"""Self-contained SVG emission: staircase/hull overlays and sequence plots."""

from __future__ import annotations

from fractions import Fraction

from .convex import ConvexRegion, region_vertices_2d
from .lattice import MonomialIdeal

_SIZE = 420
_MARGIN = 36


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _header() -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE}" height="{_SIZE}" '
        f'viewBox="0 0 {_SIZE} {_SIZE}">',
        f'<rect width="{_SIZE}" height="{_SIZE}" fill="white"/>',
    ]


def staircase_svg(ideal: MonomialIdeal, region: ConvexRegion | None = None) -> str:
    """Staircase cells of a 2-D ideal with the hull boundary overlaid."""
    if ideal.ring.d != 2:
        raise ValueError("staircase plots are two-dimensional only")
    gens = ideal.gens
    span = max([g[0] for g in gens] + [g[1] for g in gens] + [4]) + 2
    scale = (_SIZE - 2 * _MARGIN) / span

    def px(x, y):
        return (_MARGIN + float(x) * scale,
                _SIZE - _MARGIN - float(y) * scale)

    parts = _header()
    for x in range(span):
        for y in range(span):
            if ideal.contains((x, y)):
                x0, y0 = px(x, y + 1)
                parts.append(
                    f'<rect x="{_fmt(x0)}" y="{_fmt(y0)}" width="{_fmt(scale)}" '
                    f'height="{_fmt(scale)}" fill="#c8d8f0" stroke="none"/>')
    for i in range(span + 1):
        x0, y0 = px(i, 0)
        x1, y1 = px(i, span)
        parts.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" '
                     f'y2="{_fmt(y1)}" stroke="#dddddd" stroke-width="0.5"/>')
        x0, y0 = px(0, i)
        x1, y1 = px(span, i)
        parts.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" '
                     f'y2="{_fmt(y1)}" stroke="#dddddd" stroke-width="0.5"/>')
    if region is not None and region.halfspaces:
        verts = region_vertices_2d(region)
        pts = " ".join(",".join(_fmt(c) for c in px(*v)) for v in verts)
        parts.append(f'<polyline points="{pts}" fill="none" stroke="#d04040" '
                     f'stroke-width="2"/>')
    for gx, gy in gens:
        x0, y0 = px(gx, gy)
        parts.append(f'<circle cx="{_fmt(x0)}" cy="{_fmt(y0)}" r="3.5" '
                     f'fill="#204080"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def regions_svg(regions, labels=()) -> str:
    """Boundary chains of 2-D cobounded regions, overlaid in distinct colors."""
    colors = ("#204080", "#d04040", "#208040", "#806020")
    chains = [region_vertices_2d(D) for D in regions]
    span = max((float(c) for verts in chains for v in verts for c in v),
               default=1.0) * 1.15 + 0.5
    scale = (_SIZE - 2 * _MARGIN) / span

    def px(x, y):
        return (_MARGIN + float(x) * scale,
                _SIZE - _MARGIN - float(y) * scale)

    parts = _header()
    for i in range(int(span) + 1):
        x0, y0 = px(i, 0)
        x1, y1 = px(i, span)
        parts.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" '
                     f'y2="{_fmt(y1)}" stroke="#eeeeee" stroke-width="0.5"/>')
        x0, y0 = px(0, i)
        x1, y1 = px(span, i)
        parts.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" '
                     f'y2="{_fmt(y1)}" stroke="#eeeeee" stroke-width="0.5"/>')
    for idx, verts in enumerate(chains):
        color = colors[idx % len(colors)]
        pts = " ".join(",".join(_fmt(c) for c in px(*v)) for v in verts)
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                     f'stroke-width="2"/>')
        if idx < len(labels):
            x0, y0 = px(*verts[0])
            parts.append(f'<text x="{_fmt(x0 + 4)}" y="{_fmt(y0 - 4)}" '
                         f'font-family="monospace" font-size="11" '
                         f'fill="{color}">{labels[idx]}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def sequence_svg(points, window=None, title: str = "") -> str:
    """Polyline of (n, value) samples with the tail window shaded."""
    data = [(int(n), float(v)) for n, v in points]
    if not data:
        raise ValueError("nothing to plot")
    xs = [n for n, _ in data]
    ys = [v for _, v in data]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if x_hi == x_lo:
        x_hi += 1
    if y_hi == y_lo:
        y_hi += 1
    pad = 0.08 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad

    def px(n, v):
        fx = (n - x_lo) / (x_hi - x_lo)
        fy = (v - y_lo) / (y_hi - y_lo)
        return (_MARGIN + fx * (_SIZE - 2 * _MARGIN),
                _SIZE - _MARGIN - fy * (_SIZE - 2 * _MARGIN))

    parts = _header()
    if window is not None:
        w0, w1 = window
        x0, _ = px(w0, y_lo)
        x1, _ = px(w1, y_lo)
        parts.append(f'<rect x="{_fmt(x0)}" y="{_MARGIN}" '
                     f'width="{_fmt(x1 - x0)}" height="{_SIZE - 2 * _MARGIN}" '
                     f'fill="#f2e8c8"/>')
    parts.append(f'<rect x="{_MARGIN}" y="{_MARGIN}" '
                 f'width="{_SIZE - 2 * _MARGIN}" height="{_SIZE - 2 * _MARGIN}" '
                 f'fill="none" stroke="#888888"/>')
    pts = " ".join(",".join(_fmt(c) for c in px(n, v)) for n, v in data)
    parts.append(f'<polyline points="{pts}" fill="none" stroke="#204080" '
                 f'stroke-width="1.5"/>')
    if title:
        parts.append(f'<text x="{_MARGIN}" y="{_MARGIN - 10}" '
                     f'font-family="monospace" font-size="12">{title}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def polygon_svg(points, title: str = "") -> str:
    """A closed exact-rational polygon (e.g. a counting body) on a grid."""
    pts = [(float(x), float(y)) for x, y in points]
    span = max([c for p in pts for c in p] + [1.0]) * 1.15 + 0.5
    scale = (_SIZE - 2 * _MARGIN) / span

    def px(x, y):
        return (_MARGIN + x * scale, _SIZE - _MARGIN - y * scale)

    parts = _header()
    for i in range(int(span) + 1):
        x0, y0 = px(i, 0)
        x1, y1 = px(i, span)
        parts.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" '
                     f'y2="{_fmt(y1)}" stroke="#eeeeee" stroke-width="0.5"/>')
        x0, y0 = px(0, i)
        x1, y1 = px(span, i)
        parts.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" '
                     f'y2="{_fmt(y1)}" stroke="#eeeeee" stroke-width="0.5"/>')
    chain = " ".join(",".join(_fmt(c) for c in px(*p)) for p in pts)
    parts.append(f'<polygon points="{chain}" fill="#c8d8f0" stroke="#204080" '
                 f'stroke-width="2" fill-opacity="0.6"/>')
    if title:
        parts.append(f'<text x="{_MARGIN}" y="{_MARGIN - 10}" '
                     f'font-family="monospace" font-size="12">{title}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def normalized_points(seq) -> list[tuple[int, float]]:
    return [(n, float(Fraction(v, n ** seq.degree))) for n, v in seq.entries if n]
