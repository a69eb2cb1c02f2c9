"""SVG rendering of a size function from its cornerpoints."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .persistence import SizeFunctionDiagram

SIZE = 400
MARGIN = 40


def render_svg(d: SizeFunctionDiagram, title: str = "") -> str:
    """Half-plane x < y with the diagonal, one translucent region per
    cornerpoint (darker where the size function is larger), cornerpoint
    discs scaled by multiplicity and dashed lines for cornerpoints at
    infinity."""
    coords = list(d.infinity) + [c for x, y, _ in d.proper for c in (x, y)]
    lo, hi = (min(coords), max(coords)) if coords else (0.0, 1.0)
    span = hi - lo or 1.0
    lo, hi = lo - 0.15 * span, hi + 0.25 * span
    inner = SIZE - 2 * MARGIN

    def px(v):
        return MARGIN + (v - lo) / (hi - lo) * inner

    def py(v):
        return SIZE - MARGIN - (v - lo) / (hi - lo) * inner

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}" font-family="sans-serif" font-size="11">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{SIZE / 2}" y="18" text-anchor="middle">{escape(title)}</text>')

    for k in d.infinity:
        # {x' >= k, x' < y'} clipped to the frame
        pts = [(k, k), (hi, hi), (hi, hi), (k, hi)]
        out.append(_polygon(pts, px, py))
    for x, y, m in d.proper:
        pts = [(x, x), (y, y), (x, y)]
        for _ in range(m):
            out.append(_polygon(pts, px, py))

    out.append(
        f'<line x1="{px(lo):.2f}" y1="{py(lo):.2f}" x2="{px(hi):.2f}" y2="{py(hi):.2f}" '
        'stroke="black" stroke-width="1"/>'
    )
    for k in d.infinity:
        out.append(
            f'<line x1="{px(k):.2f}" y1="{py(k):.2f}" x2="{px(k):.2f}" y2="{py(hi):.2f}" '
            'stroke="crimson" stroke-width="2" stroke-dasharray="6 3"/>'
        )
        out.append(f'<text x="{px(k) + 4:.2f}" y="{py(hi) + 12:.2f}">k={k:.4g}</text>')
    for x, y, m in d.proper:
        r = 3 + 2 * m
        out.append(f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="{r}" fill="navy"/>')
        label = f"({x:.4g}, {y:.4g})" + (f" x{m}" if m > 1 else "")
        out.append(f'<text x="{px(x) + r + 3:.2f}" y="{py(y) - r:.2f}">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out)


def _polygon(pts, px, py):
    p = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in pts)
    return f'<polygon points="{p}" fill="steelblue" fill-opacity="0.25" stroke="none"/>'
