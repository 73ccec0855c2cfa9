"""SVG drawing of reported regions."""

from __future__ import annotations

import hashlib
from typing import Sequence
from xml.sax.saxutils import quoteattr

from .scene import BACKGROUND_ID


def owner_color(owner: int) -> str:
    if owner == BACKGROUND_ID:
        return "#ffffff"
    digest = hashlib.sha1(str(owner).encode()).digest()
    # keep colours away from white so thin pieces stay visible
    r, g, b = (64 + d % 160 for d in digest[:3])
    return f"#{r:02x}{g:02x}{b:02x}"


def render_svg(regions: Sequence[Sequence], width: int = 800, margin: int = 10) -> str:
    """Filled rectangle per region, y pointing up, scaled to ``width`` pixels."""
    if not regions:
        return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{2 * margin}" '
                f'height="{2 * margin}"></svg>\n')
    xmin = min(r[1] for r in regions)
    xmax = max(r[2] for r in regions)
    ymin = min(r[3] for r in regions)
    ymax = max(r[4] for r in regions)
    scale = (width - 2 * margin) / max(xmax - xmin, ymax - ymin)
    height = int(round((ymax - ymin) * scale)) + 2 * margin
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#f4f4f4"/>',
    ]
    for owner, x0, x1, y0, y1 in regions:
        px = margin + (x0 - xmin) * scale
        py = margin + (ymax - y1) * scale
        lines.append(
            f'<rect x="{px:.3f}" y="{py:.3f}" width="{(x1 - x0) * scale:.3f}" '
            f'height="{(y1 - y0) * scale:.3f}" fill="{owner_color(int(owner))}" '
            f'stroke="#333" stroke-width="0.3"><title>{quoteattr(str(owner))[1:-1]}</title></rect>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
