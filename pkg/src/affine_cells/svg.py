"""Alcove pictures for rank 2 groups.

Type C~2 uses the drawing coordinates (x1 - x2, x1 + x2), which put the
fundamental alcove at the triangle (0,0), (0,1), (1/2,1/2).  Other rank 2
types are projected orthonormally onto the span of their roots.
"""

from __future__ import annotations

import math
from collections import deque
from typing import Callable, Iterable

from .group import AffineWeylGroup, Element

PALETTE = ["#f4c542", "#7fb3d5", "#82c785", "#e59866", "#bb8fce", "#f1948a",
           "#76d7c4", "#d7bde2", "#f8c471", "#85c1e9", "#abebc6", "#edbb99"]


def drawing_map(W: AffineWeylGroup) -> Callable:
    if W.rank != 2:
        raise ValueError("pictures are only drawn for rank 2 groups")
    if W.type_label == "C" and W.dim == 2:
        return lambda x: (float(x[0] - x[1]), float(x[0] + x[1]))
    simple = [[float(c) for c in f] for f in W.forms.simple]
    basis = []
    for v in simple:
        for b in basis:
            d = sum(x * y for x, y in zip(v, b))
            v = [x - d * y for x, y in zip(v, b)]
        n = math.sqrt(sum(x * x for x in v))
        basis.append([x / n for x in v])
    return lambda x: tuple(sum(float(a) * b for a, b in zip(x, e)) for e in basis)


def alcove_polygon(W: AffineWeylGroup, w: Element, proj) -> list[tuple[float, float]]:
    return [proj(w.apply(v)) for v in W.vertices.values()]


def alcoves_in_window(W: AffineWeylGroup, half_width: float = 6.0) -> list[Element]:
    """Elements whose alcove barycentre falls in [-h, h]^2, found by walking
    through adjacent alcoves."""
    proj = drawing_map(W)

    def inside(w):
        x, y = proj(w.point)
        return abs(x) <= half_width and abs(y) <= half_width

    seen = {W.identity}
    queue = deque([W.identity])
    while queue:
        w = queue.popleft()
        for s in W.generators:
            z = W.right_mul(w, s)
            if z not in seen and inside(z):
                seen.add(z)
                queue.append(z)
    return sorted(seen)


def render(W: AffineWeylGroup, alcoves: Iterable[Element], piece_of: dict, stars: Iterable[Element] = (),
           half_width: float = 6.0, scale: float = 40.0) -> str:
    """SVG text: pieces filled by colour, stars on marked alcoves, A0 in black."""
    proj = drawing_map(W)
    size = 2 * half_width * scale

    def xy(p):
        return (p[0] + half_width) * scale, (half_width - p[1]) * scale

    stars = set(stars)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size:.0f}" height="{size:.0f}" '
           f'viewBox="0 0 {size:.0f} {size:.0f}">',
           f'<rect width="{size:.0f}" height="{size:.0f}" fill="white"/>']
    for w in alcoves:
        pts = " ".join(f"{a:.2f},{b:.2f}" for a, b in map(xy, alcove_polygon(W, w, proj)))
        if w == W.identity:
            fill = "black"
        elif w in piece_of:
            fill = PALETTE[piece_of[w] % len(PALETTE)]
        else:
            fill = "none"
        label = f' data-word="{W.format_word(w.word) or "e"}"'
        if w in piece_of:
            label += f' data-sigma="{piece_of[w]}"'
        out.append(f'<polygon points="{pts}" fill="{fill}" stroke="#555" stroke-width="0.5"{label}/>')
    for w in sorted(stars):
        cx, cy = xy(proj(w.point))
        out.append(f'<text x="{cx:.2f}" y="{cy + 3:.2f}" font-size="9" text-anchor="middle">*</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
