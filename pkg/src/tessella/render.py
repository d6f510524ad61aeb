"""ASCII and SVG pictures of 2D tilings."""
from __future__ import annotations

import colorsys
from xml.sax.saxutils import escape

from .formats import emit_tiling
from .lattice import DimensionError, Tiling

CELL = 24
THIN = 0.5
THICK = 2.5


def tile_color(i: int) -> str:
    """Fill colour for placement ``i``: golden-angle hue steps, so
    neighbouring ids get clearly different colours."""
    hue = (i * 0.618033988749895) % 1.0
    r, g, b = colorsys.hls_to_rgb(hue, 0.72, 0.55)
    return f"#{round(r * 255):02x}{round(g * 255):02x}{round(b * 255):02x}"


def render_svg(t: Tiling, cell: int = CELL) -> str:
    if t.region.dim != 2:
        raise DimensionError("only 2D tilings can be drawn")
    owner = {}
    for i, p in enumerate(t.placements):
        for c in p.cells():
            owner[c] = i
    cells = t.region.cells
    xs = [c[0] for c in cells]
    ys = [c[1] for c in cells]
    x0, y1 = min(xs), max(ys)
    width = (max(xs) - x0 + 1) * cell
    height = (y1 - min(ys) + 1) * cell

    def px(x, y):
        # lattice y grows upwards, SVG y downwards
        return (x - x0) * cell, (y1 - y + 1) * cell

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width + 2 * THICK}" '
           f'height="{height + 2 * THICK}" viewBox="{-THICK} {-THICK} '
           f'{width + 2 * THICK} {height + 2 * THICK}">']
    for c in sorted(cells, key=lambda c: (-c[1], c[0])):
        i = owner.get(c)
        fill = tile_color(i) if i is not None else "#ffffff"
        sx, sy = px(c[0], c[1] + 1)
        title = f"<title>{escape(t.tileset.tiles[t.placements[i].tile_index].name)}</title>" \
            if i is not None and t.tileset.tiles[t.placements[i].tile_index].name else ""
        out.append(f'<rect x="{sx}" y="{sy}" width="{cell}" height="{cell}" fill="{fill}" '
                   f'stroke="#999999" stroke-width="{THIN}">{title}</rect>')
    segs = []
    for (x, y) in sorted(cells):
        i = owner.get((x, y))
        for nb, a, b in (((x + 1, y), (x + 1, y), (x + 1, y + 1)),
                         ((x - 1, y), (x, y), (x, y + 1)),
                         ((x, y + 1), (x, y + 1), (x + 1, y + 1)),
                         ((x, y - 1), (x, y), (x + 1, y))):
            if nb not in cells or owner.get(nb) != i:
                if nb in cells and nb < (x, y):
                    continue  # shared edge, drawn once from the other side
                (ax, ay), (bx, by) = px(*a), px(*b)
                segs.append(f"M{ax} {ay}L{bx} {by}")
    out.append(f'<path d="{"".join(segs)}" fill="none" stroke="#000000" '
               f'stroke-width="{THICK}" stroke-linecap="square"/>')
    out.append("</svg>")
    return "\n".join(out)


def render(t: Tiling, format: str = "ascii") -> str:
    if t.region.dim != 2:
        raise DimensionError("only 2D tilings can be drawn")
    if format == "ascii":
        return emit_tiling(t, "ascii")
    if format == "svg":
        return render_svg(t)
    raise ValueError(f"unknown render format {format!r}")


__all__ = ["render", "render_svg", "tile_color"]
