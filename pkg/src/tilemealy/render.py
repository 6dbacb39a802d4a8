"""SVG rendering of rectangle and torus tilings."""
import hashlib
from xml.sax.saxutils import escape


def color_for(name: str) -> str:
    """Stable color for an edge color name (same name, same fill, every run)."""
    h = int.from_bytes(hashlib.sha1(name.encode()).digest()[:4], "big")
    hue = h % 360
    light = 45 + (h >> 9) % 20
    return f"hsl({hue},70%,{light}%)"


def tiling_svg(tileset, tiling, cell: int = 40, labels: bool = True) -> str:
    w, h = tiling.width, tiling.height
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w * cell}" height="{h * cell}" '
             f'viewBox="0 0 {w * cell} {h * cell}">']
    for y in range(h):
        for x in range(w):
            t = tileset[tiling.at(x, y)]
            # y grows northward; SVG rows grow downward
            x0, y0 = x * cell, (h - 1 - y) * cell
            x1, y1 = x0 + cell, y0 + cell
            cx, cy = x0 + cell / 2, y0 + cell / 2
            for color, pts in ((t.north, f"{x0},{y0} {x1},{y0} {cx},{cy}"),
                               (t.east, f"{x1},{y0} {x1},{y1} {cx},{cy}"),
                               (t.south, f"{x1},{y1} {x0},{y1} {cx},{cy}"),
                               (t.west, f"{x0},{y1} {x0},{y0} {cx},{cy}")):
                parts.append(f'<polygon points="{pts}" fill="{color_for(color)}" stroke="#333" '
                             f'stroke-width="0.5"/>')
            if labels:
                parts.append(f'<text x="{cx}" y="{cy + 4}" font-size="{cell // 4}" '
                             f'text-anchor="middle">{escape(t.name)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
