"""Static SVG drawings of subdivisions and tropical curves (write-only)."""
from __future__ import annotations

from fractions import Fraction

from .geometry import lattice_points
from .subdivision import Subdivision
from .tropcurve import TropicalCurve

UNIT = 60
MARGIN = 30
MAX_SIZE = 600


def _fmt(v) -> str:
    return f"{float(v):.3f}".rstrip("0").rstrip(".")


class _Canvas:
    """Maps plane coordinates into SVG pixels (y axis flipped)."""

    def __init__(self, xmin, xmax, ymin, ymax):
        # large pictures are shrunk to about MAX_SIZE pixels
        unit = min(Fraction(UNIT), Fraction(MAX_SIZE) / max(xmax - xmin, ymax - ymin))
        self.xmin, self.ymax, self.unit = xmin, ymax, unit
        self.width = (xmax - xmin) * unit + 2 * MARGIN
        self.height = (ymax - ymin) * unit + 2 * MARGIN
        self.items: list[str] = []

    def xy(self, p) -> tuple[str, str]:
        return (_fmt((p[0] - self.xmin) * self.unit + MARGIN),
                _fmt((self.ymax - p[1]) * self.unit + MARGIN))

    def line(self, a, b, cls: str) -> None:
        (x1, y1), (x2, y2) = self.xy(a), self.xy(b)
        self.items.append(f'<line class="{cls}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')

    def dot(self, p, filled: bool) -> None:
        x, y = self.xy(p)
        cls = "mark" if filled else "unmarked"
        self.items.append(f'<circle class="{cls}" cx="{x}" cy="{y}" r="4"/>')

    def text(self, p, s: str) -> None:
        x, y = self.xy(p)
        self.items.append(f'<text x="{x}" y="{y}">{s}</text>')

    def render(self) -> str:
        style = (
            ".edge{stroke:#222;stroke-width:2}"
            ".outline{stroke:#000;stroke-width:3;fill:none}"
            ".curve{stroke:#b22;stroke-width:2}"
            ".mark{fill:#000;stroke:#000}"
            ".unmarked{fill:#fff;stroke:#000;stroke-width:1.5}"
            ".vertex{fill:#b22}"
            "text{font:12px sans-serif;fill:#b22}"
        )
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(self.width)}" '
            f'height="{_fmt(self.height)}" viewBox="0 0 {_fmt(self.width)} {_fmt(self.height)}">'
        )
        return "\n".join([head, f"<style>{style}</style>", *self.items, "</svg>"]) + "\n"


def render_subdivision(S: Subdivision) -> str:
    """Cells and outline; marked points filled, unmarked lattice points hollow."""
    verts = S.base.vertices
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    canvas = _Canvas(min(xs), max(xs), min(ys), max(ys))
    for e in S.edges:
        canvas.line(e[0], e[1], "edge")
    for i in range(len(verts)):
        canvas.line(verts[i], verts[(i + 1) % len(verts)], "outline")
    marked = {m for c in S.cells for m in c.marks}
    for p in lattice_points(verts):
        canvas.dot(p, p in marked)
    return canvas.render()


def _clip_ray(start, direction, box) -> tuple[Fraction, Fraction]:
    """Point where the ray leaves the box ``(xmin, xmax, ymin, ymax)``."""
    xmin, xmax, ymin, ymax = box
    ts = []
    dx, dy = direction
    if dx:
        ts.append(((xmax if dx > 0 else xmin) - start[0]) / dx)
    if dy:
        ts.append(((ymax if dy > 0 else ymin) - start[1]) / dy)
    t = min(ts)
    return start[0] + t * dx, start[1] + t * dy


def render_curve(curve: TropicalCurve) -> str:
    """Vertices, bounded edges and rays clipped to a box around the vertices;
    weights greater than 1 are written next to their edge."""
    xs = [v[0] for v in curve.vertices]
    ys = [v[1] for v in curve.vertices]
    box = (min(xs) - 2, max(xs) + 2, min(ys) - 2, max(ys) + 2)
    canvas = _Canvas(*box)
    for e in curve.bounded_edges:
        a, b = curve.vertices[e.start], curve.vertices[e.end]
        canvas.line(a, b, "curve")
        if e.weight > 1:
            canvas.text(((a[0] + b[0]) / 2, (a[1] + b[1]) / 2), str(e.weight))
    for r in curve.rays:
        a = curve.vertices[r.vertex]
        b = _clip_ray(a, r.direction, box)
        canvas.line(a, b, "curve")
        if r.weight > 1:
            canvas.text(((a[0] + b[0]) / 2, (a[1] + b[1]) / 2), str(r.weight))
    for v in curve.vertices:
        x, y = canvas.xy(v)
        canvas.items.append(f'<circle class="vertex" cx="{x}" cy="{y}" r="3"/>')
    return canvas.render()
