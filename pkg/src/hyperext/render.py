"""SVG drawings of arrangements in the plane.

Clipping is exact; floats appear only when coordinates are written out.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from hyperext.arrangement import Arrangement, build_semilattice
from hyperext.exactq import Flat, Hyperplane, to_rational

PREAMBLE = """\
<?xml version="1.0" standalone="no"?>
<svg width="%(size)d" height="%(size)d" viewBox="0 0 %(size)d %(size)d" version="1.1" xmlns="http://www.w3.org/2000/svg">
<rect x="0" y="0" width="%(size)d" height="%(size)d" style="fill:#ffffff;stroke:#000000;stroke-width:1"/>
"""

POSTAMBLE = """\
</svg>
"""

PLAIN = "#000000"
HIGHLIGHT = "#d62728"

Window = tuple[Fraction, Fraction, Fraction, Fraction]


class SVG:
    """Collects drawing commands in window coordinates."""

    def __init__(self, window: Window, size: int = 400):
        self.window = window
        self.size = size
        self.commands: list[str] = []

    def _xy(self, x: Fraction, y: Fraction) -> tuple[float, float]:
        x0, y0, x1, y1 = self.window
        return (
            float((x - x0) / (x1 - x0) * self.size),
            float((y1 - y) / (y1 - y0) * self.size),
        )

    def line(self, start: Sequence[Fraction], end: Sequence[Fraction], color: str = PLAIN, width: float = 1.5) -> None:
        (ax, ay), (bx, by) = self._xy(*start), self._xy(*end)
        self.commands.append(
            '<line x1="%.3f" y1="%.3f" x2="%.3f" y2="%.3f" style="stroke:%s;stroke-width:%.2f"/>'
            % (ax, ay, bx, by, color, width)
        )

    def circle(self, center: Sequence[Fraction], radius: float = 4.0, fill: str = PLAIN) -> None:
        cx, cy = self._xy(*center)
        self.commands.append('<circle cx="%.3f" cy="%.3f" r="%.2f" style="fill:%s"/>' % (cx, cy, radius, fill))

    def render(self) -> str:
        return PREAMBLE % {"size": self.size} + "".join(c + "\n" for c in self.commands) + POSTAMBLE


def parse_window(text: str) -> Window:
    """Parse ``"x0,y0,x1,y1"`` into an exact box."""
    parts = [to_rational(p) for p in text.split(",")]
    if len(parts) != 4:
        raise ValueError(f"window needs four numbers, got {len(parts)}")
    x0, y0, x1, y1 = parts
    if x0 >= x1 or y0 >= y1:
        raise ValueError(f"empty window {text!r}")
    return x0, y0, x1, y1


def clip(hyperplane: Hyperplane, window: Window) -> Optional[tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]]:
    """Endpoints of ``hyperplane`` inside ``window``, or ``None`` if it misses."""
    (p, q), a = hyperplane.normal, hyperplane.offset
    x0, y0, x1, y1 = window
    points = set()
    if q != 0:
        for x in (x0, x1):
            y = (a - p * x) / q
            if y0 <= y <= y1:
                points.add((Fraction(x), Fraction(y)))
    if p != 0:
        for y in (y0, y1):
            x = (a - q * y) / p
            if x0 <= x <= x1:
                points.add((Fraction(x), Fraction(y)))
    if len(points) < 2:
        return None
    ordered = sorted(points)
    return ordered[0], ordered[-1]


def default_window(arrangement: Arrangement) -> Window:
    """Bounding box of the vertices and one point per line, padded by one."""
    anchors = [f.point for f in build_semilattice(arrangement).flats if f.dim == 0]
    anchors += [Flat.from_hyperplane(h).point for h in arrangement.hyperplanes]
    if not anchors:
        return Fraction(-1), Fraction(-1), Fraction(1), Fraction(1)
    xs = [Fraction(pt[0]) for pt in anchors]
    ys = [Fraction(pt[1]) for pt in anchors]
    return min(xs) - 1, min(ys) - 1, max(xs) + 1, max(ys) + 1


def render_svg(arrangement: Arrangement, window: Optional[Window] = None, size: int = 400) -> str:
    """Draw a planar arrangement; the last hyperplane is highlighted.

    Raises:
        ValueError: If the arrangement is not in dimension 2 or not rational.
    """
    if arrangement.dim != 2:
        raise ValueError(f"only planar arrangements can be drawn, got dimension {arrangement.dim}")
    if arrangement.field.is_prime:
        raise ValueError(f"cannot draw an arrangement over {arrangement.field}")
    window = window or default_window(arrangement)
    svg = SVG(window, size)
    last = len(arrangement) - 1
    for k, h in enumerate(arrangement.hyperplanes):
        segment = clip(h, window)
        if segment is not None:
            svg.line(*segment, color=HIGHLIGHT if k == last else PLAIN, width=2.5 if k == last else 1.5)
    x0, y0, x1, y1 = window
    for flat in build_semilattice(arrangement).flats:
        if flat.dim == 0 and x0 <= flat.point[0] <= x1 and y0 <= flat.point[1] <= y1:
            svg.circle(flat.point)
    return svg.render()
