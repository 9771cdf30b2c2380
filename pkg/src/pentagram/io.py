"""File formats: orbit and field CSVs, polygon JSON, static SVG figures.

Scalars are written losslessly: rationals as ``p/q``, floats at 17
significant digits.  SVG coordinates are rounded to 6 decimals.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from numbers import Rational
from xml.sax.saxutils import escape

import mpmath
import numpy as np

from .errors import DegenerateInput
from .projective import HomogeneousPoint, as_fraction

SVG_SIZE = 600


def fmt_scalar(v) -> str:
    if v is None:
        return "undefined"
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, Rational):
        v = Fraction(v)
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, mpmath.mpf):
        return mpmath.nstr(v, 17)
    return format(float(v), ".17g")


def parse_scalar(s: str, exact: bool):
    s = s.strip()
    if exact:
        return as_fraction(s)
    if "/" in s:
        return float(Fraction(s))
    return float(s)


def _csv(lines: list[str], command_line: str) -> str:
    return f"# {command_line}\n" + "\n".join(lines) + "\n"


def orbit_csv(record, command_line: str) -> str:
    rows = ["j,x,y,psi,convex,pole"]
    for s in record:
        rows.append(",".join([str(s.j), *(fmt_scalar(v) for v in (s.x, s.y, s.psi, s.convex, s.pole))]))
    return _csv(rows, command_line)


def levelset_csv(components, command_line: str) -> str:
    rows = ["component,bounded,x,y"]
    for i, c in enumerate(components):
        for x, y in c.polyline:
            rows.append(f"{i},{fmt_scalar(c.bounded)},{fmt_scalar(x)},{fmt_scalar(y)}")
    return _csv(rows, command_line)


def escape_csv(field, command_line: str) -> str:
    rows = ["x,y,fwd,bwd"]
    for i, y in enumerate(field.ys):
        for j, x in enumerate(field.xs):
            rows.append(f"{fmt_scalar(x)},{fmt_scalar(y)},{field.fwd[i, j]},{field.bwd[i, j]}")
    return _csv(rows, command_line)


# -- polygon JSON -----------------------------------------------------------


def polygon_to_json(p) -> str:
    verts = [[fmt_scalar(c) for c in v.coords] for v in p.vertices]
    return json.dumps({"n": len(verts), "vertices": verts})


def polygon_from_json(text: str, exact: bool | None = None):
    from .polygons import Polygon

    data = json.loads(text)
    verts = data["vertices"]
    if data.get("n") != len(verts):
        raise DegenerateInput(f"n = {data.get('n')} but {len(verts)} vertices given")
    if exact is None:
        # rational unless some scalar is written as a float
        exact = not any(any(ch in str(c) for ch in ".eEn") for v in verts for c in v)
    return Polygon(tuple(HomogeneousPoint(tuple(parse_scalar(str(c), exact) for c in v)) for v in verts))


# -- SVG --------------------------------------------------------------------


class _Canvas:
    """Affine map from the (x, y) window onto a fixed viewBox, y up."""

    def __init__(self, window, size: int = SVG_SIZE):
        self.xmin, self.xmax, self.ymin, self.ymax = (float(w) for w in window)
        self.size = size
        self.items: list[str] = []

    def xy(self, x, y) -> str:
        u = (x - self.xmin) / (self.xmax - self.xmin) * self.size
        v = (self.ymax - y) / (self.ymax - self.ymin) * self.size
        return f"{u:.6f},{v:.6f}"

    def polyline(self, pts, cls: str, closed: bool = False):
        tag = "polygon" if closed else "polyline"
        coords = " ".join(self.xy(x, y) for x, y in pts)
        self.items.append(f'<{tag} class="{cls}" points="{coords}"/>')

    def render(self, style: str, title: str, command_line: str = "") -> str:
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{self.size}" height="{self.size}" viewBox="0 0 {self.size} {self.size}">\n'
            f"<title>{escape(title)}</title>\n<desc>{escape(command_line)}</desc>\n<style>{style}</style>\n"
        )
        return head + "\n".join(self.items) + "\n</svg>\n"


def _line_across(window, direction):
    # the line through the origin with the given direction, long enough to cross the window
    xmin, xmax, ymin, ymax = window
    r = 2 * max(abs(xmin), abs(xmax), abs(ymin), abs(ymax))
    dx, dy = direction
    return [(-r * dx, -r * dy), (r * dx, r * dy)]


def _circle(cx, cy, r, t0=0.0, t1=2 * math.pi, n: int = 361):
    t = np.linspace(t0, t1, n)
    return list(zip(cx + r * np.cos(t), cy + r * np.sin(t)))


def convex_region_boundary(n: int = 181):
    """The chord from (1,0) to (0,1) closed by the arc of the circle
    through (0,0), (1,0), (0,1) on the far side of the chord."""
    return _circle(0.5, 0.5, math.sqrt(0.5), -math.pi / 4, 3 * math.pi / 4, n)


LEVELSET_STYLE = (
    "polyline,polygon{fill:none;stroke-width:1.5}"
    ".bounded{stroke:#1f4e99}.unbounded{stroke:#b03a2e}"
    ".antidiagonal{stroke:#555;stroke-dasharray:6 4}.diagonal{stroke:#999;stroke-dasharray:2 3}"
    ".unit-circle{stroke:#2e8b57}.convex-region{stroke:#e69f00;fill:#e69f00;fill-opacity:0.15}"
)


def levelset_svg(lam, components, window=(-3, 3, -3, 3), command_line: str = "") -> str:
    c = _Canvas(window)
    c.polyline(convex_region_boundary(), "convex-region", closed=True)
    c.polyline(_line_across(window, (1, -1)), "antidiagonal")
    c.polyline(_line_across(window, (1, 1)), "diagonal")
    c.polyline(_circle(0, 0, 1), "unit-circle", closed=True)
    for comp in components:
        c.polyline(comp.polyline, "bounded" if comp.bounded else "unbounded", closed=comp.bounded)
    return c.render(LEVELSET_STYLE, f"real level set psi = {fmt_scalar(lam)}", command_line)


def _heat_colour(t: int, cap: int) -> str:
    if t == 0:
        return "#dddddd"
    if t < 0:
        return "#000000"
    s = math.log1p(t) / math.log1p(cap)
    r, g, b = int(255 * (1 - s)), int(255 * (1 - 0.6 * s)), int(120 + 135 * s)
    return f"#{r:02x}{g:02x}{b:02x}"


def escape_svg(field, command_line: str = "") -> str:
    """Heatmap of min(fwd, bwd) escape time; black is censored, grey is
    outside the convex region."""
    xs, ys = field.xs, field.ys
    hx = (xs[1] - xs[0]) if len(xs) > 1 else 1.0
    hy = (ys[1] - ys[0]) if len(ys) > 1 else 1.0
    window = (xs[0] - hx / 2, xs[-1] + hx / 2, ys[0] - hy / 2, ys[-1] + hy / 2)
    c = _Canvas(window)
    w = hx / (window[1] - window[0]) * c.size
    h = hy / (window[3] - window[2]) * c.size
    for i, y in enumerate(ys):
        for j, x in enumerate(xs):
            f, b = int(field.fwd[i, j]), int(field.bwd[i, j])
            t = -1 if f < 0 or b < 0 else min(f, b)
            u, v = c.xy(x - hx / 2, y + hy / 2).split(",")
            c.items.append(
                f'<rect x="{u}" y="{v}" width="{w:.6f}" height="{h:.6f}" fill="{_heat_colour(t, field.cap)}"/>'
            )
    return c.render("rect{stroke:none}", f"escape times, cap {field.cap}", command_line)
