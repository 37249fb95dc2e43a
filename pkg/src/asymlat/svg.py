"""Deterministic SVG 1.1 pictures of flagged bodies.

Geometry is clipped to the viewport exactly; only the final pixel positions
are rounded.  Included faces are solid, excluded faces dashed; included
vertices are filled dots, excluded vertices hollow.
"""
from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Optional

from .analyzer import Extrema, Landmarks
from .body import THETA0_DIRS, ClosedPoly2, FlaggedBody2, clip, hull
from .exact import Point2

WIDTH = 480
RAY_LENGTH = Fraction(2)
MARGIN = Fraction(1, 4)

STYLE = """
.region { fill: #cfe2f3; stroke: none; }
.inc { stroke: #1c4587; stroke-width: 2; fill: none; }
.exc { stroke: #1c4587; stroke-width: 2; fill: none; stroke-dasharray: 6 4; }
.vin { fill: #1c4587; stroke: #1c4587; stroke-width: 1.5; }
.vex { fill: #ffffff; stroke: #1c4587; stroke-width: 1.5; }
.delta { fill: #f6b26b; fill-opacity: 0.5; stroke: none; }
.center { fill: none; stroke: #38761d; stroke-width: 1.5; stroke-dasharray: 2 2; }
.farc { stroke: #cc0000; stroke-width: 4; fill: none; stroke-opacity: 0.7; }
.chord { stroke: #674ea7; stroke-width: 1; stroke-dasharray: 8 3 2 3; fill: none; }
.cone { fill: #d9d2e9; fill-opacity: 0.6; stroke: #674ea7; stroke-width: 1; stroke-dasharray: 3 3; }
"""


class Viewport(NamedTuple):
    xmin: Fraction
    ymin: Fraction
    xmax: Fraction
    ymax: Fraction


def default_viewport(K: FlaggedBody2, extra_points=()) -> Viewport:
    """Bounding box of the vertices and ray stubs, grown by a quarter on each side."""
    c = K.closure
    pts = list(c.vertices) + list(extra_points)
    if c.ray_in is not None:
        pts.append(c.vertices[0] + c.ray_in.scale(RAY_LENGTH))
    if c.ray_out is not None:
        pts.append(c.vertices[-1] + c.ray_out.scale(RAY_LENGTH))
    xs, ys = [p.x for p in pts], [p.y for p in pts]
    w = max(max(xs) - min(xs), max(ys) - min(ys), Fraction(1))
    pad = w * MARGIN
    return Viewport(min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)


def _clip_to(poly: ClosedPoly2, vp: Viewport) -> ClosedPoly2:
    for a, b, c in ((1, 0, vp.xmin), (-1, 0, -vp.xmax), (0, 1, vp.ymin), (0, -1, -vp.ymax)):
        poly, _ = clip(poly, a, b, c)
        if not poly.vertices:
            break
    return poly


def _ray_exit(p: Point2, d: Point2, vp: Viewport) -> Point2:
    ts = []
    for comp, lo, hi in ((0, vp.xmin, vp.xmax), (1, vp.ymin, vp.ymax)):
        if d[comp] > 0:
            ts.append((hi - p[comp]) / d[comp])
        elif d[comp] < 0:
            ts.append((lo - p[comp]) / d[comp])
    t = max(min(ts), Fraction(0))
    return p + d.scale(t)


class _Canvas:
    def __init__(self, vp: Viewport):
        self.vp = vp
        span_x, span_y = vp.xmax - vp.xmin, vp.ymax - vp.ymin
        self.scale = Fraction(WIDTH) / span_x
        self.height = int(round(span_y * self.scale))
        self.lines = []

    def xy(self, p) -> str:
        x = (p[0] - self.vp.xmin) * self.scale
        y = (self.vp.ymax - p[1]) * self.scale
        return f"{float(x):.2f},{float(y):.2f}"

    def polygon(self, pts, cls: str) -> None:
        if len(pts) >= 3:
            self.lines.append(f'<polygon class="{cls}" points="{" ".join(self.xy(p) for p in pts)}"/>')

    def polyline(self, pts, cls: str, arrow: bool = False) -> None:
        marker = ' marker-end="url(#arrow)"' if arrow else ""
        self.lines.append(f'<polyline class="{cls}" points="{" ".join(self.xy(p) for p in pts)}"{marker}/>')

    def dot(self, p, cls: str, r: int = 4) -> None:
        x, y = self.xy(p).split(",")
        self.lines.append(f'<circle class="{cls}" cx="{x}" cy="{y}" r="{r}"/>')

    def path(self, pts, cls: str) -> None:
        # a one-point overlay is drawn as a ring around the point
        if len(pts) == 1:
            self.dot(pts[0], cls, r=8)
        else:
            self.polyline(pts, cls)


def _region_polygon(poly: ClosedPoly2, vp: Viewport) -> list:
    clipped = _clip_to(poly, vp)
    return list(clipped.vertices) if clipped.dim == 2 else []


def _draw_body(cv: _Canvas, K: FlaggedBody2) -> None:
    if K.dim == 2:
        cv.polygon(_region_polygon(K.closure, cv.vp), "region")
    dots = []
    for face in K.faces:
        cls = "inc" if face.flag else "exc"
        if face.kind == "e":
            cv.polyline([face.a, face.b], cls)
        elif face.kind == "r":
            cv.polyline([face.a, _ray_exit(face.a, face.b, cv.vp)], cls, arrow=True)
        else:
            dots.append(face)
    for face in dots:
        cv.dot(face.a, "vin" if face.flag else "vex")


def _draw_overlays(cv: _Canvas, lm: Optional[Landmarks], e: Optional[Extrema]) -> None:
    if e is not None:
        for corner in (e.corner_left, e.corner_right):
            cone = _region_polygon(hull([corner], THETA0_DIRS), cv.vp)
            cv.polygon(cone, "cone")
    if lm is None:
        return
    cv.polygon(list(lm.delta.closure.vertices), "delta")
    if lm.h_line is not None:
        a, b, c = lm.h_line
        strip = _clip_to(_line_poly(a, b, c, cv.vp), cv.vp)
        if strip.vertices:
            cv.path(list(strip.vertices), "chord")
    r = lm.r.closure
    if r.dim == 2:
        cv.polygon(_region_polygon(r, cv.vp), "center")
    elif r.vertices:
        cv.path(list(r.vertices), "center")
    cv.path(list(lm.f), "farc")


def _line_poly(a, b, c, vp: Viewport) -> ClosedPoly2:
    # two far points on a x + b y = c, far enough to cross the whole viewport
    far = (vp.xmax - vp.xmin) + (vp.ymax - vp.ymin)
    if b != 0:
        base = Point2(vp.xmin, (c - a * vp.xmin) / b)
    else:
        base = Point2(c / a, vp.ymin)
    d = Point2(b, -a)
    n = max(abs(d.x), abs(d.y))
    d = Point2(d.x / n, d.y / n)
    return hull([base - d.scale(far * 2), base + d.scale(far * 2)])


def render_svg(K: FlaggedBody2, landmarks: Optional[Landmarks] = None,
               extrema: Optional[Extrema] = None, viewport: Optional[Viewport] = None) -> str:
    """SVG document for ``K`` with optional landmark and corner-cone overlays."""
    extra = []
    if extrema is not None:
        extra = [extrema.corner_left, extrema.corner_right]
    vp = viewport or default_viewport(K, extra)
    if not (vp.xmax > vp.xmin and vp.ymax > vp.ymin):
        raise ValueError("viewport must have positive width and height")
    cv = _Canvas(vp)
    _draw_overlays(cv, None, extrema)
    _draw_body(cv, K)
    if landmarks is not None:
        _draw_overlays(cv, landmarks, None)
    head = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{cv.height}" '
        f'viewBox="0 0 {WIDTH} {cv.height}">',
        "<defs>",
        '<marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="8" markerHeight="8" '
        'orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="#1c4587"/></marker>',
        "</defs>",
        f"<style type=\"text/css\"><![CDATA[{STYLE}]]></style>",
        f'<rect x="0" y="0" width="{WIDTH}" height="{cv.height}" fill="#ffffff"/>',
    ]
    return "\n".join(head + cv.lines + ["</svg>"]) + "\n"
