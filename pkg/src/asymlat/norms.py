"""Polyhedral lattice norms on the plane and the asymmetric norms they induce.

``q(v) = ||v v 0||`` for a lattice norm ``||.||``; ``q^s(v) = max(q(v), q(-v))``.
Only polyhedral norms are supported so that every evaluation is exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import Point2, cross, dot, fmt, frac, orient, pos_part, pt

WEIGHTED_L1 = "weighted_l1"
WEIGHTED_LINF = "weighted_linf"
POLYGONAL = "polygonal"

Q = "Q"
QS = "QS"


@dataclass(frozen=True)
class LatticeNorm2:
    """A solid norm on R^2.

    ``kind`` is one of ``weighted_l1``, ``weighted_linf`` or ``polygonal``.
    Weighted variants use ``weights``; the polygonal variant uses the unit ball
    ``vertices`` in counter-clockwise order.
    """

    kind: str
    weights: tuple = ()
    vertices: tuple = ()
    _normals: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if self.kind in (WEIGHTED_L1, WEIGHTED_LINF):
            if len(self.weights) != 2:
                raise ValueError("weighted norms need exactly two weights")
            w = tuple(frac(x) for x in self.weights)
            if any(x <= 0 for x in w):
                raise ValueError("norm weights must be strictly positive")
            object.__setattr__(self, "weights", w)
        elif self.kind == POLYGONAL:
            verts = tuple(pt(*v) for v in self.vertices)
            object.__setattr__(self, "vertices", verts)
            object.__setattr__(self, "_normals", _gauge_normals(verts))
            if not solidity_check(verts):
                raise ValueError("polygonal unit ball is not solid (not a lattice norm)")
        else:
            raise ValueError(f"unknown norm type {self.kind!r}")

    @classmethod
    def weighted_l1(cls, w1=1, w2=1):
        return cls(WEIGHTED_L1, weights=(w1, w2))

    @classmethod
    def weighted_linf(cls, w1=1, w2=1):
        return cls(WEIGHTED_LINF, weights=(w1, w2))

    @classmethod
    def polygonal(cls, vertices: Sequence):
        return cls(POLYGONAL, vertices=tuple(vertices))

    def __call__(self, v) -> Fraction:
        x, y = frac(v[0]), frac(v[1])
        if self.kind == WEIGHTED_L1:
            return self.weights[0] * abs(x) + self.weights[1] * abs(y)
        if self.kind == WEIGHTED_LINF:
            return max(self.weights[0] * abs(x), self.weights[1] * abs(y))
        return _gauge(self._normals, (x, y))

    def to_json(self) -> dict:
        if self.kind == POLYGONAL:
            return {"type": POLYGONAL, "vertices": [[fmt(v.x), fmt(v.y)] for v in self.vertices]}
        return {"type": self.kind, "w": [fmt(w) for w in self.weights]}

    @classmethod
    def from_json(cls, doc: dict) -> "LatticeNorm2":
        kind = doc.get("type")
        if kind in (WEIGHTED_L1, WEIGHTED_LINF):
            return cls(kind, weights=tuple(frac(w) for w in doc["w"]))
        if kind == POLYGONAL:
            return cls(POLYGONAL, vertices=tuple(tuple(frac(c) for c in v) for v in doc["vertices"]))
        raise ValueError(f"unknown norm type {kind!r}")


def _gauge_normals(verts: tuple) -> tuple:
    """Edge functionals ``n`` with ``n . z = 1`` on each edge of the unit ball."""
    n = len(verts)
    if n < 4 or n % 2:
        raise ValueError("a symmetric polygon needs an even number (>= 4) of vertices")
    for i in range(n):
        a, b, c = verts[i], verts[(i + 1) % n], verts[(i + 2) % n]
        if orient(a, b, c) <= 0:
            raise ValueError("unit ball vertices must be strictly convex and counter-clockwise")
    half = n // 2
    for i in range(n):
        if verts[i + half if i < half else i - half] != Point2(-verts[i].x, -verts[i].y):
            raise ValueError("unit ball must be symmetric under negation")
    normals = []
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        c = cross(a, b)
        if c <= 0:
            raise ValueError("origin must lie strictly inside the unit ball")
        # line through a, b:  (b.y - a.y) x - (b.x - a.x) y = cross(a, b)
        normals.append(((b.y - a.y) / c, (a.x - b.x) / c))
    return tuple(normals)


def _gauge(normals, v) -> Fraction:
    return max(dot(n, v) for n in normals)


def solidity_check(norm) -> bool:
    """Finite solidity test: every ``(+-|a|, +-|b|)`` of a unit ball vertex is in the ball.

    Accepts a :class:`LatticeNorm2` or a bare list of unit ball vertices, so a
    well-formed but non-solid polygon can be tested without constructing a norm.
    """
    if isinstance(norm, LatticeNorm2):
        if norm.kind != POLYGONAL:
            return True
        verts, normals = norm.vertices, norm._normals
    else:
        verts = tuple(pt(*v) for v in norm)
        normals = _gauge_normals(verts)
    for v in verts:
        for sx in (1, -1):
            for sy in (1, -1):
                if _gauge(normals, (sx * abs(v.x), sy * abs(v.y))) > 1:
                    return False
    return True


@dataclass(frozen=True)
class AsymNorm2:
    base: LatticeNorm2

    def q(self, v) -> Fraction:
        return self.base(pos_part(pt(v[0], v[1])))

    def qs(self, v) -> Fraction:
        v = pt(v[0], v[1])
        return max(self.q(v), self.q(Point2(-v.x, -v.y)))


def q_of(n: AsymNorm2, v) -> Fraction:
    return n.q(v)


def qs_of(n: AsymNorm2, v) -> Fraction:
    return n.qs(v)


def ball_contains(n: AsymNorm2, kind: str, center, radius, z) -> bool:
    """Open ball membership: ``q(z - center) < radius`` (or ``q^s``)."""
    radius = frac(radius)
    if radius <= 0:
        raise ValueError("ball radius must be positive")
    diff = (frac(z[0]) - frac(center[0]), frac(z[1]) - frac(center[1]))
    if kind == Q:
        return n.q(diff) < radius
    if kind == QS:
        return n.qs(diff) < radius
    raise ValueError(f"unknown ball kind {kind!r}")
