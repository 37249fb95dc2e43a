"""Seeded random flagged bodies.

Every generated body has recession cone empty or equal to the closed third
quadrant, and its random flags are repaired so that it is a legal convex set.
Equal seeds give identical sequences.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .analyzer import Decomposition, assemble, decide
from .body import (
    THETA0_DIRS, FlaggedBody2, canonicalize, collinear_chains, hull, insert_points, validate,
)
from .exact import NEG_INF, Point2

_DENOMS = (1, 1, 1, 2, 2, 3, 4)
_DENSITIES = (1.0, 0.9, 0.75, 0.5, 0.25)


def _coord(rng: random.Random, lo: int = -6, hi: int = 6) -> Fraction:
    den = rng.choice(_DENOMS)
    return Fraction(rng.randint(lo * den, hi * den), den)


def _point(rng: random.Random) -> Point2:
    return Point2(_coord(rng), _coord(rng))


def nearest_contiguous(flags: list) -> list:
    """Closest single-run pattern in Hamming distance; ties go to more inclusion, then leftmost."""
    n = len(flags)
    best, best_key = [False] * n, None
    for i in range(n + 1):
        for j in range(i, n + 1):
            cand = [i <= k < j for k in range(n)]
            dist = sum(a != b for a, b in zip(cand, flags))
            key = (dist, -(j - i), i)
            if best_key is None or key < best_key:
                best, best_key = cand, key
    return best


def repair(K: FlaggedBody2) -> FlaggedBody2:
    """Make the flags of ``K`` satisfy the chain rule, changing as few as possible."""
    for _ in range(4):
        faces = K.faces
        flags = {id(f): f.flag for f in faces}
        for chain in collinear_chains(K):
            current = [flags[id(f)] for f in chain]
            for f, new in zip(chain, nearest_contiguous(current)):
                flags[id(f)] = new
        vflags = tuple(flags[id(f)] for f in faces if f.kind == "v")
        eflags = tuple(flags[id(f)] for f in faces if f.kind != "v")
        K = _force_relint(FlaggedBody2(K.closure, vflags, eflags))
        if validate(K):
            return K
    return FlaggedBody2.closed(K.closure)


def _force_relint(K: FlaggedBody2) -> FlaggedBody2:
    # the relative interior of a point or segment is its only open face
    if K.dim == 0:
        return FlaggedBody2(K.closure, (True,), ())
    if K.dim == 1 and K.closure.ray_out is None:
        return FlaggedBody2(K.closure, K.vertex_flags, (True,) * len(K.edge_flags))
    return K


def _pseudo_vertices(rng: random.Random, poly) -> list:
    verts = list(poly.vertices)
    pts = []
    for a, b in zip(verts, verts[1:] + verts[:1] if poly.closed_chain else verts[1:]):
        if a != b and rng.random() < 0.4:
            t = rng.choice((Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)))
            pts.append(a + (b - a).scale(t))
    for end, d in ((poly.vertices[0], poly.ray_in), (poly.vertices[-1], poly.ray_out)):
        if d is not None and rng.random() < 0.3:
            pts.append(end + d.scale(rng.randint(1, 3)))
    return pts


def random_flags(rng: random.Random, poly, density: float) -> FlaggedBody2:
    vflags = tuple(rng.random() < density for _ in poly.vertices)
    eflags = tuple(rng.random() < density for _ in range(poly.n_edges()))
    return repair(FlaggedBody2(poly, vflags, eflags))


def random_polygon_body(rng: random.Random, unbounded: bool) -> FlaggedBody2:
    pts = [_point(rng) for _ in range(rng.randint(1, 6))]
    poly = hull(pts, THETA0_DIRS if unbounded else ())
    if poly.dim < 1:
        return random_flags(rng, poly, 1.0)
    poly = insert_points(poly, _pseudo_vertices(rng, poly))
    return random_flags(rng, poly, rng.choice(_DENSITIES))


def _random_end(rng: random.Random, at: Fraction):
    choice = rng.random()
    if choice < 0.25:
        return NEG_INF
    if choice < 0.4:
        return at
    return at - Fraction(rng.randint(1, 8), rng.choice((1, 2, 4)))


def random_apex_body(rng: random.Random) -> FlaggedBody2:
    """Assembled from a random apex decomposition."""
    u, v = _coord(rng), _coord(rng)
    d = Decomposition(1, u, v, _random_end(rng, u), _random_end(rng, v),
                      rng.random() < 0.5, rng.random() < 0.5)
    return assemble(d)


def random_center_body(rng: random.Random) -> FlaggedBody2:
    """A compact body with open or half-open arms, rebuilt from a closed one's center."""
    for _ in range(20):
        closed = FlaggedBody2.closed(hull([_point(rng) for _ in range(rng.randint(2, 6))], THETA0_DIRS))
        d = decide(closed).decomposition
        if d is None or d.case != 2:
            continue
        s0 = d.alpha if rng.random() < 0.3 else _random_end(rng, d.alpha)
        t0 = d.beta if rng.random() < 0.3 else _random_end(rng, d.beta)
        d2 = Decomposition(2, d.u, d.v, s0, t0, rng.random() < 0.5, rng.random() < 0.5,
                           d.alpha, d.beta, d.k0)
        return assemble(d2)
    return random_apex_body(rng)


def random_body(rng: random.Random) -> FlaggedBody2:
    roll = rng.random()
    if roll < 0.15:
        K = random_apex_body(rng)
    elif roll < 0.35:
        K = random_center_body(rng)
    else:
        K = random_polygon_body(rng, unbounded=roll < 0.8)
    return canonicalize(K)


def generate(seed: int, count: int) -> list:
    """``count`` valid flagged bodies from ``seed``."""
    rng = random.Random(seed)
    return [random_body(rng) for _ in range(count)]


def generate_bounded(seed: int, count: int) -> list:
    """Bounded convex sets cycling through points, segments and polygons."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        kind = i % 3
        if kind == 0:
            poly = hull([_point(rng)])
        elif kind == 1:
            a = _point(rng)
            b = a
            while b == a:
                b = _point(rng)
            poly = insert_points(hull([a, b]), [a + (b - a).scale(Fraction(1, 2))] if rng.random() < 0.3 else [])
        else:
            poly = hull([_point(rng) for _ in range(rng.randint(3, 6))])
            if poly.dim == 2:
                poly = insert_points(poly, _pseudo_vertices(rng, poly))
        out.append(canonicalize(random_flags(rng, poly, rng.choice(_DENSITIES))))
    return out
