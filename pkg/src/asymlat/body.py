"""Convex subsets of the plane with a mixed open/closed boundary.

A set is stored as its closure (a rational polyhedron: a convex vertex chain,
possibly with a ray attached at each end) plus one inclusion flag per boundary
face.  The relative interior of the closure always belongs to the set, so the
flags carry all the information.  Collinear "pseudo-vertices" are allowed and
mark the points where inclusion changes inside one geometric edge.

Face layout of ``edge_flags``:

* bounded 2-D polygon: ``edge_flags[i]`` is the edge from vertex ``i`` to
  vertex ``i + 1`` (cyclically);
* unbounded 2-D region: ``[ray_in, e_0, ..., e_{n-2}, ray_out]`` where the
  incoming ray ends at ``vertices[0]`` and the outgoing ray starts at
  ``vertices[-1]``;
* segment: ``n - 1`` edges; ray (1-D, unbounded): ``n - 1`` edges then the ray.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, NamedTuple, Optional, Sequence

from .exact import Point2, cross, dot, frac, orient, pt

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)
LEFT = Point2(Fraction(-1), ZERO)
DOWN = Point2(ZERO, Fraction(-1))
THETA0_DIRS = (DOWN, LEFT)


class Face(NamedTuple):
    """One boundary cell: a vertex, an open segment or an open ray.

    ``kind`` is ``"v"``, ``"e"`` or ``"r"``; ``a`` is the base point; ``b`` is
    the segment end (``"e"``) or the ray direction (``"r"``).
    """

    kind: str
    a: Point2
    b: Optional[Point2]
    flag: bool

    def contains(self, z) -> bool:
        if self.kind == "v":
            return z[0] == self.a.x and z[1] == self.a.y
        d = self.b - self.a if self.kind == "e" else self.b
        w = (z[0] - self.a.x, z[1] - self.a.y)
        if cross(d, w) != 0:
            return False
        s = dot(d, w)
        if s <= 0:
            return False
        return self.kind == "r" or s < dot(d, d)

    def rep(self) -> Point2:
        if self.kind == "v":
            return self.a
        if self.kind == "e":
            return Point2((self.a.x + self.b.x) * HALF, (self.a.y + self.b.y) * HALF)
        return self.a + self.b

    def direction(self) -> Optional[Point2]:
        if self.kind == "e":
            return self.b - self.a
        if self.kind == "r":
            return self.b
        return None

    def point_at(self, t) -> Point2:
        d = self.direction()
        return Point2(self.a.x + t * d.x, self.a.y + t * d.y)


def normalize_dir(d) -> Point2:
    d = pt(d[0], d[1])
    m = max(abs(d.x), abs(d.y))
    if m == 0:
        raise ValueError("zero ray direction")
    return Point2(d.x / m, d.y / m)


@dataclass(frozen=True)
class ClosedPoly2:
    """Closed convex polyhedron given by a vertex chain and end rays.

    ``ray_in`` is attached at ``vertices[0]`` (the set contains
    ``vertices[0] + t * ray_in``), ``ray_out`` at ``vertices[-1]``.  A 1-D ray
    only carries ``ray_out``.  No vertices means the empty set.
    """

    vertices: tuple = ()
    ray_in: Optional[Point2] = None
    ray_out: Optional[Point2] = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(pt(*v) for v in self.vertices))
        if self.ray_in is not None:
            object.__setattr__(self, "ray_in", normalize_dir(self.ray_in))
        if self.ray_out is not None:
            object.__setattr__(self, "ray_out", normalize_dir(self.ray_out))
        _check_structure(self)

    @property
    def bounded(self) -> bool:
        return self.ray_in is None and self.ray_out is None

    @cached_property
    def dim(self) -> int:
        vs = self.vertices
        if not vs:
            return -1
        if self.ray_in is not None:
            return 2
        if self.ray_out is not None:
            return 1
        if len(vs) == 1:
            return 0
        if all(orient(vs[0], vs[1], w) == 0 for w in vs[2:]):
            return 1
        return 2

    @property
    def closed_chain(self) -> bool:
        """True when the boundary is a cycle (bounded 2-D polygon)."""
        return self.dim == 2 and self.bounded

    def directions(self) -> tuple:
        return tuple(d for d in (self.ray_in, self.ray_out) if d is not None)

    def n_edges(self) -> int:
        n = len(self.vertices)
        if self.dim == 2:
            return n if self.bounded else n + 1
        if self.dim == 1:
            return n if self.ray_out is not None else n - 1
        return 0

    def faces(self, vflags: Sequence[bool], eflags: Sequence[bool]) -> list:
        """Boundary faces in boundary order (see module docstring for layout)."""
        vs = self.vertices
        n = len(vs)
        out = []
        if self.dim == 2 and not self.bounded:
            out.append(Face("r", vs[0], self.ray_in, eflags[0]))
            for i in range(n):
                out.append(Face("v", vs[i], None, vflags[i]))
                if i < n - 1:
                    out.append(Face("e", vs[i], vs[i + 1], eflags[i + 1]))
            out.append(Face("r", vs[-1], self.ray_out, eflags[-1]))
            return out
        for i in range(n):
            out.append(Face("v", vs[i], None, vflags[i]))
            if self.closed_chain:
                out.append(Face("e", vs[i], vs[(i + 1) % n], eflags[i]))
            elif i < n - 1:
                out.append(Face("e", vs[i], vs[i + 1], eflags[i]))
        if self.dim == 1 and self.ray_out is not None:
            out.append(Face("r", vs[-1], self.ray_out, eflags[-1]))
        return out

    def constraints(self) -> list:
        """Pairs ``(p, d)`` with the closure equal to ``{z : cross(d, z - p) >= 0}`` (2-D only)."""
        vs = self.vertices
        n = len(vs)
        cons = []
        if self.bounded:
            for i in range(n):
                cons.append((vs[i], vs[(i + 1) % n] - vs[i]))
        else:
            cons.append((vs[0], -self.ray_in))
            for i in range(n - 1):
                cons.append((vs[i], vs[i + 1] - vs[i]))
            cons.append((vs[-1], self.ray_out))
        return cons

    def locate(self, z) -> int:
        """2-D closures only: 1 strictly inside, 0 on the boundary, -1 outside."""
        status = 1
        for p, d in self.constraints():
            s = cross(d, (z[0] - p.x, z[1] - p.y))
            if s < 0:
                return -1
            if s == 0:
                status = 0
        return status

    def contains(self, z) -> bool:
        if self.dim == 2:
            return self.locate(z) >= 0
        flags_v = [True] * len(self.vertices)
        flags_e = [True] * self.n_edges()
        return any(f.contains(z) for f in self.faces(flags_v, flags_e))

    def generators(self) -> list:
        """Finite points spanning the closure together with its rays."""
        return list(self.vertices)


def _check_structure(poly: ClosedPoly2) -> None:
    vs = poly.vertices
    n = len(vs)
    if n == 0:
        if poly.ray_in is not None or poly.ray_out is not None:
            raise ValueError("rays without vertices")
        return
    for i in range(n - 1):
        if vs[i] == vs[i + 1]:
            raise ValueError("repeated consecutive vertex")
    if poly.ray_in is not None and poly.ray_out is None:
        raise ValueError("an incoming ray requires an outgoing ray")
    dim = poly.dim
    if dim == 1:
        d = poly.ray_out if poly.ray_out is not None else vs[1] - vs[0]
        for i in range(n - 1):
            step = vs[i + 1] - vs[i]
            if cross(d, step) != 0 or dot(d, step) <= 0:
                raise ValueError("1-D chain must be collinear and monotone")
        return
    if dim < 2:
        return
    if poly.bounded:
        if vs[0] == vs[-1]:
            raise ValueError("repeated closing vertex")
        edges = [vs[(i + 1) % n] - vs[i] for i in range(n)]
    else:
        a, b = poly.ray_in, poly.ray_out
        if cross(b, a) < 0 or (cross(b, a) == 0 and dot(a, b) < 0):
            raise ValueError("closure would contain a line")
        edges = [-a] + [vs[i + 1] - vs[i] for i in range(n - 1)] + [b]
        if n == 1 and a == b:
            raise ValueError("two equal rays at a single vertex describe a ray, not a region")
    m = len(edges)
    turns = range(m) if poly.bounded else range(m - 1)
    for i in turns:
        e1, e2 = edges[i], edges[(i + 1) % m]
        c = cross(e1, e2)
        if c < 0 or (c == 0 and dot(e1, e2) <= 0):
            raise ValueError("vertices are not in convex counter-clockwise position")
    for p, d in poly.constraints():
        for w in vs:
            if cross(d, w - p) < 0:
                raise ValueError("vertex chain is not convex")


EMPTY_POLY = ClosedPoly2(())


# ---------------------------------------------------------------- hull / clip


def convex_hull(points: Iterable[Point2]) -> list:
    """Strict counter-clockwise hull (Andrew's monotone chain), exact.

    Collinear input gives its two extreme points; a single point gives itself.
    """
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and orient(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        return hull[:1]
    return hull


def _cone_extremes(dirs: Sequence[Point2]):
    """Extreme rays ``(ray_in, ray_out)`` of a pointed cone; raises if it has a line."""

    def same(e, d):
        return cross(e, d) == 0 and dot(e, d) > 0

    ray_in = ray_out = None
    for d in dirs:
        if all(cross(e, d) > 0 or same(e, d) for e in dirs):
            ray_in = d
        if all(cross(d, e) > 0 or same(e, d) for e in dirs):
            ray_out = d
    if ray_in is None or ray_out is None:
        raise ValueError("recession cone contains a line")
    if cross(ray_out, ray_in) == 0 and dot(ray_in, ray_out) < 0:
        raise ValueError("recession cone contains a line")
    return ray_in, ray_out


def hull(points: Iterable, dirs: Iterable = ()) -> ClosedPoly2:
    """Closure of ``conv(points) + cone(dirs)`` as a :class:`ClosedPoly2`."""
    pts = [pt(*p) for p in points]
    if not pts:
        return EMPTY_POLY
    ds = []
    for d in dirs:
        d = normalize_dir(d)
        if d not in ds:
            ds.append(d)
    if not ds:
        return ClosedPoly2(tuple(convex_hull(pts)))
    a, b = _cone_extremes(ds)
    if len(ds) == 1 and all(cross(a, p - pts[0]) == 0 for p in pts):
        start = min(pts, key=lambda p: dot(a, p))
        return ClosedPoly2((start,), None, a)
    hp = convex_hull(pts)
    n_in = Point2(-a.y, a.x)
    n_out = Point2(b.y, -b.x)
    i0 = max(range(len(hp)), key=lambda i: (dot(n_in, hp[i]), -dot(a, hp[i])))
    i1 = max(range(len(hp)), key=lambda i: (dot(n_out, hp[i]), -dot(b, hp[i])))
    chain = [hp[i0]]
    i = i0
    while i != i1:
        i = (i + 1) % len(hp)
        chain.append(hp[i])
    return ClosedPoly2(tuple(chain), a, b)


def _edges_and_rays(poly: ClosedPoly2):
    vs = poly.vertices
    n = len(vs)
    if poly.closed_chain:
        edges = [(vs[i], vs[(i + 1) % n]) for i in range(n)]
    else:
        edges = [(vs[i], vs[i + 1]) for i in range(n - 1)]
    rays = []
    if poly.ray_in is not None:
        rays.append((vs[0], poly.ray_in))
    if poly.ray_out is not None:
        rays.append((vs[-1], poly.ray_out))
    return edges, rays


def clip(poly: ClosedPoly2, a, b, c):
    """Intersect a closure with ``{a x + b y >= c}``.

    Returns ``(result, points)`` where ``points`` are the kept vertices plus the
    crossings of the boundary with the cutting line.
    """
    a, b, c = frac(a), frac(b), frac(c)
    if not poly.vertices:
        return EMPTY_POLY, []

    def f(p):
        return a * p.x + b * p.y - c

    def g(d):
        return a * d.x + b * d.y

    pts = [v for v in poly.vertices if f(v) >= 0]
    edges, rays = _edges_and_rays(poly)
    for p, q in edges:
        fp, fq = f(p), f(q)
        if fp * fq < 0:
            t = fp / (fp - fq)
            pts.append(Point2(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)))
    for p, d in rays:
        gd = g(d)
        if gd != 0:
            t = -f(p) / gd
            if t > 0:
                pts.append(Point2(p.x + t * d.x, p.y + t * d.y))
    dirs = [d for _, d in rays if g(d) >= 0]
    if poly.ray_in is not None and poly.ray_out is not None:
        ga, gb = g(poly.ray_in), g(poly.ray_out)
        if ga * gb < 0:
            dirs.append(poly.ray_in.scale(abs(gb)) + poly.ray_out.scale(abs(ga)))
    if not pts:
        return EMPTY_POLY, []
    pts = list(dict.fromkeys(pts))
    return hull(pts, dirs), pts


def insert_points(poly: ClosedPoly2, points: Iterable[Point2]) -> ClosedPoly2:
    """Subdivide boundary faces at the given points (points off the boundary are ignored)."""
    vs = list(poly.vertices)
    for p in points:
        p = pt(*p)
        if p in vs:
            continue
        cur = ClosedPoly2(tuple(vs), poly.ray_in, poly.ray_out)
        for face in cur.faces([True] * len(vs), [True] * cur.n_edges()):
            if face.kind == "v" or not face.contains(p):
                continue
            if face.kind == "r":
                if face.a == vs[0] and face.b == poly.ray_in:
                    vs.insert(0, p)
                else:
                    vs.append(p)
            else:
                j = vs.index(face.a)
                vs.insert(j + 1, p)
            break
    return ClosedPoly2(tuple(vs), poly.ray_in, poly.ray_out)


def interior_point(poly: ClosedPoly2) -> Point2:
    """A rational point of the relative interior of a closure."""
    vs = poly.vertices
    if poly.dim == 0:
        return vs[0]
    if poly.dim == 1:
        if len(vs) > 1:
            return Point2((vs[0].x + vs[1].x) * HALF, (vs[0].y + vs[1].y) * HALF)
        return vs[0] + poly.ray_out
    cands = list(vs)
    if poly.ray_in is not None:
        cands.append(vs[0] + poly.ray_in)
        cands.append(vs[-1] + poly.ray_out)
    p = cands[0]
    for i in range(1, len(cands)):
        for j in range(i + 1, len(cands)):
            if orient(p, cands[i], cands[j]) != 0:
                q, r = cands[i], cands[j]
                third = Fraction(1, 3)
                return Point2((p.x + q.x + r.x) * third, (p.y + q.y + r.y) * third)
    raise ValueError("degenerate 2-D closure")


# ------------------------------------------------------------- flagged bodies


@dataclass(frozen=True)
class FlaggedBody2:
    """A convex set: its closure plus inclusion flags on every boundary face."""

    closure: ClosedPoly2
    vertex_flags: tuple = ()
    edge_flags: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "vertex_flags", tuple(bool(f) for f in self.vertex_flags))
        object.__setattr__(self, "edge_flags", tuple(bool(f) for f in self.edge_flags))
        if len(self.vertex_flags) != len(self.closure.vertices):
            raise ValueError("one flag per vertex required")
        if len(self.edge_flags) != self.closure.n_edges():
            raise ValueError(f"expected {self.closure.n_edges()} edge flags, got {len(self.edge_flags)}")

    @classmethod
    def closed(cls, poly: ClosedPoly2) -> "FlaggedBody2":
        return cls(poly, (True,) * len(poly.vertices), (True,) * poly.n_edges())

    @property
    def dim(self) -> int:
        return self.closure.dim

    @property
    def is_empty(self) -> bool:
        return not self.closure.vertices

    @cached_property
    def faces(self) -> list:
        return self.closure.faces(self.vertex_flags, self.edge_flags)

    @cached_property
    def _saturated_closure(self) -> ClosedPoly2:
        return hull(self.closure.vertices, self.closure.directions() + THETA0_DIRS)

    def contains(self, z) -> bool:
        return membership(self, z)

    def is_fully_closed(self) -> bool:
        return all(self.vertex_flags) and all(self.edge_flags)

    def __repr__(self):
        c = self.closure
        return (f"FlaggedBody2(vertices={list(c.vertices)}, ray_in={c.ray_in}, ray_out={c.ray_out}, "
                f"vflags={list(map(int, self.vertex_flags))}, eflags={list(map(int, self.edge_flags))})")


EMPTY_BODY = FlaggedBody2(EMPTY_POLY)


def closed_body(points: Iterable, dirs: Iterable = ()) -> FlaggedBody2:
    """Fully closed body ``conv(points) + cone(dirs)``."""
    return FlaggedBody2.closed(hull(points, dirs))


def _contiguous(flags: Sequence[bool]) -> bool:
    idx = [i for i, f in enumerate(flags) if f]
    return not idx or idx[-1] - idx[0] + 1 == len(idx)


def collinear_chains(K: FlaggedBody2) -> list:
    """Maximal collinear boundary chains as lists of faces (vertex/edge/... order)."""
    faces = K.faces
    if K.dim <= 0:
        return [faces] if faces else []
    if K.dim == 1:
        return [faces]
    if K.closure.closed_chain:
        # rotate so the sequence starts at a genuine corner vertex
        m = len(faces)
        start = 0
        for i in range(0, m, 2):
            before, after = faces[i - 1], faces[i + 1]
            if cross(before.direction(), after.direction()) != 0:
                start = i
                break
        faces = faces[start:] + faces[:start] + [faces[start]]
    chains = []
    cur = None
    for f in faces:
        if f.kind == "v":
            if cur is None:
                cur = [f]
            else:
                cur.append(f)
            continue
        if cur is not None and len(cur) >= 2 and cross(cur[-2].direction(), f.direction()) != 0:
            chains.append(cur)
            cur = [cur[-1]]
        if cur is None:
            cur = []
        cur.append(f)
    if cur:
        chains.append(cur)
    return [ch for ch in chains if any(f.kind != "v" for f in ch)]


def validate(K: FlaggedBody2) -> bool:
    """True iff the flagged union is a nonempty convex set.

    Along every maximal collinear boundary chain the included faces must form
    one gap-free run; lower-dimensional sets must include something.
    """
    if K.is_empty:
        return False
    if K.dim < 2 and not any(f.flag for f in K.faces):
        return False
    return all(_contiguous([f.flag for f in ch]) for ch in collinear_chains(K))


def membership(K: FlaggedBody2, z) -> bool:
    """Exact point location."""
    if K.is_empty:
        return False
    z = (frac(z[0]), frac(z[1]))
    if K.dim == 2:
        where = K.closure.locate(z)
        if where < 0:
            return False
        if where > 0:
            return True
    for face in K.faces:
        if face.contains(z):
            return face.flag
    return False


def _face_dominating_point(face: Face, z) -> Optional[Point2]:
    """A point of the (relatively open) face that is ``>= z``, or None."""
    if face.kind == "v":
        return face.a if face.a.x >= z[0] and face.a.y >= z[1] else None
    d = face.direction()
    lower, upper = None, None
    for pc, dc, zc in ((face.a.x, d.x, z[0]), (face.a.y, d.y, z[1])):
        if dc == 0:
            if pc < zc:
                return None
            continue
        t = (zc - pc) / dc
        if dc > 0:
            lower = t if lower is None else max(lower, t)
        else:
            upper = t if upper is None else min(upper, t)
    lo = ZERO if lower is None else max(lower, ZERO)
    hi = upper
    if face.kind == "e":
        hi = ONE if hi is None else min(hi, ONE)
    if hi is None:
        t = lo + 1
    elif lo < hi:
        t = (lo + hi) * HALF
    elif lo == hi and 0 < lo and (face.kind == "r" or lo < 1):
        t = lo
    else:
        return None
    return face.point_at(t)


def dominating_point(K: FlaggedBody2, z) -> Optional[Point2]:
    """A point ``w`` of ``K`` with ``w >= z`` coordinatewise, or None if none exists.

    ``z`` lies in ``K + theta_0`` exactly when such a point exists.
    """
    if K.is_empty:
        return None
    z = (frac(z[0]), frac(z[1]))
    for face in K.faces:
        if face.flag:
            w = _face_dominating_point(face, z)
            if w is not None:
                return w
    if K.dim == 2 and K._saturated_closure.locate(z) > 0:
        box, _ = clip(K.closure, 1, 0, z[0])
        box, _ = clip(box, 0, 1, z[1])
        return interior_point(box)
    return None


def in_saturation(K: FlaggedBody2, z) -> bool:
    if K.is_empty:
        return False
    z = (frac(z[0]), frac(z[1]))
    if K.dim == 2 and K._saturated_closure.locate(z) > 0:
        return True
    return any(f.flag and _face_dominating_point(f, z) is not None for f in K.faces)


def from_predicate(poly: ClosedPoly2, pred: Callable, breakpoints: Iterable = ()) -> FlaggedBody2:
    """Flag every face of ``poly`` by evaluating ``pred`` at one representative point.

    Correct whenever the target set's inclusion is constant on each face after
    subdividing at ``breakpoints``.
    """
    if not poly.vertices:
        return EMPTY_BODY
    poly = insert_points(poly, breakpoints)
    probe = FlaggedBody2(poly, (False,) * len(poly.vertices), (False,) * poly.n_edges())
    vflags = []
    eflags = []
    for face in probe.faces:
        flag = bool(pred(face.rep()))
        if face.kind == "v":
            vflags.append(flag)
        else:
            eflags.append(flag)
    return canonicalize(FlaggedBody2(poly, tuple(vflags), tuple(eflags)))


def saturate(K: FlaggedBody2) -> FlaggedBody2:
    """``K + theta_0`` with ``theta_0`` the closed third quadrant."""
    if K.is_empty:
        return EMPTY_BODY
    return from_predicate(K._saturated_closure, lambda z: in_saturation(K, z), K.closure.vertices)


def intersect_halfplane(K: FlaggedBody2, a, b, c) -> FlaggedBody2:
    """``K`` intersected with the closed half-plane ``a x + b y >= c``."""
    a, b, c = frac(a), frac(b), frac(c)
    poly, pts = clip(K.closure, a, b, c)
    if not poly.vertices:
        return EMPTY_BODY

    def pred(z):
        return a * z.x + b * z.y >= c and membership(K, z)

    return from_predicate(poly, pred, pts)


# ------------------------------------------------------------ canonical form


def _shrink_low_dim(K: FlaggedBody2) -> FlaggedBody2:
    """Trim a segment/ray/point down to the closure of its included faces."""
    faces = K.faces
    inc = [i for i, f in enumerate(faces) if f.flag]
    if not inc:
        return EMPTY_BODY
    i0, i1 = inc[0], inc[-1]
    # face index 2k is vertex k, 2k+1 is the edge (or ray) after it
    k0, k1 = i0 // 2, (i1 + 1) // 2
    vs = K.closure.vertices
    keep_ray = K.closure.ray_out is not None and i1 == len(faces) - 1
    if keep_ray:
        k1 = len(vs) - 1
    verts = vs[k0:k1 + 1]
    vflags = K.vertex_flags[k0:k1 + 1]
    eflags = K.edge_flags[k0:k1 + (1 if keep_ray else 0)]
    poly = ClosedPoly2(verts, None, K.closure.ray_out if keep_ray else None)
    return FlaggedBody2(poly, vflags, eflags)


def _merge_pseudo_vertices(K: FlaggedBody2) -> FlaggedBody2:
    c = K.closure
    vs = list(c.vertices)
    vflags = list(K.vertex_flags)
    if c.dim == 2 and not c.bounded:
        rin, rout = K.edge_flags[0], K.edge_flags[-1]
        chain = list(K.edge_flags[1:-1])
    elif c.dim == 1 and c.ray_out is not None:
        rin, rout = None, K.edge_flags[-1]
        chain = list(K.edge_flags[:-1])
    else:
        rin, rout = None, None
        chain = list(K.edge_flags)
    cyclic = c.closed_chain
    changed = True
    while changed and len(vs) > 1:
        changed = False
        n = len(vs)
        for i in range(n):
            # directions and flags of the faces before/after vertex i
            if cyclic:
                if n <= 3:
                    break
                d1, f1 = vs[i] - vs[i - 1], chain[i - 1]
                d2, f2 = vs[(i + 1) % n] - vs[i], chain[i]
            else:
                if i == 0:
                    if rin is None:
                        continue
                    d1, f1 = -c.ray_in, rin
                else:
                    d1, f1 = vs[i] - vs[i - 1], chain[i - 1]
                if i == n - 1:
                    if rout is None:
                        continue
                    d2, f2 = c.ray_out, rout
                else:
                    d2, f2 = vs[i + 1] - vs[i], chain[i]
            if cross(d1, d2) != 0 or not (f1 == f2 == vflags[i]):
                continue
            if cyclic:
                del vs[i], vflags[i], chain[i]
            elif i == 0:
                del vs[0], vflags[0], chain[0]
            elif i == n - 1:
                del vs[-1], vflags[-1], chain[-1]
            else:
                del vs[i], vflags[i], chain[i]
            changed = True
            break
    eflags = chain
    if rin is not None:
        eflags = [rin] + eflags
    if rout is not None:
        eflags = eflags + [rout]
    poly = ClosedPoly2(tuple(vs), c.ray_in, c.ray_out)
    return FlaggedBody2(poly, tuple(vflags), tuple(eflags))


def canonicalize(K: FlaggedBody2) -> FlaggedBody2:
    """Canonical representative of the point set ``K``.

    Lower-dimensional sets are trimmed to the closure of what they include,
    inert pseudo-vertices are removed, bounded polygons start at their
    lexicographically smallest vertex and segments run in lexicographic order.
    """
    if K.is_empty:
        return EMPTY_BODY
    if K.dim < 2:
        K = _shrink_low_dim(K)
        if K.is_empty:
            return EMPTY_BODY
    K = _merge_pseudo_vertices(K)
    c = K.closure
    if c.closed_chain:
        k = min(range(len(c.vertices)), key=lambda i: c.vertices[i])
        vs = c.vertices[k:] + c.vertices[:k]
        return FlaggedBody2(ClosedPoly2(vs), K.vertex_flags[k:] + K.vertex_flags[:k],
                            K.edge_flags[k:] + K.edge_flags[:k])
    if c.dim == 1 and c.bounded and c.vertices[-1] < c.vertices[0]:
        return FlaggedBody2(ClosedPoly2(c.vertices[::-1]), K.vertex_flags[::-1], K.edge_flags[::-1])
    return K


def canonical_equal(A: FlaggedBody2, B: FlaggedBody2) -> bool:
    """True iff ``A`` and ``B`` are the same point set."""
    ca, cb = canonicalize(A), canonicalize(B)
    return (ca.closure == cb.closure and ca.vertex_flags == cb.vertex_flags
            and ca.edge_flags == cb.edge_flags)


def subset_of(A: FlaggedBody2, B: FlaggedBody2) -> bool:
    """Exact containment ``A <= B`` for convex flagged sets.

    For a 2-D ``A`` the closure of ``A`` must lie in the closure of ``B``
    (then the interior of ``A`` lies in the interior of ``B``).  Included
    boundary faces are then checked one representative at a time after
    subdividing ``A``'s boundary at ``B``'s vertices and at the points where it
    meets ``B``'s supporting lines, which makes membership in ``B`` constant on
    every piece.
    """
    if A.is_empty:
        return True
    if B.is_empty:
        return False
    if A.dim == 2:
        if B.dim < 2:
            return False
        cons = B.closure.constraints()
        if any(B.closure.locate(v) < 0 for v in A.closure.vertices):
            return False
        for d in A.closure.directions():
            if any(cross(bd, d) < 0 for _, bd in cons):
                return False
    breaks = list(B.closure.vertices)
    for face in B.faces:
        if face.kind == "v":
            continue
        d = face.direction()
        nrm = (-d.y, d.x)
        _, pts = clip(A.closure, nrm[0], nrm[1], nrm[0] * face.a.x + nrm[1] * face.a.y)
        breaks.extend(p for p in pts if cross(d, p - face.a) == 0)
    sub = insert_points(A.closure, breaks)
    probe = FlaggedBody2(sub, (False,) * len(sub.vertices), (False,) * sub.n_edges())
    for face in probe.faces:
        z = face.rep()
        if membership(A, z) and not membership(B, z):
            return False
    return True
