"""Independent verification paths for the analyzer.

Nothing here calls :func:`asymlat.analyzer.decide`.  Each check implements one
necessary condition for q-compactness on its own terms, and
:func:`cross_check` re-evaluates set membership with a vectorized integer
cell oracle that shares no code with :func:`asymlat.body.membership`.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .analyzer import (
    Decomposition, Extrema, Landmarks, UnboundedAbove, assemble, compute_extrema,
    compute_landmarks, is_body,
)
from .body import (
    THETA0_DIRS, FlaggedBody2, canonical_equal, closed_body, dominating_point, interior_point,
    intersect_halfplane, membership, saturate, subset_of,
)
from .exact import Point2, Point3, circle_point, cross, dot, fmt, frac, pt3
from .witness import (
    UNBOUNDED_X, UNBOUNDED_Y, U_FAMILY, UV_FAMILY, V_FAMILY, CoverWitness, WitnessInvalid,
)


# ------------------------------------------------------- necessary conditions


def proj_sup_check(K: FlaggedBody2, axis: int) -> bool:
    """Does the projection of ``K`` on ``axis`` (1 or 2) contain its supremum?

    The supremum is read off the closure; attainment is decided by scanning the
    included faces that lie on the supporting line.
    """
    i = axis - 1
    for d in K.closure.directions():
        if d[i] > 0:
            raise UnboundedAbove(axis)
    top = max(p[i] for p in K.closure.vertices)
    for face in K.faces:
        if not face.flag:
            continue
        if face.kind == "v" and face.a[i] == top:
            return True
        if face.kind == "e" and face.a[i] == top and face.b[i] == top:
            return True
        if face.kind == "r" and face.a[i] == top and face.b[i] == 0:
            return True
    return False


def f_arc_check(K: FlaggedBody2, lm: Landmarks) -> bool:
    """Every face of the arc ``F_K`` (endpoints included) lies in ``K``.

    Traverses the boundary faces of ``K`` touching the arc and requires their
    flags; arc pieces that cross the interior of the closure need no flag.
    """
    arc = lm.f
    for p in arc:
        if not _point_included(K, p):
            return False
    for p, q in zip(arc, arc[1:]):
        d = q - p
        for face in K.faces:
            if face.kind == "v":
                w = face.a - p
                if cross(d, w) == 0 and 0 < dot(d, w) < dot(d, d) and not face.flag:
                    return False
                continue
            fd = face.direction()
            if cross(d, fd) != 0 or cross(d, face.a - p) != 0:
                continue
            # collinear: do the open pieces overlap?
            s0 = dot(d, face.a - p)
            if face.kind == "r":
                overlap = (dot(d, fd) > 0 and s0 < dot(d, d)) or (dot(d, fd) < 0 and s0 > 0)
            else:
                s1 = dot(d, face.b - p)
                overlap = max(min(s0, s1), 0) < min(max(s0, s1), dot(d, d))
            if overlap and not face.flag:
                return False
        # pieces of the arc strictly inside the closure are in K automatically
    return True


def _point_included(K: FlaggedBody2, p: Point2) -> bool:
    for face in K.faces:
        if face.contains(p):
            return face.flag
    return K.dim == 2 and K.closure.locate(p) > 0


def cone_hull_check(K: FlaggedBody2, e: Extrema) -> bool:
    """The hull of the two downward rays at ``(alpha, v)`` and ``(u, beta)`` lies in ``K``."""
    if e.corner_left == e.corner_right:
        return True
    # co(L1 u L2) misses the two boundary rays of its closure (but not their apexes)
    poly = closed_body([e.corner_left, e.corner_right], THETA0_DIRS).closure
    n = poly.n_edges()
    hull_body = FlaggedBody2(poly, (True,) * len(poly.vertices),
                             (False,) + (True,) * (n - 2) + (False,))
    return subset_of(hull_body, K)


def corners_check(K: FlaggedBody2, e: Extrema) -> bool:
    return _point_included(K, e.corner_left) and _point_included(K, e.corner_right)


# ------------------------------------------------------------ cover witnesses


def _point_in(K: FlaggedBody2) -> Point2:
    if K.dim == 2:
        return interior_point(K.closure)
    for face in K.faces:
        if face.flag:
            return face.rep()
    raise WitnessInvalid("empty set")


def uncovered_point(w: CoverWitness, K: FlaggedBody2, ts: Sequence) -> Point2:
    """A point of ``K`` outside every member of the finite subfamily ``ts``.

    Raises :class:`WitnessInvalid` when no such point exists, i.e. the
    witness is wrong.
    """
    ts = [frac(t) for t in ts]
    if not ts or any(t <= 0 for t in ts):
        raise ValueError("subfamily parameters must be a nonempty list of positive rationals")
    if w.family in (UNBOUNDED_X, UNBOUNDED_Y):
        i = 0 if w.family == UNBOUNDED_X else 1
        target = max(ts)
        dirs = [d for d in K.closure.directions() if d[i] > 0]
        if not dirs:
            raise WitnessInvalid("set is bounded in that direction")
        base = _point_in(K)
        step = max(Fraction(0), (target - base[i]) / dirs[0][i]) + 1
        z = base + dirs[0].scale(step)
    else:
        if membership(K, w.anchor):
            raise WitnessInvalid(f"anchor {w.anchor} belongs to K")
        half = min(ts) / 2
        x1, y1 = w.anchor
        if w.family == U_FAMILY:
            part = intersect_halfplane(K, 1, 0, x1 - half)
            z = _point_in(part) if not part.is_empty else None
        elif w.family == V_FAMILY:
            part = intersect_halfplane(K, 0, 1, y1 - half)
            z = _point_in(part) if not part.is_empty else None
        else:
            z = dominating_point(K, (x1 - half, y1 - half))
        if z is None:
            raise WitnessInvalid("a finite subfamily already covers K")
    if not membership(K, z):
        raise AssertionError("uncovered point left K")
    if any(w.covers_point(t, z) for t in ts):
        raise WitnessInvalid(f"{z} is covered")
    return z


def witness_covers(w: CoverWitness, K: FlaggedBody2) -> bool:
    """The family (all ``t > 0``) covers ``K``.

    For anchored families this means no point of ``K`` dominates the anchor on
    the relevant coordinates.
    """
    if w.family in (UNBOUNDED_X, UNBOUNDED_Y):
        return True
    x1, y1 = w.anchor
    if w.family == U_FAMILY:
        return intersect_halfplane(K, 1, 0, x1).is_empty
    if w.family == V_FAMILY:
        return intersect_halfplane(K, 0, 1, y1).is_empty
    return dominating_point(K, (x1, y1)) is None


# ------------------------------------------------------------- cell oracle


def _lcm_den(values) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, Fraction(v).denominator)
    return out


class CellOracle:
    """Integer point location over ``relint + included faces`` in scaled coordinates.

    Every coordinate is multiplied by ``scale``; ``scale`` must clear all
    denominators of the body's vertices.
    """

    def __init__(self, K: FlaggedBody2, scale: int):
        self.dim = K.dim
        self.empty = K.is_empty
        self.cells = []
        self.constraints = []

        def s(p):
            return (int(p[0] * scale), int(p[1] * scale))

        def idir(d):
            m = _lcm_den(d)
            return (int(d[0] * m), int(d[1] * m))

        for face in K.faces:
            if face.kind == "v":
                self.cells.append(("v", s(face.a), None, face.flag))
            elif face.kind == "e":
                a, b = s(face.a), s(face.b)
                self.cells.append(("e", a, (b[0] - a[0], b[1] - a[1]), face.flag))
            else:
                self.cells.append(("r", s(face.a), idir(face.b), face.flag))
        if self.dim == 2:
            for p, d in K.closure.constraints():
                self.constraints.append((s(p), idir(d)))

    def members(self, X, Y):
        out = np.zeros(X.shape, dtype=bool)
        if self.empty:
            return out
        if self.dim == 2:
            inside = np.ones(X.shape, dtype=bool)
            for (px, py), (dx, dy) in self.constraints:
                inside &= (dx * (Y - py) - dy * (X - px)) > 0
            out |= inside
        for kind, (ax, ay), d, flag in self.cells:
            if not flag:
                continue
            if kind == "v":
                out |= (X == ax) & (Y == ay)
                continue
            dx, dy = d
            wx, wy = X - ax, Y - ay
            on_line = (dx * wy - dy * wx) == 0
            s = dx * wx + dy * wy
            hit = on_line & (s > 0)
            if kind == "e":
                hit &= s < dx * dx + dy * dy
            out |= hit
        return out


def _sample(bodies, n: int, seed: int, scale: int, near: int):
    rng = np.random.default_rng(seed)
    faces = [f for b in bodies for f in b.faces]
    verts = [p for b in bodies for p in b.closure.vertices]
    xs = [int(p.x * scale) for p in verts]
    ys = [int(p.y * scale) for p in verts]
    for f in faces:
        if f.kind == "r":
            q = f.a + f.b.scale(4)
            xs.append(int(q.x * scale))
            ys.append(int(q.y * scale))
    pad = 2 * scale
    lo_x, hi_x, lo_y, hi_y = min(xs) - pad, max(xs) + pad, min(ys) - pad, max(ys) + pad
    n_face = n // 2
    X = np.empty(n, dtype=object)
    Y = np.empty(n, dtype=object)
    grid = 64
    for k in range(n_face):
        f = faces[int(rng.integers(len(faces)))]
        ax, ay = int(f.a.x * scale), int(f.a.y * scale)
        if f.kind == "e":
            step = int(rng.integers(grid + 1))
            ax += (int(f.b.x * scale) - ax) * step // grid
            ay += (int(f.b.y * scale) - ay) * step // grid
        elif f.kind == "r":
            step = int(rng.integers(1, 4 * grid))
            ax += int(f.b.x * scale) * step // grid
            ay += int(f.b.y * scale) * step // grid
        if rng.random() < 0.5:
            ax += int(rng.integers(-near, near + 1))
            ay += int(rng.integers(-near, near + 1))
        X[k], Y[k] = ax, ay
    for k in range(n_face, n):
        X[k] = int(rng.integers(lo_x, hi_x + 1))
        Y[k] = int(rng.integers(lo_y, hi_y + 1))
    return X, Y


def cross_check(K: FlaggedBody2, d: Decomposition, n: int = 10_000, seed: int = 0,
                assembled: FlaggedBody2 | None = None) -> dict:
    """Compare ``K`` with the assembled decomposition on ``n`` exact sample points.

    Half of the samples sit on or within 1/16 of boundary faces (where flag
    mistakes live); the rest are uniform over a padded bounding box.
    """
    A = assembled if assembled is not None else assemble(d)
    bodies = [b for b in (K, A) if not b.is_empty]
    nums = []
    for b in bodies:
        for p in b.closure.vertices:
            nums.extend(p)
        for r in b.closure.directions():
            nums.extend(r)
    grid = 64
    scale = _lcm_den(nums) * grid * 16
    X, Y = _sample(bodies, n, seed, scale, near=scale // 16)
    big = max(max(abs(int(x)) for x in X), max(abs(int(y)) for y in Y))
    if big < 2 ** 28 and scale < 2 ** 20:
        X, Y = X.astype(np.int64), Y.astype(np.int64)
    mk = CellOracle(K, scale).members(X, Y)
    ma = CellOracle(A, scale).members(X, Y)
    bad = np.nonzero(mk != ma)[0]
    disagreements = [
        {"point": [fmt(Fraction(int(X[i]), scale)), fmt(Fraction(int(Y[i]), scale))],
         "in_K": bool(mk[i]), "in_assembled": bool(ma[i])}
        for i in bad[:20]
    ]
    return {"samples": int(n), "seed": int(seed), "disagreements": int(len(bad)),
            "examples": disagreements, "in_K": int(mk.sum())}


# ---------------------------------------------------------------- 3-D demo

APEX3 = pt3(0, 1, 1)
ORIGIN3 = pt3(0, 0, 0)
LIMIT3 = pt3(0, 0, 1)
SIDE_FUNCTIONAL = pt3(0, -1, 1)


def arc_point(t) -> Point3:
    c = circle_point(t)
    return Point3(c.x, Fraction(0), c.y)


def q3(x: Point3) -> Fraction:
    return max(max(c, Fraction(0)) for c in x)


def qs3(x: Point3) -> Fraction:
    return max(q3(x), q3(Point3(-x.x1, -x.x2, -x.x3)))


def demo_3d(sample_params: Sequence) -> dict:
    """Certificates that ``co(A + {0, (0,1,1)})`` has no q^s-compact center.

    ``A`` is the quarter circle ``x1^2 + x3^2 = 1, x1 in (0, 1], x2 = 0,
    x3 >= 0``; each parameter ``t`` picks the arc point ``circle_point(t)``.
    ``t = 1`` gives the excluded limit point ``(0, 0, 1)`` and is reported as
    such instead of being sampled.
    """
    params = [frac(t) for t in sample_params]
    for t in params:
        if not (0 < t <= 1):
            raise ValueError(f"arc parameter {fmt(t)} outside (0, 1]")
    arc_params = [t for t in params if t != 1]
    if len(arc_params) < 10:
        raise ValueError("need at least 10 arc parameters in (0, 1)")
    arc = [arc_point(t) for t in arc_params]
    generators = [ORIGIN3, APEX3] + arc
    checks = []

    def record(name, ok, **values):
        checks.append({"check": name, "ok": bool(ok),
                       **{k: fmt(v) if isinstance(v, Fraction) else v for k, v in values.items()}})
        return ok

    on_circle = True
    for t, a in zip(arc_params, arc):
        ok = a.x1 * a.x1 + a.x3 * a.x3 == 1 and 0 < a.x1 <= 1 and a.x2 == 0 and a.x3 >= 0
        on_circle &= record("arc_point_on_circle", ok, t=t, x1=a.x1, x3=a.x3)

    forced = True
    for a in arc:
        ok = a.dot(a) == 1 and all(c >= 0 for c in a)
        for g in generators:
            val = g.dot(a)
            if g == a:
                continue
            ok &= val < 1
            record("support_value_below_one", val < 1, point=_fmt3(a), generator=_fmt3(g), value=val)
        forced &= record("forced_point", ok, point=_fmt3(a), value_at_point=a.dot(a))

    limit_ok = True
    for g in generators:
        val = g.dot(SIDE_FUNCTIONAL)
        limit_ok &= record("limit_functional_below_one", val < 1, generator=_fmt3(g), value=val)
    limit_ok &= record("limit_functional_at_limit", LIMIT3.dot(SIDE_FUNCTIONAL) == 1,
                       value=LIMIT3.dot(SIDE_FUNCTIONAL))
    gaps = [qs3(a - LIMIT3) for a in arc]
    record("arc_approaches_limit", True, smallest_qs_distance=min(gaps))

    absorbed = all(c <= d for c, d in zip(LIMIT3, APEX3))
    record("limit_below_apex", absorbed, limit=_fmt3(LIMIT3), apex=_fmt3(APEX3))
    bounded = all(0 <= c <= 1 for g in generators for c in g)
    record("closure_bounded", bounded, bound=Fraction(1))

    return {
        "arc_samples": len(arc),
        "limit_parameters": [fmt(t) for t in params if t == 1],
        "on_circle": bool(on_circle),
        "forced_points": bool(forced),
        "limit_excluded": bool(limit_ok),
        "q_compact_ingredients": bool(absorbed and bounded),
        "not_strongly_q_compact": bool(on_circle and forced and limit_ok),
        "checks": checks,
    }


def _fmt3(p) -> list:
    return [fmt(c) for c in p]


# ------------------------------------------------------------ composite suite


DEMO_SUBFAMILIES = (
    (Fraction(1),),
    (Fraction(1, 2), Fraction(1, 4)),
    (Fraction(1), Fraction(1, 3), Fraction(1, 9)),
)


def necessary_checks(B: FlaggedBody2) -> list:
    """The per-condition checks on a body, as ``(name, passed)`` pairs."""
    e = compute_extrema(B)
    lm = compute_landmarks(B, e)
    out = [
        ("proj_sup_x", proj_sup_check(B, 1)),
        ("proj_sup_y", proj_sup_check(B, 2)),
        ("corners_included", corners_check(B, e)),
        ("f_arc_included", f_arc_check(B, lm)),
    ]
    if e.corner_left != e.corner_right:
        out.append(("cone_hull_included", cone_hull_check(B, e)))
    return out


def oracle_suite(K: FlaggedBody2, d: Decomposition | None, witness: CoverWitness | None = None,
                 samples: int = 10_000, seed: int = 0) -> dict:
    """Run every oracle check on ``K`` (saturated first unless it is a body).

    ``d`` is the decomposition to test for set equality, ``witness`` the cover
    to validate; either may be None.  ``compact`` is the conjunction of the
    checks, including the sampled equality test when ``d`` is given.
    """
    B = K if is_body(K) else saturate(K)
    try:
        checks = necessary_checks(B)
    except UnboundedAbove as exc:
        checks = [(f"bounded_above_{exc.axis}", False)]
    out = {"checks": [{"name": n, "passed": ok} for n, ok in checks]}
    compact = all(ok for _, ok in checks)
    if d is not None:
        A = assemble(d)
        exact_equal = canonical_equal(B, A)
        cc = cross_check(B, d, n=samples, seed=seed, assembled=A)
        out["cross_check"] = cc
        out["checks"].append({"name": "assembled_equal", "passed": exact_equal})
        out["checks"].append({"name": "sampled_equal", "passed": cc["disagreements"] == 0})
        compact = compact and exact_equal and cc["disagreements"] == 0
    else:
        compact = False
    if witness is not None:
        demos = []
        valid = True
        for ts in DEMO_SUBFAMILIES:
            try:
                z = uncovered_point(witness, B, ts)
                demos.append({"subfamily": [fmt(t) for t in ts], "point": [fmt(z.x), fmt(z.y)],
                              "in_set": membership(B, z),
                              "covered": any(witness.covers_point(t, z) for t in ts)})
            except WitnessInvalid as exc:
                valid = False
                demos.append({"subfamily": [fmt(t) for t in ts], "error": str(exc)})
        out["uncovered_points"] = demos
        out["witness_valid"] = valid and all(x.get("in_set") and not x.get("covered") for x in demos)
    out["compact"] = compact
    return out
