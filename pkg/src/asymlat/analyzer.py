"""Decide q-compactness of a planar convex set and certify the answer.

For a q-compact set the certificate is the structural decomposition (an apex
form or a center form) whose union is checked to reproduce the input exactly,
together with a q^s-compact center ``C`` with ``C <= K <= C + theta_0``.  For a
non-compact set it is a cover witness.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .body import (
    DOWN, LEFT, THETA0_DIRS, ClosedPoly2, Face, FlaggedBody2, canonical_equal, canonicalize,
    closed_body, dominating_point, from_predicate, hull, in_saturation, insert_points,
    intersect_halfplane, membership, saturate, subset_of, validate,
)
from .exact import NEG_INF, ExtendedScalar, Point2, cross, fmt
from .witness import (
    UNBOUNDED_X, UNBOUNDED_Y, U_FAMILY, UV_FAMILY, V_FAMILY, CoverWitness,
)

NOT_CONVEX_INPUT = "NOT_CONVEX_INPUT"
Q_COMPACT = "Q_COMPACT"
NOT_Q_COMPACT = "NOT_Q_COMPACT"


class UnboundedAbove(ValueError):
    def __init__(self, axis: int):
        super().__init__(f"projection on axis {axis} is unbounded above")
        self.axis = axis


class InvalidCertificate(ValueError):
    pass


class NotCompact(ValueError):
    pass


@dataclass(frozen=True)
class Extrema:
    u: Fraction
    v: Fraction
    alpha: Fraction
    beta: Fraction
    u_attained: bool
    v_attained: bool
    right_in: bool
    left_in: bool

    @property
    def corner_left(self) -> Point2:
        return Point2(self.alpha, self.v)

    @property
    def corner_right(self) -> Point2:
        return Point2(self.u, self.beta)

    @property
    def degenerate(self) -> bool:
        return self.alpha == self.u and self.beta == self.v


@dataclass(frozen=True)
class Landmarks:
    delta: FlaggedBody2
    s: FlaggedBody2
    r: FlaggedBody2
    f: tuple  # polyline from (alpha, v) to (u, beta)
    h_line: Optional[tuple]  # (a, b, c): chord line a x + b y = c, H = {>= c}

    def f_faces(self) -> list:
        pts = self.f
        out = [Face("v", pts[0], None, True)]
        for p, q in zip(pts, pts[1:]):
            out.append(Face("e", p, q, True))
            out.append(Face("v", q, None, True))
        return out


@dataclass(frozen=True)
class Decomposition:
    """Apex form (``case == 1``) or center form (``case == 2``)."""

    case: int
    u: Fraction
    v: Fraction
    s0: ExtendedScalar
    t0: ExtendedScalar
    left_end_included: bool
    bottom_end_included: bool
    alpha: Optional[Fraction] = None
    beta: Optional[Fraction] = None
    k0: Optional[FlaggedBody2] = None

    @property
    def apex(self) -> Point2:
        return Point2(self.u, self.v)


@dataclass
class Verdict:
    status: str
    decomposition: Optional[Decomposition] = None
    center: Optional[FlaggedBody2] = None
    witness: Optional[CoverWitness] = None
    checks: list = field(default_factory=list)
    reduced: bool = False
    body: Optional[FlaggedBody2] = None
    extrema: Optional[Extrema] = None
    landmarks: Optional[Landmarks] = None

    @property
    def compact(self) -> bool:
        return self.status == Q_COMPACT


# ------------------------------------------------------------------ extrema


def _check_bounded_above(K: FlaggedBody2) -> None:
    for d in K.closure.directions():
        if d.x > 0:
            raise UnboundedAbove(1)
        if d.y > 0:
            raise UnboundedAbove(2)


def compute_extrema(K: FlaggedBody2) -> Extrema:
    """Coordinate suprema ``u, v`` and the corner heights ``alpha, beta``.

    ``alpha`` (``beta``) is the supremum over the part of ``K`` on the line
    ``y = v`` (``x = u``); if that part is empty the closure is used instead
    and the corresponding ``*_attained`` flag is False.
    """
    if K.is_empty:
        raise ValueError("empty set has no extrema")
    K = canonicalize(K)
    _check_bounded_above(K)
    vs = K.closure.vertices
    u = max(p.x for p in vs)
    v = max(p.y for p in vs)
    on_right = intersect_halfplane(K, 1, 0, u)
    on_top = intersect_halfplane(K, 0, 1, v)
    if on_right.is_empty:
        beta = max(p.y for p in vs if p.x == u)
    else:
        beta = max(p.y for p in on_right.closure.vertices)
    if on_top.is_empty:
        alpha = max(p.x for p in vs if p.y == v)
    else:
        alpha = max(p.x for p in on_top.closure.vertices)
    return Extrema(
        u=u, v=v, alpha=alpha, beta=beta,
        u_attained=not on_right.is_empty, v_attained=not on_top.is_empty,
        right_in=membership(K, (u, beta)), left_in=membership(K, (alpha, v)),
    )


def chord_halfplane(e: Extrema) -> tuple:
    """Closed half-plane above the chord from ``(u, beta)`` to ``(alpha, v)``."""
    a, b = e.v - e.beta, e.u - e.alpha
    return a, b, a * e.u + b * e.beta


def compute_landmarks(K: FlaggedBody2, e: Extrema) -> Landmarks:
    left, right = e.corner_left, e.corner_right
    delta = closed_body([Point2(e.alpha, e.beta), left, right])
    s = intersect_halfplane(intersect_halfplane(K, 0, 1, e.beta), 1, 0, e.alpha)
    if e.alpha == e.u:
        r = intersect_halfplane(s, 0, 1, e.v)
        return Landmarks(delta, s, r, (left,), None)
    h = chord_halfplane(e)
    r = intersect_halfplane(K, *h)
    return Landmarks(delta, s, r, _upper_arc(r, left, right), h)


def _upper_arc(r: FlaggedBody2, left: Point2, right: Point2) -> tuple:
    if r.dim < 2:
        return (left, right)
    poly = insert_points(r.closure, [left, right])
    vs = poly.vertices
    i, j = vs.index(right), vs.index(left)
    arc = [vs[i]]
    while i != j:
        i = (i + 1) % len(vs)
        arc.append(vs[i])
    return tuple(reversed(arc))


# ----------------------------------------------------------------- assemble


def _on_segment_to(z, end: Point2, start: ExtendedScalar, start_in: bool, axis: int) -> bool:
    """Membership of ``z`` in ``{start, end]`` along a horizontal (axis 0) or vertical (axis 1) line."""
    fixed = end.y if axis == 0 else end.x
    moving, top = (z[0], end.x) if axis == 0 else (z[1], end.y)
    if (z[1] if axis == 0 else z[0]) != fixed or moving > top:
        return False
    if moving == top:
        return True
    if start is NEG_INF or moving > start:
        return True
    return moving == start and start_in


def _check_certificate(d: Decomposition) -> None:
    if d.case == 1:
        if not (d.t0 <= d.v and d.s0 <= d.u):
            raise InvalidCertificate("apex form needs t0 <= v and s0 <= u")
        return
    if d.case != 2:
        raise InvalidCertificate(f"unknown decomposition case {d.case}")
    if not (d.s0 <= d.alpha < d.u and d.t0 <= d.beta < d.v):
        raise InvalidCertificate("center form needs s0 <= alpha < u and t0 <= beta < v")
    k0 = d.k0
    if k0 is None or k0.is_empty or not k0.closure.bounded or not k0.is_fully_closed():
        raise InvalidCertificate("K0 must be a nonempty closed bounded convex set")
    for corner in (Point2(d.alpha, d.v), Point2(d.alpha, d.beta), Point2(d.u, d.beta)):
        if not membership(k0, corner):
            raise InvalidCertificate(f"K0 misses the triangle corner {corner}")
    for p in k0.closure.vertices:
        if not (d.alpha <= p.x <= d.u and d.beta <= p.y <= d.v):
            raise InvalidCertificate(f"K0 vertex {p} leaves the rectangle")


def assemble(d: Decomposition) -> FlaggedBody2:
    """The union described by a decomposition, as a flagged body."""
    _check_certificate(d)
    breaks = []
    if d.case == 1:
        top = right = d.apex
        pieces_closed = [d.apex]
        k0 = None
    else:
        top, right = Point2(d.alpha, d.v), Point2(d.u, d.beta)
        k0 = d.k0
        pieces_closed = list(k0.closure.vertices) + [top, right]
        breaks.extend(k0.closure.vertices)
    breaks.extend([top, right])
    if d.s0 is not NEG_INF:
        breaks.append(Point2(d.s0, d.v))
    if d.t0 is not NEG_INF:
        breaks.append(Point2(d.u, d.t0))
    poly = hull(pieces_closed, THETA0_DIRS)

    def pred(z) -> bool:
        if z[0] < top.x and z[1] < top.y:
            return True
        if z[0] < right.x and z[1] < right.y:
            return True
        if _on_segment_to(z, top, d.s0, d.left_end_included or d.s0 == top.x, 0):
            return True
        if _on_segment_to(z, right, d.t0, d.bottom_end_included or d.t0 == right.y, 1):
            return True
        return k0 is not None and membership(k0, z)

    K = from_predicate(poly, pred, breaks)
    if not validate(K):
        raise InvalidCertificate("assembled union is not convex")
    return K


# ------------------------------------------------------------------- decide


def is_body(K: FlaggedBody2) -> bool:
    """Nonempty q-interior: 2-D closure whose recession cone contains theta_0."""
    if K.dim != 2 or K.closure.bounded:
        return False
    a, b = K.closure.ray_in, K.closure.ray_out
    # the cone spanned from a clockwise to b must contain DOWN and LEFT
    return all(cross(x, a) >= 0 and cross(b, x) >= 0 for x in THETA0_DIRS)


def _closure_anchor(K: FlaggedBody2, a: Point2) -> Point2:
    """Move an anchor found for ``K + theta_0`` into the closure of ``K``."""
    w = dominating_point(FlaggedBody2.closed(K.closure), a)
    return w if w is not None else a


def _anchor_search(K: FlaggedBody2) -> Optional[Point2]:
    """A point of the closure of ``K`` outside ``K + theta_0``, if any."""
    sat = saturate(K)
    sub = insert_points(K.closure, sat.closure.vertices)
    probe = FlaggedBody2(sub, (False,) * len(sub.vertices), (False,) * sub.n_edges())
    for face in probe.faces:
        z = face.rep()
        if not membership(K, z) and not in_saturation(K, z):
            return z
    return None


def _section(K: FlaggedBody2, e: Extrema, axis: int):
    """``(start, start_included)`` of ``K`` on ``x = u`` (axis 1) or ``y = v`` (axis 0)."""
    if axis == 1:
        part = intersect_halfplane(K, 1, 0, e.u)
        end = e.beta
    else:
        part = intersect_halfplane(K, 0, 1, e.v)
        end = e.alpha
    c = part.closure
    if c.ray_out is not None or c.ray_in is not None:
        return NEG_INF, False
    coords = [p.y if axis == 1 else p.x for p in c.vertices]
    start = min(coords)
    if start == end:
        return start, True
    p = Point2(e.u, start) if axis == 1 else Point2(start, e.v)
    return start, membership(K, p)


def _fail(checks, name, witness) -> Verdict:
    checks.append((name, False))
    return Verdict(NOT_Q_COMPACT, witness=witness, checks=checks)


def decide(K: FlaggedBody2) -> Verdict:
    """Decide q-compactness of a convex flagged set and build its certificate."""
    if not validate(K):
        return Verdict(NOT_CONVEX_INPUT, checks=[("convex_input", False)])
    K = canonicalize(K)
    checks = [("convex_input", True)]
    try:
        _check_bounded_above(K)
    except UnboundedAbove as exc:
        fam = UNBOUNDED_X if exc.axis == 1 else UNBOUNDED_Y
        return _fail(checks, "bounded_above", CoverWitness(
            fam, None, "bounded_above", f"P{exc.axis}(K) has no finite supremum"))
    checks.append(("bounded_above", True))
    reduced = not is_body(K)
    B = saturate(K) if reduced else K
    checks.append(("body" if not reduced else "reduced_to_saturation", True))
    verdict = _decide_body(B, checks)
    verdict.reduced = reduced
    verdict.body = B
    if verdict.status == NOT_Q_COMPACT:
        w = verdict.witness
        if reduced and w.anchor is not None and w.family == UV_FAMILY:
            verdict.witness = CoverWitness(w.family, _closure_anchor(K, w.anchor), w.condition, w.narrative)
        return verdict
    verdict.center = _center_unchecked(K)
    return verdict


def _decide_body(B: FlaggedBody2, checks: list) -> Verdict:
    c = B.closure
    ok = c.ray_in == DOWN and c.ray_out == LEFT
    checks.append(("recession_cone_is_theta0", ok))
    if not ok:
        raise AssertionError("body with recession cone other than theta_0 after bounds check")
    e = compute_extrema(B)
    if not e.u_attained:
        return _fail(checks, "u_attained", CoverWitness(
            U_FAMILY, e.corner_right, "u_attained", f"sup P1(K) = {fmt(e.u)} is not attained"))
    checks.append(("u_attained", True))
    if not e.v_attained:
        return _fail(checks, "v_attained", CoverWitness(
            V_FAMILY, e.corner_left, "v_attained", f"sup P2(K) = {fmt(e.v)} is not attained"))
    checks.append(("v_attained", True))
    if not e.right_in:
        return _fail(checks, "corner_right_included", CoverWitness(
            UV_FAMILY, e.corner_right, "corner_right_included", "(u, beta) is missing"))
    checks.append(("corner_right_included", True))
    if not e.left_in:
        return _fail(checks, "corner_left_included", CoverWitness(
            UV_FAMILY, e.corner_left, "corner_left_included", "(alpha, v) is missing"))
    checks.append(("corner_left_included", True))
    ok = (e.alpha == e.u) == (e.beta == e.v)
    checks.append(("alpha_eq_u_iff_beta_eq_v", ok))
    if not ok:
        raise AssertionError("corner coincidence mismatch")
    lm = compute_landmarks(B, e)
    missing = _missing_on_arc(B, lm)
    if missing is not None:
        return _fail(checks, "f_arc_included", CoverWitness(
            UV_FAMILY, missing, "f_arc_included", f"arc point {missing} is missing"))
    checks.append(("f_arc_included", True))
    t0, bottom_in = _section(B, e, 1)
    s0, left_in = _section(B, e, 0)
    checks.append(("sections_end_at_corners", True))
    if e.degenerate:
        d = Decomposition(1, e.u, e.v, s0, t0, left_in, bottom_in)
    else:
        k0 = lm.s
        ok = k0.is_fully_closed() and k0.closure.bounded
        checks.append(("k0_closed_bounded", ok))
        if not ok:
            anchor = _anchor_search(B)
            return _fail(checks, "k0_closed_bounded", CoverWitness(
                UV_FAMILY, anchor, "k0_closed_bounded", "S_K is not closed"))
        d = Decomposition(2, e.u, e.v, s0, t0, left_in, bottom_in, e.alpha, e.beta, k0)
    same = canonical_equal(B, assemble(d))
    if not same:
        anchor = _anchor_search(B)
        if anchor is None:
            raise AssertionError("round trip failed but no missing closure point exists")
        return _fail(checks, "round_trip_equal", CoverWitness(
            UV_FAMILY, anchor, "round_trip_equal", f"closure point {anchor} is missing"))
    checks.append(("round_trip_equal", True))
    return Verdict(Q_COMPACT, decomposition=d, checks=checks, extrema=e, landmarks=lm)


def _missing_on_arc(K: FlaggedBody2, lm: Landmarks) -> Optional[Point2]:
    for face in lm.f_faces():
        pieces = [face]
        if face.kind == "e":
            sub = insert_points(ClosedPoly2((face.a, face.b)), K.closure.vertices)
            pieces = FlaggedBody2.closed(sub).faces
        for piece in pieces:
            z = piece.rep()
            if not membership(K, z):
                return z
    return None


# ------------------------------------------------------------------- center


def _center_unchecked(K: FlaggedBody2) -> FlaggedBody2:
    e = compute_extrema(K)
    return compute_landmarks(K, e).r


def center(K: FlaggedBody2) -> FlaggedBody2:
    """The q^s-compact center ``R_K`` with ``R_K <= K <= R_K + theta_0``.

    Every postcondition is verified exactly; raises :class:`NotCompact` when
    ``K`` is not q-compact.
    """
    verdict = decide(K)
    if not verdict.compact:
        raise NotCompact(verdict.status)
    c = verdict.center
    if not (c.closure.bounded and c.is_fully_closed()):
        raise AssertionError("center is not closed and bounded")
    if not subset_of(c, K):
        raise AssertionError("center is not contained in K")
    if not subset_of(K, saturate(c)):
        raise AssertionError("K is not contained in center + theta_0")
    return c
