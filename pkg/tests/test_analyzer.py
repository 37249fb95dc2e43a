from fractions import Fraction

import pytest

from asymlat.analyzer import (
    NOT_Q_COMPACT, Q_COMPACT, Decomposition, InvalidCertificate, NotCompact, assemble, center,
    compute_extrema, compute_landmarks, decide,
)
from asymlat.body import (
    THETA0_DIRS, FlaggedBody2, canonical_equal, closed_body, hull, membership, saturate, subset_of,
)
from asymlat.exact import NEG_INF, pt
from asymlat.witness import U_FAMILY, UNBOUNDED_X, UV_FAMILY

from conftest import grid_points

PTS = grid_points(-3, 3, 4)
TWO_EDGE = [pt(0, 2), pt(Fraction(3, 2), Fraction(3, 2)), pt(2, 0)]


def point_body(x, y):
    return FlaggedBody2(hull([pt(x, y)]), (True,), ())


def cone(apex=(0, 0)):
    return closed_body([pt(*apex)], THETA0_DIRS)


# ------------------------------------------------------------------ extrema

def test_extrema_standard(standard_body):
    e = compute_extrema(standard_body)
    assert (e.u, e.v, e.alpha, e.beta) == (1, 1, 0, 0)
    assert e.u_attained and e.v_attained and e.left_in and e.right_in


def test_extrema_point():
    e = compute_extrema(point_body(3, 5))
    assert (e.u, e.v, e.alpha, e.beta) == (3, 5, 3, 5)
    assert e.u_attained and e.v_attained


def test_extrema_excluded_vertex(excluded_vertex_body):
    e = compute_extrema(excluded_vertex_body)
    assert e.u == 1 and not e.u_attained and e.v_attained


# ---------------------------------------------------------------- landmarks

def test_landmarks_standard(standard_body):
    lm = compute_landmarks(standard_body, compute_extrema(standard_body))
    assert canonical_equal(lm.r, closed_body([pt(0, 1), pt(1, 0)]))
    assert lm.f == (pt(0, 1), pt(1, 0))
    assert canonical_equal(lm.s, closed_body([pt(0, 0), pt(1, 0), pt(0, 1)]))
    assert canonical_equal(lm.delta, closed_body([pt(0, 0), pt(1, 0), pt(0, 1)]))


def test_landmarks_cone():
    K = cone()
    lm = compute_landmarks(K, compute_extrema(K))
    single = point_body(0, 0)
    assert canonical_equal(lm.r, single) and canonical_equal(lm.s, single)
    assert lm.f == (pt(0, 0),)


def test_landmarks_collinear_chain_gives_the_chord():
    K = closed_body([pt(0, 2), pt(1, 1), pt(2, 0)], THETA0_DIRS)
    lm = compute_landmarks(K, compute_extrema(K))
    assert lm.f == (pt(0, 2), pt(2, 0))
    assert canonical_equal(lm.r, closed_body([pt(0, 2), pt(2, 0)]))


def test_landmarks_two_edge_chain():
    K = closed_body(TWO_EDGE, THETA0_DIRS)
    lm = compute_landmarks(K, compute_extrema(K))
    assert lm.f == tuple(TWO_EDGE)
    assert canonical_equal(lm.r, closed_body(TWO_EDGE))
    # R_K = K n {x + y >= 2} checked pointwise
    for z in PTS:
        assert membership(lm.r, z) == (membership(K, z) and z[0] + z[1] >= 2)


# ------------------------------------------------------------------- decide

def test_decide_standard(standard_body):
    v = decide(standard_body)
    assert v.status == Q_COMPACT and v.decomposition.case == 2
    d = v.decomposition
    assert d.s0 is NEG_INF and d.t0 is NEG_INF
    assert canonical_equal(d.k0, closed_body([pt(0, 0), pt(1, 0), pt(0, 1)]))
    assert canonical_equal(assemble(d), standard_body)


def test_decide_cone():
    v = decide(cone())
    d = v.decomposition
    assert v.status == Q_COMPACT and d.case == 1
    assert d.apex == pt(0, 0) and d.s0 is NEG_INF and d.t0 is NEG_INF


def test_decide_excluded_vertex(excluded_vertex_body):
    v = decide(excluded_vertex_body)
    assert v.status == NOT_Q_COMPACT
    assert v.witness.family == U_FAMILY and v.witness.anchor == pt(1, 0)
    assert v.witness.condition == "u_attained"


def test_decide_missing_corner_only(standard_body):
    # (1,0) missing but the ray below it kept: sup P1 is attained nowhere else
    K = FlaggedBody2(standard_body.closure, (False, True), (True, True, True))
    v = decide(K)
    assert v.status == NOT_Q_COMPACT and v.witness.family == UV_FAMILY


def test_decide_two_edge_body_with_middle_vertex_excluded():
    K = closed_body(TWO_EDGE, THETA0_DIRS)
    i = K.closure.vertices.index(TWO_EDGE[1])
    vflags = tuple(k != i for k in range(len(K.closure.vertices)))
    v = decide(FlaggedBody2(K.closure, vflags, K.edge_flags))
    assert v.status == NOT_Q_COMPACT
    assert v.witness.anchor == TWO_EDGE[1]


def test_decide_unbounded_above():
    K = closed_body([pt(0, 0)], [pt(1, 0), pt(0, -1)])
    v = decide(K)
    assert v.status == NOT_Q_COMPACT and v.witness.family == UNBOUNDED_X


def test_decide_non_body_reduces_to_saturation(half_open_segment):
    v = decide(half_open_segment)
    assert v.reduced and v.status == NOT_Q_COMPACT
    seg = closed_body([pt(0, 1), pt(1, 0)])
    w = decide(seg)
    assert w.reduced and w.status == Q_COMPACT
    assert canonical_equal(assemble(w.decomposition), saturate(seg))


# ----------------------------------------------------------------- assemble

def test_assemble_cone_full_rays():
    K = assemble(Decomposition(1, Fraction(0), Fraction(0), NEG_INF, NEG_INF, False, False))
    assert canonical_equal(K, cone())


def test_assemble_cone_degenerate_segments():
    K = assemble(Decomposition(1, Fraction(0), Fraction(0), Fraction(0), Fraction(0), True, True))
    for z in PTS:
        assert membership(K, z) == ((z[0] < 0 and z[1] < 0) or z == (0, 0))


def test_assemble_half_open_arms():
    d = Decomposition(1, Fraction(0), Fraction(0), Fraction(-1), Fraction(-2), False, True)
    K = assemble(d)
    for z in PTS:
        x, y = z
        want = (x < 0 and y < 0) or (y == 0 and -1 < x <= 0) or (x == 0 and -2 <= y <= 0)
        assert membership(K, z) == want
    v = decide(K)
    assert v.decomposition == d


@pytest.mark.parametrize("bad", [
    Decomposition(1, Fraction(0), Fraction(0), Fraction(1), NEG_INF, True, True),
    Decomposition(2, Fraction(1), Fraction(1), NEG_INF, NEG_INF, True, True,
                  Fraction(0), Fraction(0), None),
    Decomposition(2, Fraction(1), Fraction(1), NEG_INF, NEG_INF, True, True, Fraction(0), Fraction(0),
                  closed_body([pt(0, 1), pt(1, 0)])),
])
def test_assemble_rejects_bad_certificates(bad):
    with pytest.raises(InvalidCertificate):
        assemble(bad)


# ------------------------------------------------------------------- center

def test_center_examples(standard_body):
    seg = closed_body([pt(0, 1), pt(1, 0)])
    assert canonical_equal(center(standard_body), seg)
    assert canonical_equal(center(cone()), point_body(0, 0))
    assert canonical_equal(center(seg), seg)


def test_center_sandwich(standard_body):
    c = center(standard_body)
    assert subset_of(c, standard_body) and subset_of(standard_body, saturate(c))


def test_center_requires_compactness(excluded_vertex_body):
    with pytest.raises(NotCompact):
        center(excluded_vertex_body)
