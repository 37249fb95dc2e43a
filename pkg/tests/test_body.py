from fractions import Fraction

import pytest

from asymlat.body import (
    THETA0_DIRS, FlaggedBody2, canonical_equal, canonicalize, closed_body, collinear_chains,
    dominating_point, hull, in_saturation, insert_points, intersect_halfplane, membership, saturate,
    subset_of, validate,
)
from asymlat.exact import pt
from asymlat.generate import generate

from conftest import grid_points

HALF = Fraction(1, 2)
PTS = grid_points(-3, 3, 4)


def same_set(K, predicate, points=PTS):
    wrong = [z for z in points if membership(K, z) != predicate(*z)]
    assert not wrong, wrong[:5]


def split_segment(flags_v, flags_e):
    poly = insert_points(hull([pt(0, 0), pt(1, 0)]), [pt(HALF, 0)])
    assert poly.vertices == (pt(0, 0), pt(HALF, 0), pt(1, 0))
    return FlaggedBody2(poly, flags_v, flags_e)


# ------------------------------------------------------------------ validate

def test_validate_examples(closed_triangle, half_open_segment):
    assert validate(closed_triangle)
    assert not validate(split_segment((True, False, True), (True, True)))
    assert validate(half_open_segment)


def test_gap_breaks_convexity():
    K = split_segment((True, False, True), (True, True))
    a, b = (Fraction(1, 4), 0), (Fraction(3, 4), 0)
    assert membership(K, a) and membership(K, b)
    assert not membership(K, (HALF, 0))


def test_collinear_pseudo_vertex_gap_is_invalid():
    # (1,1) lies on the chord from (0,2) to (2,0): excluding it alone leaves a gap
    poly = insert_points(hull([pt(0, 2), pt(2, 0)], THETA0_DIRS), [pt(1, 1)])
    assert pt(1, 1) in poly.vertices
    i = poly.vertices.index(pt(1, 1))
    vflags = tuple(k != i for k in range(len(poly.vertices)))
    K = FlaggedBody2(poly, vflags, (True,) * poly.n_edges())
    assert not validate(K)


def test_empty_and_flagless_point_are_invalid():
    assert not validate(FlaggedBody2(hull([pt(0, 0)]), (False,), ()))


def test_collinear_chains_of_standard_body(standard_body):
    chains = collinear_chains(standard_body)
    assert len(chains) == 3
    assert all(any(f.kind != "v" for f in ch) for ch in chains)


# ---------------------------------------------------------------- membership

def test_membership_examples(closed_triangle, half_open_segment, standard_body):
    assert membership(closed_triangle, (Fraction(1, 4), Fraction(1, 4)))
    assert not membership(half_open_segment, (0, 1))
    assert membership(standard_body, (-5, 1))


def test_membership_standard_body(standard_body):
    same_set(standard_body, lambda x, y: x <= 1 and y <= 1 and x + y <= 1)


def test_membership_excluded_vertex(excluded_vertex_body):
    same_set(excluded_vertex_body, lambda x, y: x + y <= 1 and y <= 1 and x < 1)


def test_membership_open_cone():
    K = FlaggedBody2(hull([pt(0, 0)], THETA0_DIRS), (True,), (False, False))
    same_set(K, lambda x, y: (x < 0 and y < 0) or (x == 0 and y == 0))


# ---------------------------------------------------------------- saturation

def test_saturate_point():
    S = saturate(FlaggedBody2(hull([pt(0, 0)]), (True,), ()))
    assert canonical_equal(S, closed_body([pt(0, 0)], THETA0_DIRS))
    same_set(S, lambda x, y: x <= 0 and y <= 0)


def test_saturate_half_open_segment(half_open_segment):
    S = saturate(half_open_segment)

    def pred(x, y):
        # some s in (0, 1] with (x, y) <= (s, 1 - s)
        hi = min(Fraction(1), 1 - y)
        return hi > 0 and x <= hi

    same_set(S, pred)
    # the horizontal ray through (0,1) is the only excluded face
    excluded = [f for f in S.faces if not f.flag]
    assert len(excluded) == 2
    assert {f.kind for f in excluded} == {"v", "r"}
    assert all(f.a == pt(0, 1) for f in excluded)


def test_saturate_closed_triangle(closed_triangle):
    S = saturate(closed_triangle)
    assert S.is_fully_closed()
    assert canonical_equal(S, closed_body([pt(0, 1), pt(1, 0)], THETA0_DIRS))
    same_set(S, lambda x, y: max(x, 0) + max(y, 0) <= 1)


def test_in_saturation_matches_dominating_point(excluded_vertex_body):
    for z in PTS:
        w = dominating_point(excluded_vertex_body, z)
        assert in_saturation(excluded_vertex_body, z) == (w is not None)
        if w is not None:
            assert membership(excluded_vertex_body, w) and w.x >= z[0] and w.y >= z[1]


def test_saturation_is_idempotent():
    for K in generate(11, 40):
        S = saturate(K)
        assert validate(S)
        assert canonical_equal(saturate(S), S)
        assert subset_of(K, S)


# ----------------------------------------------------------------- clipping

def test_intersect_halfplane_examples(standard_body):
    seg = intersect_halfplane(standard_body, 1, 1, 1)
    assert canonical_equal(seg, closed_body([pt(0, 1), pt(1, 0)]))
    tri = intersect_halfplane(closed_body([pt(0, 0), pt(2, 0), pt(0, 2)]), 1, 0, 1)
    assert canonical_equal(tri, closed_body([pt(1, 0), pt(2, 0), pt(1, 1)]))
    for v in tri.closure.vertices:
        assert v.x >= 1 and v.x + v.y <= 2 and v.y >= 0


def test_intersect_with_superset_halfplane_is_identity():
    for K in generate(5, 30):
        lo = min(p.y for p in K.closure.vertices) - 1
        if K.closure.directions():
            continue
        assert canonical_equal(intersect_halfplane(K, 0, 1, lo), K)


def test_intersect_keeps_flags(excluded_vertex_body):
    part = intersect_halfplane(excluded_vertex_body, 1, 0, 0)
    same_set(part, lambda x, y: x >= 0 and x + y <= 1 and y <= 1 and x < 1)


# ------------------------------------------------------- canonical equality

def test_canonical_equal_examples(closed_triangle, half_open_segment):
    assert canonical_equal(closed_triangle, closed_triangle)
    redundant = split_segment((True, True, True), (True, True))
    assert canonical_equal(redundant, closed_body([pt(0, 0), pt(1, 0)]))
    assert not canonical_equal(half_open_segment, closed_body([pt(0, 1), pt(1, 0)]))


def test_canonicalize_is_idempotent_and_vertex_order_free():
    for K in generate(2, 60):
        C = canonicalize(K)
        assert canonicalize(C) == C
        assert canonical_equal(K, C)


def test_canonical_equal_agrees_with_pointwise_equality():
    bodies = generate(8, 30)
    for A in bodies[:10]:
        for B in bodies[:10]:
            eq = canonical_equal(A, B)
            pts = [v for v in A.closure.vertices + B.closure.vertices]
            if eq:
                assert all(membership(A, z) == membership(B, z) for z in PTS + pts)


# ---------------------------------------------------------------- subset_of

def test_subset_of_matches_grid(standard_body, excluded_vertex_body, closed_triangle):
    bodies = [standard_body, excluded_vertex_body, closed_triangle,
              saturate(closed_triangle)] + generate(4, 12)
    pts = grid_points(-4, 4, 2)
    for A in bodies:
        for B in bodies:
            if subset_of(A, B):
                assert all(membership(B, z) for z in pts if membership(A, z))
    assert subset_of(excluded_vertex_body, standard_body)
    assert not subset_of(standard_body, excluded_vertex_body)
    assert subset_of(closed_triangle, standard_body)
