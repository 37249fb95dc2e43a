from fractions import Fraction
from pathlib import Path

import pytest

from asymlat.body import THETA0_DIRS, FlaggedBody2, closed_body, hull
from asymlat.exact import pt

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"


def grid(lo, hi, den):
    """All rationals k/den in [lo, hi]."""
    return [Fraction(k, den) for k in range(lo * den, hi * den + 1)]


def grid_points(lo, hi, den):
    g = grid(lo, hi, den)
    return [(x, y) for x in g for y in g]


@pytest.fixture
def standard_body():
    # conv{(0,1),(1,0)} + theta_0, fully closed
    return closed_body([pt(0, 1), pt(1, 0)], THETA0_DIRS)


@pytest.fixture
def excluded_vertex_body():
    # vertex (1,0) and the downward ray below it are missing
    poly = hull([pt(0, 1), pt(1, 0)], THETA0_DIRS)
    assert poly.vertices == (pt(1, 0), pt(0, 1))
    return FlaggedBody2(poly, (False, True), (False, True, True))


@pytest.fixture
def closed_triangle():
    return closed_body([pt(0, 0), pt(1, 0), pt(0, 1)])


@pytest.fixture
def half_open_segment():
    # {(0,1),(1,0)]: the endpoint (0,1) is missing
    poly = hull([pt(0, 1), pt(1, 0)])
    assert poly.vertices == (pt(0, 1), pt(1, 0))
    return FlaggedBody2(poly, (False, True), (True,))
