from itertools import product

import pytest

from asymlat.body import DOWN, LEFT, FlaggedBody2, validate
from asymlat.formats import serialize_body
from asymlat.generate import generate, generate_bounded, nearest_contiguous, repair


def hamming(a, b):
    return sum(x != y for x, y in zip(a, b))


def contiguous(flags):
    idx = [i for i, f in enumerate(flags) if f]
    return not idx or idx[-1] - idx[0] + 1 == len(idx)


@pytest.mark.parametrize("flags, expected", [
    ([True, False, True], [True, True, True]),
    ([True, True, False, True, True], [True, True, True, True, True]),
    ([True, False, False, False, True], [True, False, False, False, False]),
    ([False, True, False], [False, True, False]),
    ([False, False], [False, False]),
])
def test_nearest_contiguous_examples(flags, expected):
    assert nearest_contiguous(flags) == expected


@pytest.mark.parametrize("n", range(1, 7))
def test_nearest_contiguous_is_optimal(n):
    for flags in product([False, True], repeat=n):
        got = nearest_contiguous(list(flags))
        assert contiguous(got)
        best = min(hamming(flags, c) for c in product([False, True], repeat=n) if contiguous(c))
        assert hamming(flags, got) == best


def test_repair_fixes_gapped_segment():
    from asymlat.body import hull, insert_points
    from asymlat.exact import pt
    from fractions import Fraction
    poly = insert_points(hull([pt(0, 0), pt(1, 0)]), [pt(Fraction(1, 2), 0)])
    K = repair(FlaggedBody2(poly, (True, False, True), (True, True)))
    assert validate(K) and all(K.vertex_flags)


def test_generate_is_seeded():
    a = [serialize_body(K) for K in generate(4, 50)]
    b = [serialize_body(K) for K in generate(4, 50)]
    c = [serialize_body(K) for K in generate(5, 50)]
    assert a == b and a != c


def test_generated_bodies_are_valid_with_allowed_recession_cones():
    for K in generate(0, 300):
        assert validate(K)
        dirs = set(K.closure.directions())
        assert dirs in (set(), {DOWN, LEFT}), dirs


def test_generated_flags_are_varied():
    bodies = generate(1, 300)
    assert any(K.is_fully_closed() for K in bodies)
    assert sum(not K.is_fully_closed() for K in bodies) > 100


def test_generate_bounded_kinds():
    sets = generate_bounded(0, 60)
    assert {K.dim for K in sets} == {0, 1, 2}
    assert all(validate(K) and K.closure.bounded for K in sets)
