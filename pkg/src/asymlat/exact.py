"""Exact scalar and point arithmetic.

Every scalar in the package is a :class:`fractions.Fraction`; nothing is ever
rounded.  ``NEG_INF`` is the only non-rational value and only ever shows up as
the lower end of a boundary segment that runs off to infinity.
"""
from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import NamedTuple, Union

Rational = Fraction


@total_ordering
class _NegInf:
    """Negative infinity, ordered strictly below every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("-inf")

    def __repr__(self):
        return "NEG_INF"

    def __reduce__(self):
        return (_NegInf, ())


NEG_INF = _NegInf()

ExtendedScalar = Union[Fraction, _NegInf]


def is_neg_inf(value) -> bool:
    return value is NEG_INF


class Point2(NamedTuple):
    x: Fraction
    y: Fraction

    def __add__(self, other):  # type: ignore[override]
        return Point2(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point2(self.x - other[0], self.y - other[1])

    def __neg__(self):
        return Point2(-self.x, -self.y)

    def scale(self, a) -> "Point2":
        return Point2(self.x * a, self.y * a)

    def __repr__(self):
        return f"({fmt(self.x)}, {fmt(self.y)})"


class Point3(NamedTuple):
    x1: Fraction
    x2: Fraction
    x3: Fraction

    def dot(self, other) -> Fraction:
        return self.x1 * other[0] + self.x2 * other[1] + self.x3 * other[2]

    def __sub__(self, other):
        return Point3(self.x1 - other[0], self.x2 - other[1], self.x3 - other[2])


ORIGIN = Point2(Fraction(0), Fraction(0))


def frac(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: they would smuggle rounding into the kernel.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"not an exact rational: {value!r}")


def pt(x, y) -> Point2:
    return Point2(frac(x), frac(y))


def pt3(x1, x2, x3) -> Point3:
    return Point3(frac(x1), frac(x2), frac(x3))


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; zero denominators and decimals are rejected."""
    if not isinstance(text, str):
        raise ValueError(f"rational must be a string, got {text!r}")
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def fmt(value) -> str:
    """Serialize a rational as ``"p/q"`` or ``"p"``; ``NEG_INF`` as ``"-inf"``."""
    if value is NEG_INF:
        return "-inf"
    value = frac(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_extended(text: str) -> ExtendedScalar:
    if isinstance(text, str) and text.strip() == "-inf":
        return NEG_INF
    return parse_rational(text)


def pos_part(v: Point2) -> Point2:
    """Coordinatewise ``max(v, 0)``."""
    return Point2(max(v.x, Fraction(0)), max(v.y, Fraction(0)))


def dominates(a: Point2, b: Point2) -> bool:
    """True iff ``a <= b`` coordinatewise."""
    return a.x <= b.x and a.y <= b.y


def cross(a, b) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def dot(a, b) -> Fraction:
    return a[0] * b[0] + a[1] * b[1]


def orient(p, q, r) -> Fraction:
    """Twice the signed area of ``p, q, r``; positive for a left turn."""
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def circle_point(t) -> Point2:
    """Rational point of the unit circle, ``t`` in ``(0, 1]``.

    Returns ``((1 - t^2)/(1 + t^2), 2t/(1 + t^2))``; the first coordinate is in
    ``[0, 1)``.
    """
    t = frac(t)
    if not (0 < t <= 1):
        raise ValueError(f"circle parameter must lie in (0, 1], got {fmt(t)}")
    d = 1 + t * t
    return Point2((1 - t * t) / d, 2 * t / d)
