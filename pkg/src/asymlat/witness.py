"""Cover witnesses: parametric q-open covers of a set with no finite subcover."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .exact import Point2

U_FAMILY = "U_FAMILY"
V_FAMILY = "V_FAMILY"
UV_FAMILY = "UV_FAMILY"
UNBOUNDED_X = "UNBOUNDED_X"
UNBOUNDED_Y = "UNBOUNDED_Y"

FAMILIES = (U_FAMILY, V_FAMILY, UV_FAMILY, UNBOUNDED_X, UNBOUNDED_Y)

COVER_TEXT = {
    U_FAMILY: "U_t = (-inf, x1 - t) x R, t > 0",
    V_FAMILY: "V_t = R x (-inf, y1 - t), t > 0",
    UV_FAMILY: "{U_t, V_t}, t > 0 with U_t = (-inf, x1 - t) x R, V_t = R x (-inf, y1 - t)",
    UNBOUNDED_X: "W_t = (-inf, t) x R, t > 0",
    UNBOUNDED_Y: "W_t = R x (-inf, t), t > 0",
}


class WitnessInvalid(ValueError):
    """The claimed cover does admit a finite subcover (or does not cover)."""


@dataclass(frozen=True)
class CoverWitness:
    """A q-open cover of ``K`` without a finite subcover.

    ``family`` picks the cover; ``anchor`` is the missing point ``(x1, y1)``
    (None for the unbounded families); ``condition`` names the failed check
    that produced the witness.
    """

    family: str
    anchor: Optional[Point2]
    condition: str
    narrative: str = ""

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown cover family {self.family!r}")
        if (self.anchor is None) != (self.family in (UNBOUNDED_X, UNBOUNDED_Y)):
            raise ValueError("anchor required exactly for the anchored families")

    def covers_point(self, t, z) -> bool:
        """Membership of ``z`` in the member(s) of the cover with parameter ``t``."""
        x1, y1 = (self.anchor.x, self.anchor.y) if self.anchor is not None else (None, None)
        if self.family == U_FAMILY:
            return z[0] < x1 - t
        if self.family == V_FAMILY:
            return z[1] < y1 - t
        if self.family == UV_FAMILY:
            return z[0] < x1 - t or z[1] < y1 - t
        if self.family == UNBOUNDED_X:
            return z[0] < t
        return z[1] < t
