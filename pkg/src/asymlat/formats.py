"""JSON encodings for bodies, decompositions, witnesses and analysis reports.

Rationals are strings ``"p/q"`` or ``"p"``; negative infinity is ``"-inf"``.
The schemas live in ``schemas/v1/`` at the repository root.
"""
from __future__ import annotations

import json
import re

from .analyzer import Decomposition, Extrema, Landmarks, Verdict
from .body import ClosedPoly2, FlaggedBody2, canonicalize, validate
from .exact import NEG_INF, Point2, fmt, parse_extended, parse_rational
from .witness import COVER_TEXT, CoverWitness

SCHEMA_VERSION = 1


class ParseError(ValueError):
    pass


class ValidationError(ValueError):
    def __init__(self, invariant: str, message: str):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


def _pair(p) -> list:
    return [fmt(p[0]), fmt(p[1])]


def body_to_json(K: FlaggedBody2) -> dict:
    c = K.closure
    if c.ray_in is not None:
        rays = [_pair(c.ray_in), _pair(c.ray_out)]
    elif c.ray_out is not None:
        rays = [_pair(c.ray_out)]
    else:
        rays = []
    return {
        "vertices": [_pair(p) for p in c.vertices],
        "rays": rays,
        "vertex_flags": list(K.vertex_flags),
        "edge_flags": list(K.edge_flags),
    }


def _rational_at(value, where: str):
    try:
        return parse_rational(value)
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from None


def _points(doc, key: str) -> list:
    raw = doc.get(key, [])
    if not isinstance(raw, list):
        raise ParseError(f"{key}: expected a list")
    out = []
    for i, p in enumerate(raw):
        if not isinstance(p, list) or len(p) != 2:
            raise ParseError(f"{key}[{i}]: expected a pair of rationals")
        out.append(Point2(_rational_at(p[0], f"{key}[{i}][0]"), _rational_at(p[1], f"{key}[{i}][1]")))
    return out


def _flags(doc, key: str) -> list:
    raw = doc.get(key)
    if not isinstance(raw, list) or not all(isinstance(f, bool) for f in raw):
        raise ParseError(f"{key}: expected a list of booleans")
    return raw


def body_from_json(doc) -> FlaggedBody2:
    """Build and validate a body from a decoded JSON object."""
    if not isinstance(doc, dict):
        raise ParseError("body: expected an object")
    verts = _points(doc, "vertices")
    rays = _points(doc, "rays")
    vflags, eflags = _flags(doc, "vertex_flags"), _flags(doc, "edge_flags")
    if not verts:
        raise ValidationError("nonempty", "a body needs at least one vertex")
    if len(rays) > 2:
        raise ValidationError("structure", "at most two rays")
    try:
        if len(rays) == 2:
            poly = ClosedPoly2(tuple(verts), rays[0], rays[1])
        elif len(rays) == 1:
            poly = ClosedPoly2(tuple(verts), None, rays[0])
        else:
            poly = ClosedPoly2(tuple(verts))
        K = FlaggedBody2(poly, tuple(vflags), tuple(eflags))
    except ValueError as exc:
        raise ValidationError("structure", str(exc)) from None
    if not validate(K):
        raise ValidationError("R1", "included faces on a collinear boundary chain are not contiguous "
                                    "(or nothing is included)")
    return K


def parse_body(text: str) -> FlaggedBody2:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return body_from_json(doc)


def serialize_body(K: FlaggedBody2) -> str:
    """Canonical text form: equal sets serialize to identical strings."""
    return dumps(body_to_json(canonicalize(K)))


def decomposition_to_json(d: Decomposition) -> dict:
    return {
        "case": d.case,
        "u": fmt(d.u), "v": fmt(d.v),
        "alpha": fmt(d.alpha) if d.alpha is not None else None,
        "beta": fmt(d.beta) if d.beta is not None else None,
        "s0": fmt(d.s0), "t0": fmt(d.t0),
        "left_end_included": d.left_end_included,
        "bottom_end_included": d.bottom_end_included,
        "k0": body_to_json(d.k0) if d.k0 is not None else None,
    }


def decomposition_from_json(doc: dict) -> Decomposition:
    try:
        k0 = FlaggedBody2(ClosedPoly2(tuple(_points(doc["k0"], "vertices"))),
                          tuple(doc["k0"]["vertex_flags"]),
                          tuple(doc["k0"]["edge_flags"])) if doc.get("k0") else None
        return Decomposition(
            case=int(doc["case"]), u=parse_rational(doc["u"]), v=parse_rational(doc["v"]),
            s0=parse_extended(doc["s0"]), t0=parse_extended(doc["t0"]),
            left_end_included=bool(doc["left_end_included"]),
            bottom_end_included=bool(doc["bottom_end_included"]),
            alpha=parse_rational(doc["alpha"]) if doc.get("alpha") is not None else None,
            beta=parse_rational(doc["beta"]) if doc.get("beta") is not None else None,
            k0=k0,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"decomposition: {exc}") from None


def witness_to_json(w: CoverWitness) -> dict:
    return {
        "family": w.family,
        "anchor": _pair(w.anchor) if w.anchor is not None else None,
        "condition": w.condition,
        "cover": COVER_TEXT[w.family],
        "narrative": w.narrative,
    }


def extrema_to_json(e: Extrema) -> dict:
    return {
        "u": fmt(e.u), "v": fmt(e.v), "alpha": fmt(e.alpha), "beta": fmt(e.beta),
        "u_attained": e.u_attained, "v_attained": e.v_attained,
        "corner_left": _pair(e.corner_left), "corner_right": _pair(e.corner_right),
        "corner_left_included": e.left_in, "corner_right_included": e.right_in,
    }


def landmarks_to_json(lm: Landmarks) -> dict:
    return {
        "delta": body_to_json(lm.delta),
        "s": body_to_json(lm.s),
        "r": body_to_json(lm.r),
        "f": [_pair(p) for p in lm.f],
        "h_line": [fmt(x) for x in lm.h_line] if lm.h_line is not None else None,
    }


def report_to_json(K: FlaggedBody2, verdict: Verdict) -> dict:
    return {
        "version": SCHEMA_VERSION,
        "input": body_to_json(K),
        "verdict": verdict.status,
        "reduced_to_saturation": verdict.reduced,
        "analyzed_body": body_to_json(verdict.body) if verdict.body is not None else None,
        "extrema": extrema_to_json(verdict.extrema) if verdict.extrema else None,
        "landmarks": landmarks_to_json(verdict.landmarks) if verdict.landmarks else None,
        "decomposition": decomposition_to_json(verdict.decomposition) if verdict.decomposition else None,
        "center": body_to_json(verdict.center) if verdict.center is not None else None,
        "witness": witness_to_json(verdict.witness) if verdict.witness else None,
        "checks": [{"name": name, "passed": ok} for name, ok in verdict.checks],
    }


_SCALAR_LIST = re.compile(r"\[\s*((?:\"[^\"]*\"|true|false|null|-?\d+)(?:,\s*(?:\"[^\"]*\"|true|false|null|-?\d+))*)\s*\]")


def dumps(doc) -> str:
    """Indented JSON with scalar-only lists kept on one line."""
    text = json.dumps(doc, indent=2)
    text = _SCALAR_LIST.sub(lambda m: "[" + re.sub(r",\s+", ", ", m.group(1)) + "]", text)
    return text + "\n"


__all__ = [
    "NEG_INF", "ParseError", "ValidationError", "body_from_json", "body_to_json",
    "decomposition_from_json", "decomposition_to_json", "dumps", "parse_body",
    "report_to_json", "serialize_body", "witness_to_json",
]
