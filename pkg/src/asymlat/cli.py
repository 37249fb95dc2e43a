"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 internal invariant violation.
All diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .analyzer import NotCompact, UnboundedAbove, decide
from .formats import (
    ParseError, ValidationError, body_to_json, decomposition_to_json, dumps, parse_body,
    report_to_json,
)
from .generate import generate
from .norms import LatticeNorm2
from .oracle import demo_3d, oracle_suite
from .svg import render_svg

COMMANDS = ("analyze", "decompose", "certify", "render", "demo3d", "gen")
EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2


class InputError(Exception):
    pass


class InvariantViolation(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input_path: Optional[Path] = None
    output_path: Optional[Path] = None
    norm_path: Optional[Path] = None
    seed: int = 0
    count: int = 1
    sample_count: int = 10_000


def _read(path: Optional[Path]) -> str:
    if path is None:
        raise InputError("--input is required for this command")
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_body(cfg: RunConfig):
    try:
        return parse_body(_read(cfg.input_path))
    except ParseError as exc:
        raise InputError(f"PARSE_ERROR {exc}") from None
    except ValidationError as exc:
        raise InputError(f"VALIDATION_ERROR {exc}") from None


def _load_norm(cfg: RunConfig):
    if cfg.norm_path is None:
        return None
    try:
        return LatticeNorm2.from_json(json.loads(_read(cfg.norm_path)))
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"norm: {exc}") from None


def _analyze(cfg: RunConfig):
    K = _load_body(cfg)
    norm = _load_norm(cfg)
    try:
        verdict = decide(K)
    except UnboundedAbove as exc:
        raise InputError(str(exc)) from None
    return K, norm, verdict


def _report(K, norm, verdict) -> dict:
    doc = report_to_json(K, verdict)
    if norm is not None:
        doc["norm"] = norm.to_json()
    return doc


def cmd_analyze(cfg: RunConfig) -> str:
    return dumps(_report(*_analyze(cfg)))


def cmd_decompose(cfg: RunConfig) -> str:
    K, _, verdict = _analyze(cfg)
    if verdict.decomposition is None:
        raise InputError(f"{verdict.status}: the set has no decomposition "
                         f"(failed check {verdict.witness.condition})")
    return dumps(decomposition_to_json(verdict.decomposition))


def cmd_certify(cfg: RunConfig) -> str:
    K, norm, verdict = _analyze(cfg)
    doc = _report(K, norm, verdict)
    suite = oracle_suite(K, verdict.decomposition, verdict.witness,
                         samples=cfg.sample_count, seed=cfg.seed)
    doc["oracle"] = suite
    doc["agreement"] = suite["compact"] == verdict.compact
    text = dumps(doc)
    if not doc["agreement"]:
        raise InvariantViolation("analyzer and oracle disagree", text)
    if verdict.witness is not None and not suite["witness_valid"]:
        raise InvariantViolation("cover witness failed validation", text)
    return text


def cmd_render(cfg: RunConfig) -> str:
    K = _load_body(cfg)
    try:
        verdict = decide(K)
        return render_svg(K, verdict.landmarks, verdict.extrema)
    except UnboundedAbove:
        return render_svg(K)


def cmd_demo3d(cfg: RunConfig) -> str:
    n = cfg.count
    params = [Fraction(k, n + 1) for k in range(1, n + 1)] + [Fraction(1)]
    try:
        result = demo_3d(params)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if not result["not_strongly_q_compact"]:
        raise InvariantViolation("a support-functional certificate failed", dumps(result))
    return dumps(result)


def cmd_gen(cfg: RunConfig) -> str:
    bodies = generate(cfg.seed, cfg.count)
    return dumps({"seed": cfg.seed, "count": cfg.count, "bodies": [body_to_json(K) for K in bodies]})


HANDLERS = {
    "analyze": cmd_analyze, "decompose": cmd_decompose, "certify": cmd_certify,
    "render": cmd_render, "demo3d": cmd_demo3d, "gen": cmd_gen,
}


def run(cfg: RunConfig) -> int:
    """Execute one command; returns the process exit code."""
    if cfg.command not in HANDLERS:
        print(f"error: unknown command {cfg.command!r}", file=sys.stderr)
        return EXIT_INPUT
    if cfg.count <= 0 or cfg.sample_count <= 0:
        print("error: --count and --samples must be positive", file=sys.stderr)
        return EXIT_INPUT
    code = EXIT_OK
    try:
        text = HANDLERS[cfg.command](cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc.args[0]}", file=sys.stderr)
        text, code = exc.args[1], EXIT_INTERNAL
    except (AssertionError, NotCompact) as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if cfg.output_path is None:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:
            sys.stderr.close()
    else:
        Path(cfg.output_path).write_text(text)
    return code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="asymlat", description="Compactness of convex sets in (R^2, q).")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", type=Path, help="body JSON file")
    p.add_argument("--norm", type=Path, help="norm JSON file (recorded in reports)")
    p.add_argument("--output", type=Path, help="output file (default: stdout)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=None,
                   help="bodies for gen (default 1), arc samples for demo3d (default 120)")
    p.add_argument("--samples", type=int, default=10_000, help="cross-check samples for certify")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    count = args.count if args.count is not None else (120 if args.command == "demo3d" else 1)
    cfg = RunConfig(args.command, args.input, args.output, args.norm, args.seed, count, args.samples)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
