"""Command line interface: ``ftaroots roots|critical|trace|check``.

Exit codes: 0 success, 1 invalid input, 2 solver or oracle-check failure,
3 output file not writable.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from .critical import critical_structure
from .errors import RootFindingError, SolveFailed, TargetCritical
from .oracle import OracleConfig, match_multisets, weierstrass_roots
from .errors import OracleDiverged
from .poly import monicize, random_monic
from .report import (
    ParseError,
    critical_document,
    parse_coefficients,
    result_document,
    trace_document,
    trace_svg,
)
from .solver import multiple_roots, solve_all, solve_callback_adapter, trace_one
from .tracker import TrackerConfig

EXIT_OK, EXIT_INPUT, EXIT_SOLVE, EXIT_OUTPUT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _dump(doc, pretty: bool) -> str:
    if pretty:
        return json.dumps(doc, indent=2, ensure_ascii=False)
    return json.dumps(doc, separators=(",", ":"), ensure_ascii=False)


def cmd_roots(args) -> int:
    P = parse_coefficients(args.coeffs)
    try:
        result = solve_all(P, seed=args.seed, cfg=TrackerConfig())
    except RootFindingError as exc:
        print(f"solve failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SOLVE
    print(_dump(result_document(P, result), args.pretty))
    return EXIT_OK


def cmd_critical(args) -> int:
    P = parse_coefficients(args.coeffs)
    try:
        cs = critical_structure(monicize(P), solve_callback_adapter(args.seed))
    except RootFindingError as exc:
        print(f"solve failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SOLVE
    print(_dump(critical_document(P, cs), args.pretty))
    return EXIT_OK


def cmd_trace(args) -> int:
    P = parse_coefficients(args.coeffs)
    M = monicize(P)
    try:
        cs = critical_structure(M, solve_callback_adapter(args.seed))
        try:
            tracked = trace_one(M, args.seed, TrackerConfig(), cs)
            root = tracked.root
        except (TargetCritical, SolveFailed):
            found = multiple_roots(M, cs) or multiple_roots(M, cs, 1e-6)
            if not found:
                raise
            tracked, root = None, found[0][0]
    except RootFindingError as exc:
        print(f"solve failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SOLVE
    outputs = [(args.out_json, _dump(trace_document(P, args.seed, tracked, cs, root), True) + "\n")]
    if args.out_svg:
        outputs.append((args.out_svg, trace_svg(tracked, cs, root)))
    for path, text in outputs:
        try:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"cannot write {path}: {exc}", file=sys.stderr)
            return EXIT_OUTPUT
    return EXIT_OK


def cmd_check(args) -> int:
    if args.degree < 1:
        print("error: degree must be ≥ 1", file=sys.stderr)
        return EXIT_INPUT
    if args.count < 1:
        print("error: count must be ≥ 1", file=sys.stderr)
        return EXIT_INPUT
    rng = np.random.default_rng(args.seed)
    matched = compared = 0
    skipped: list[int] = []
    worst = 0.0
    for i in range(args.count):
        P = random_monic(args.degree, rng)
        try:
            oracle = weierstrass_roots(P, OracleConfig())
        except OracleDiverged:
            skipped.append(i)
            print(f"instance {i}: oracle diverged, skipped")
            continue
        compared += 1
        try:
            found = solve_all(P, seed=args.seed).flat()
        except RootFindingError as exc:
            print(f"instance {i}: solve failed ({type(exc).__name__})")
            continue
        ok, dist = match_multisets(found, oracle, args.tol)
        worst = max(worst, dist)
        matched += ok
        print(f"instance {i}: distance {dist:.3e}{'' if ok else '  MISMATCH'}")
    if skipped:
        print(f"skipped {len(skipped)} oracle-diverged instance(s): {skipped}")
    print(f"matched {matched}/{compared}, max_distance {worst:.3e}")
    return EXIT_OK if matched == compared else EXIT_SOLVE


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ftaroots", description="Polynomial roots by continuation through regular values.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_coeffs(p):
        p.add_argument("--coeffs", required=True, help='ascending coefficients "a0,a1,...,an"; complex as 1.5-2i')
        p.add_argument("--seed", type=_seed, default=0)

    p = sub.add_parser("roots", help="all roots with multiplicities (JSON)")
    with_coeffs(p)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", help="compact JSON (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", help="indented JSON")
    p.set_defaults(func=cmd_roots, pretty=False)

    p = sub.add_parser("critical", help="critical points and critical values (JSON)")
    with_coeffs(p)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("trace", help="write one tracked path as JSON and optionally SVG")
    with_coeffs(p)
    p.add_argument("--out-json", required=True)
    p.add_argument("--out-svg")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("check", help="cross-check the solver against the Weierstrass oracle")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_check)
    return parser


def _attach_values(argv: Sequence[str]) -> list[str]:
    # "--coeffs -1,0,1" would otherwise be read as an unknown option
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok == "--coeffs":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--coeffs={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_attach_values(argv))
    except SystemExit as exc:  # usage errors and --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
