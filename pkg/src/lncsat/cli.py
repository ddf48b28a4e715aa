"""Command-line front end: encode, solve, verify, antipodal."""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import encoder
from .antipodal import ConstructionError, verify_antipodal
from .dynamics import (
    BooleanMap,
    attractors,
    distance_to_fixed_point,
    fixed_points,
    read_map,
    reachable_non_fixed_within,
    state_to_bits,
    write_map,
)
from .external import SOLVER_ENV, ExternalSolverError, external_solve
from .regulatory import find_local_negative_circuit
from .solver import SAT, UNSAT, SolverIntegrityError, decode_model, solve

EXIT_SAT = 10
EXIT_UNSAT = 20
EXIT_UNKNOWN = 1
EXIT_USAGE = 2
EXIT_INTEGRITY = 3


def build_formula(question: str, n: int, k: Optional[int]) -> encoder.CnfFormula:
    if n < 1:
        raise ValueError("n must be >= 1")
    if question == "q2":
        return encoder.build_q2(n)
    if k is None or k < 1:
        raise ValueError("q1 needs --k >= 1")
    return encoder.build_q1(n, k)


def summary_lines(formula: encoder.CnfFormula) -> list[str]:
    lines = [f"variables: {formula.n_vars}"]
    lines += [f"{tag}: {count}" for tag, count in formula.block_counts().items()]
    lines.append(f"total: {formula.n_clauses}")
    return lines


def check_counterexample(f: BooleanMap, question: str, k: Optional[int]) -> list[str]:
    """Semantic re-check of a decoded Q1/Q2 model; returns the list of violated properties."""
    problems = []
    witness = find_local_negative_circuit(f)
    if witness is not None:
        x, c = witness
        problems.append(f"local negative circuit {c} at {state_to_bits(x, f.n)}")
    if not f.component(1, 0):
        problems.append("f_1(0) is not 1")
    if question == "q2" and fixed_points(f):
        problems.append("map has fixed points")
    if question == "q1" and not reachable_non_fixed_within(f, 0, k):
        problems.append(f"a fixed point is reachable from the origin within {k} steps")
    return problems


def analysis_lines(f: BooleanMap) -> list[str]:
    n = f.n
    fps = sorted(fixed_points(f))
    lines = [f"n = {n}"]
    lines.append("fixed points: " + (", ".join(state_to_bits(x, n) for x in fps) or "none"))
    atts = attractors(f)
    lines.append(f"attractors: {len(atts)}")
    for att in atts:
        members = ", ".join(state_to_bits(x, n) for x in sorted(att.states))
        lines.append(f"  {att.kind} ({len(att)} states): {members}")
    witness = find_local_negative_circuit(f)
    if witness is None:
        lines.append("local negative circuit: none")
    else:
        x, c = witness
        lines.append(f"local negative circuit: {' -> '.join(map(str, c + c[:1]))} at state {state_to_bits(x, n)}")
    dist = distance_to_fixed_point(f, 0)
    if dist is None:
        lines.append("no fixed point reachable from the origin")
    else:
        lines.append(f"nearest fixed point from the origin: {dist} steps (condition fails from k = {dist})")
    return lines


def cmd_encode(args) -> int:
    formula = build_formula(args.question, args.n, args.k)
    if args.output:
        encoder.save_dimacs(formula, args.output, comments=args.comments)
        out = sys.stdout
    else:
        encoder.write_dimacs(formula, sys.stdout, comments=args.comments)
        out = sys.stderr
    for line in summary_lines(formula):
        print(line, file=out)
    return 0


def cmd_solve(args) -> int:
    if args.cnf:
        formula = encoder.load_dimacs(args.cnf)
    elif args.question and args.n:
        formula = build_formula(args.question, args.n, args.k)
    else:
        print("solve needs --cnf or --question with --n", file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.external is not None:
            result = external_solve(formula, args.external or None, proof_path=args.proof, timeout=args.time_limit)
        else:
            result = solve(formula, max_conflicts=args.max_conflicts, time_limit=args.time_limit, seed=args.seed)
    except SolverIntegrityError as exc:
        print(f"solver integrity error: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except ExternalSolverError as exc:
        print(f"external solver error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    print(result.verdict)
    if result.stats:
        print(" ".join(f"{key}={value}" for key, value in result.stats.items()))
    if result.verdict == UNSAT:
        return EXIT_UNSAT
    if result.verdict != SAT:
        return EXIT_UNKNOWN

    n = _dimension_of(formula.n_vars)
    if n is None:
        return EXIT_SAT
    f = decode_model(result.model, n)
    if args.question:
        problems = check_counterexample(f, args.question, args.k)
        if problems:
            for p in problems:
                print(f"model verification failed: {p}", file=sys.stderr)
            return EXIT_INTEGRITY
        print("model verified: no local negative circuit")
    if args.model_out:
        write_map(f, args.model_out)
        print(f"map written to {args.model_out}")
    else:
        sys.stdout.write(f.to_text())
    return EXIT_SAT


def _dimension_of(n_vars: int) -> Optional[int]:
    for n in range(1, 17):
        if n << n == n_vars:
            return n
    return None


def cmd_verify(args) -> int:
    f = read_map(args.map)
    print("\n".join(analysis_lines(f)))
    return 0


def cmd_antipodal(args) -> int:
    if args.n < 6:
        print(f"antipodal construction needs n >= 6, got {args.n}", file=sys.stderr)
        return EXIT_USAGE
    try:
        report = verify_antipodal(args.n)
    except ConstructionError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    if args.output and report.map is not None:
        write_map(report.map, args.output)
    print("\n".join(report.lines()))
    return 0 if report.passed else 1


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lncsat", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="write a Q1/Q2 instance in DIMACS CNF")
    p.add_argument("--question", choices=("q1", "q2"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("-o", "--output")
    p.add_argument("--comments", action="store_true", help="emit 'c block' provenance lines")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("solve", help="solve a generated instance or a DIMACS file")
    p.add_argument("--cnf")
    p.add_argument("--question", choices=("q1", "q2"))
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument(
        "--external",
        nargs="?",
        const="",
        help=f"external solver command ({{cnf}}/{{proof}} placeholders); bare flag uses ${SOLVER_ENV}",
    )
    p.add_argument("--proof", help="path substituted for {proof} in the external command")
    p.add_argument("--max-conflicts", type=int)
    p.add_argument("--time-limit", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--model-out", help="where to write the decoded map when SAT")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="analyse a map file")
    p.add_argument("map")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("antipodal", help="build and check the antipodal-cycle map")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_antipodal)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
