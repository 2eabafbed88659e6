"""Command-line interface: ``complexmerge {merge,validate,gen,bench,info}``.

Exit status: 0 success, 1 validation failure, 2 input/schema error,
3 internal invariant violation. Errors go to stderr as
``complexmerge: error[CODE]: message``.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .bench import format_table, rows_to_json, run_benchmark
from .congruence import ENGINES, chain_congruence
from .errors import MergeError, ParameterError
from .generate import make_cube, make_grid, parse_grid
from .validation import validate_quotient
from .vertex import DEFAULT_EPSILON, check_epsilon

PROG = "complexmerge"


def _fail(code: str, msg: str, status: int) -> int:
    print(f"{PROG}: error[{code}]: {msg}", file=sys.stderr)
    return status


def cmd_merge(args) -> int:
    acc = io.load_complex(args.input)
    q = chain_congruence(
        acc, args.epsilon, engine=args.engine, self_check=args.self_check, threads=args.threads
    )
    io.save_quotient(q, args.output)
    nv, ne, nf = q.counts
    print(f"merged {acc.counts[0]} vertex instances into V={nv} E={ne} F={nf} -> {args.output}")
    return 0


def cmd_validate(args) -> int:
    q = io.load_quotient(args.quotient)
    report = validate_quotient(q, euler_expected=args.expect_euler)
    if args.output:
        io.save_report(report, args.output)
    else:
        sys.stdout.write(io.dumps(io.report_to_dict(report)))
    for v in report.violations:
        print(f"{PROG}: violation: {v}", file=sys.stderr)
    return 0 if report.ok else 1


def cmd_gen(args) -> int:
    if args.kind == "cube":
        acc = make_cube(jitter=args.jitter, seed=args.seed, epsilon=args.epsilon)
    else:
        acc = make_grid(parse_grid(args.grid), jitter=args.jitter, seed=args.seed, epsilon=args.epsilon)
    io.save_complex(acc, args.output)
    nv, ne, nf = acc.counts
    print(f"wrote {args.kind} accumulator with {nv} vertex instances, {ne} edges, {nf} faces -> {args.output}")
    return 0


def cmd_bench(args) -> int:
    shapes = [parse_grid(g) for g in (args.grid or ["2"])]
    if args.reps < 1:
        raise ParameterError("--reps must be >= 1")
    rows = run_benchmark(shapes, reps=args.reps, seed=args.seed, jitter=args.jitter, epsilon=args.epsilon)
    table = format_table(rows)
    sys.stdout.write(table)
    if args.output:
        out = Path(args.output)
        out.write_text(table, encoding="utf-8")
        out.with_suffix(".json").write_text(io.dumps(rows_to_json(rows)), encoding="utf-8")
    return 0


def cmd_info(args) -> int:
    obj = io.read_json(args.path)
    if isinstance(obj, dict) and "ev" in obj:
        q = io.quotient_from_dict(obj, args.path)
        info = {
            "kind": "quotient",
            "engine": q.engine,
            "counts": dict(zip(("vertices", "edges", "faces"), q.counts)),
            "source_counts": dict(zip(("vertices", "edges", "faces"), q.source_counts)),
            "dropped": {"edges": len(q.dropped_edges), "faces": len(q.dropped_faces)},
            "signed": q.delta0 is not None,
        }
    else:
        acc = io.complex_from_dict(obj, args.path)
        info = {
            "kind": "accumulator",
            "counts": dict(zip(("vertices", "edges", "faces"), acc.counts)),
            "nnz": {"delta0": acc.delta0.nnz, "delta1": acc.delta1.nnz},
        }
    print(json.dumps(info, indent=2, sort_keys=True))
    return 0


def _positive_float(text: str) -> float:
    try:
        return check_epsilon(float(text))
    except (ValueError, MergeError) as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _count(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=PROG, description="Merge local chain complexes by epsilon-congruence.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--epsilon", type=_positive_float, default=DEFAULT_EPSILON)
    common.add_argument("--threads", type=int, default=None, help="worker hint; output does not depend on it")

    p = sub.add_parser("merge", parents=[common], help="merge an accumulator complex")
    p.add_argument("input")
    p.add_argument("--output", "-o", required=True)
    p.add_argument("--engine", choices=ENGINES, default="sparse")
    p.add_argument("--no-self-check", dest="self_check", action="store_false")
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("validate", help="check a merged complex")
    p.add_argument("quotient")
    p.add_argument("--output", "-o", help="write the JSON report here instead of stdout")
    p.add_argument("--expect-euler", type=int, default=None, help="advisory expected Euler characteristic")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("gen", parents=[common], help="generate an exploded accumulator fixture")
    p.add_argument("kind", choices=("cube", "grid"))
    p.add_argument("--grid", default="1x1x1", help="N or PxQxR (grid kind only)")
    p.add_argument("--jitter", type=float, default=0.0)
    p.add_argument("--seed", type=_count, default=0)
    p.add_argument("--output", "-o", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", parents=[common], help="time both engines on generated grids")
    p.add_argument("--grid", action="append", help="N or PxQxR; repeatable (default 2)")
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--seed", type=_count, default=0)
    p.add_argument("--jitter", type=float, default=0.0)
    p.add_argument("--output", "-o", help="table path; a .json twin is written alongside")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("info", help="summarize a complex or quotient file")
    p.add_argument("path")
    p.set_defaults(func=cmd_info)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except MergeError as e:
        return _fail(e.code, str(e), e.exit_status)
    except OSError as e:
        return _fail("IO", str(e), 2)


if __name__ == "__main__":
    sys.exit(main())
