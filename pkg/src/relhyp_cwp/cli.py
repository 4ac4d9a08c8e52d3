"""Command-line interface: ``relhyp-cwp <command> ...``.

Exit codes: 0 success, 2 parse or validation error, 3 no witness found,
4 decompression refused.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Optional

from .compressed_equality import slp_equal
from .program_extensions import cslp_to_slp
from .formats import ParseError, format_group, format_program, parse_constants_file, parse_group, parse_program
from .slp_core import ProgramError, Slp, TooLong, decompress, extract_substring, value_length

EXIT_OK, EXIT_INVALID, EXIT_NO_WITNESS, EXIT_TOO_LONG = 0, 2, 3, 4
DEFAULT_MAX_LEN = 10 ** 6


class Usage(Exception):
    pass


def _group(args, need_constants: bool = False):
    if args.group is None:
        if need_constants:
            raise Usage("this command needs a group file")
        return None
    ctx = parse_group(Path(args.group))
    if args.constants:
        ctx = ctx.with_constants(parse_constants_file(Path(args.constants)))
    if need_constants and ctx.constants is None:
        raise ProgramError("the group file has no constants line (run 'calibrate' first or pass --constants)")
    return ctx


def _program(path: str, ctx):
    return parse_program(Path(path), ctx)


def _as_slp(p, ctx) -> Slp:
    """Plain SLP with the same value (cuts and tethers evaluated when needed)."""
    if isinstance(p, Slp):
        return p
    if p.has_tethers():
        if ctx is None:
            raise Usage("programs with tethers need a group file")
        from .relhyp_pipeline.evaluate import Evaluator

        ev = Evaluator(ctx)
        return ev.forest.export(ev.node(p))
    return cslp_to_slp(p, ctx)


def _emit(args, text: str, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _write(args, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _tracer(args):
    if not args.trace_dir:
        return None
    d = Path(args.trace_dir)
    d.mkdir(parents=True, exist_ok=True)

    def trace(stage: str, prog) -> None:
        (d / f"{stage}.txt").write_text(format_program(prog), encoding="utf-8")

    return trace


# -- commands -----------------------------------------------------------------------
def cmd_cwp(args) -> int:
    from .relhyp_pipeline.build import prefilter, run_stages

    ctx = _group(args, need_constants=True)
    g = _as_slp(_program(args.program, ctx), ctx)
    t0 = time.perf_counter()
    report: dict = {"input_size": g.size()}
    if args.trace_dir:
        s, stages = run_stages(g, ctx, trace=_tracer(args))
        trivial = s.lengths()[s.start] == 0
        report.update(stages)
        report["decided_by"] = "normal form"
    elif not prefilter(g, ctx):
        trivial = False
        report["decided_by"] = "abelian image"
    elif len(ctx.factors) == 1:
        trivial = True
        report["decided_by"] = "abelian image"
    else:
        s, stages = run_stages(g, ctx, trace=_tracer(args))
        trivial = s.lengths()[s.start] == 0
        report.update(stages)
        report["decided_by"] = "normal form"
    report["time"] = time.perf_counter() - t0
    report["result"] = "trivial" if trivial else "nontrivial"
    lines = [report["result"], f"time {report['time']:.3f}s", f"input size {report['input_size']}"]
    for key in ("tcslp_size", "tslp_size", "nf_size"):
        if key in report:
            lines.append(f"{key.replace('_', ' ')} {report[key]}")
    _emit(args, "\n".join(lines), report)
    return EXIT_OK


def cmd_nf(args) -> int:
    from .relhyp_pipeline.build import run_stages

    ctx = _group(args, need_constants=True)
    g = _as_slp(_program(args.program, ctx), ctx)
    s, report = run_stages(g, ctx, trace=_tracer(args))
    text = format_program(s)
    if args.json:
        report["program"] = text
        print(json.dumps(report, sort_keys=True))
        if args.output:
            Path(args.output).write_text(text, encoding="utf-8")
    else:
        _write(args, text)
    return EXIT_OK


def cmd_eq(args) -> int:
    ctx = _group(args)
    g = _as_slp(_program(args.first, ctx), ctx)
    h = _as_slp(_program(args.second, ctx), ctx)
    same = slp_equal(g, h)
    _emit(args, "equal" if same else "unequal", {"equal": same})
    return EXIT_OK


def cmd_len(args) -> int:
    ctx = _group(args)
    n = value_length(_as_slp(_program(args.program, ctx), ctx))
    _emit(args, str(n), {"length": str(n)})
    return EXIT_OK


def cmd_cut(args) -> int:
    ctx = _group(args)
    p = _program(args.program, ctx)
    i, j = int(args.start), int(args.end)
    if args.compressed:
        if ctx is None:
            raise Usage("derived-word indices need a group file")
        from .relhyp_pipeline.roots import compressed_index_convert

        g = _as_slp(p, ctx)
        i, j = compressed_index_convert(g, i, j, ctx)
    else:
        g = _as_slp(p, ctx)
    n = value_length(g)
    if not 0 <= i <= j <= n:
        raise ProgramError(f"cut [{i}:{j}) outside [0:{n})")
    _write(args, format_program(extract_substring(g, i, j)))
    return EXIT_OK


def cmd_decompress(args) -> int:
    ctx = _group(args)
    g = _as_slp(_program(args.program, ctx), ctx)
    w = decompress(g, args.max_len if args.max_len is not None else DEFAULT_MAX_LEN)
    _emit(args, " ".join(w), {"word": list(w)})
    return EXIT_OK


def cmd_calibrate(args) -> int:
    from .oracle_harness import calibrate

    ctx = parse_group(Path(args.group))
    bundle = calibrate(ctx, max_word_len=args.max_word_len, seed=args.seed or 0)
    _write(args, format_group(ctx.with_constants(bundle)))
    return EXIT_OK


def cmd_bench(args) -> int:
    from .oracle_harness import random_slp
    from .relhyp_pipeline.build import run_stages

    ctx = _group(args, need_constants=True)
    sizes = [int(x) for x in args.sizes.split(",")]
    seed = args.seed or 0
    rows = []
    print("id,size,value_length,build_s,cut_elimination_s,tether_elimination_s,total_s")
    for size in sizes:
        for k in range(args.count):
            g = random_slp(ctx, seed + k, size, args.profile, max_len=args.value_limit)
            t0 = time.perf_counter()
            _, report = run_stages(g, ctx)
            total = time.perf_counter() - t0
            t = report["times"]
            row = [f"{size}-{k}", str(g.size()), str(value_length(g)), f"{t['build']:.4f}",
                   f"{t['cut_elimination']:.4f}", f"{t['tether_elimination']:.4f}", f"{total:.4f}"]
            rows.append(row)
            print(",".join(row), flush=True)
    return EXIT_OK


# -- parser -------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--trace-dir", help="dump intermediate programs into this directory")
    common.add_argument("--constants", help="file with a constants line overriding the group's")
    common.add_argument("--seed", type=int, default=None, help="random seed (calibrate, bench)")
    common.add_argument("--max-len", type=int, default=None, help="decompression limit")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(prog="relhyp-cwp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cwp", parents=[common], help="decide whether a program's value is trivial")
    p.add_argument("group")
    p.add_argument("program")
    p.set_defaults(func=cmd_cwp)

    p = sub.add_parser("nf", parents=[common], help="write an SLP for the normal form")
    p.add_argument("group")
    p.add_argument("program")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("eq", parents=[common], help="compare the values of two programs")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--group")
    p.set_defaults(func=cmd_eq)

    p = sub.add_parser("len", parents=[common], help="print the value length")
    p.add_argument("program")
    p.add_argument("--group")
    p.set_defaults(func=cmd_len)

    p = sub.add_parser("cut", parents=[common], help="write a program for a subword of the value")
    p.add_argument("program")
    p.add_argument("start")
    p.add_argument("end")
    p.add_argument("--group")
    p.add_argument("--compressed", action="store_true", help="indices refer to the derived word")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_cut)

    p = sub.add_parser("decompress", parents=[common], help="print the value")
    p.add_argument("program")
    p.add_argument("--group")
    p.set_defaults(func=cmd_decompress)

    p = sub.add_parser("calibrate", parents=[common], help="measure constants and write a group file")
    p.add_argument("group")
    p.add_argument("--max-word-len", type=int, default=8)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("bench", parents=[common], help="time the pipeline on random programs (CSV)")
    p.add_argument("group")
    p.add_argument("--sizes", default="64,128,256,512,1024,2048,4096")
    p.add_argument("--count", type=int, default=3)
    p.add_argument("--profile", default="balanced")
    p.add_argument("--value-limit", type=int, default=10 ** 60)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[list] = None) -> int:
    from .relhyp_pipeline.witness import NoWitnessFound

    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "group"):
        args.group = None
    try:
        return args.func(args)
    except TooLong as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LONG
    except NoWitnessFound as exc:
        print(f"error: {exc} (variable {exc.variable}, radius {exc.radius}, data {exc.data})", file=sys.stderr)
        return EXIT_NO_WITNESS
    except (ParseError, ProgramError, Usage, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
