"""Command-line entry point.

Subcommands: parse, typecheck, run, translate, cosim, bench. Primary output
goes to stdout, diagnostics to stderr as ``file:line:col: message`` (or JSON
lines with ``--json``). Exit codes: 0 success, 1 diagnostics or
correspondence mismatch, 2 usage error.

The dialect is detected from the file extension (.fg / .fgg) and can be
overridden with ``--lang``; .fg files parse in the extended dialect by
default so translator output runs unchanged, ``--dialect core`` restricts
to core FG.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bench, cosim, dicttrans, erasure, reduce, syntax, typecheck
from .parser import ParseError, parse_program


def _detect_lang(path: str, lang: str | None, dialect: str) -> str:
    if lang == "fg":
        return "fg" if dialect == "core" else "fg-ext"
    if lang == "fgg":
        return "fgg"
    if path.endswith(".fgg"):
        return "fgg"
    return "fg" if dialect == "core" else "fg-ext"


def _emit_diags(diags, path: str, as_json: bool) -> None:
    for d in diags:
        if as_json:
            print(
                json.dumps(
                    {"file": path, "line": d.line, "col": d.col, "severity": d.severity, "message": d.message}
                ),
                file=sys.stderr,
            )
        else:
            print(d.render(path), file=sys.stderr)


def _load(path: str, lang: str, as_json: bool):
    if path == "-":
        source = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            source = fh.read()
    try:
        return parse_program(source, lang)
    except ParseError as ex:
        _emit_diags(ex.diagnostics, path, as_json)
        raise SystemExit(1)


def _typecheck(program, lang: str):
    if lang == "fgg":
        return typecheck.fgg_typecheck_program(program)
    return typecheck.fg_typecheck_program(program, "core" if lang == "fg" else "extended")


def cmd_parse(args) -> int:
    lang = _detect_lang(args.file, args.lang, args.dialect)
    program = _load(args.file, lang, args.json)
    sys.stdout.write(syntax.pretty_print(program))
    return 0


def cmd_typecheck(args) -> int:
    lang = _detect_lang(args.file, args.lang, args.dialect)
    program = _load(args.file, lang, args.json)
    diags = _typecheck(program, lang)
    if diags:
        _emit_diags(diags, args.file, args.json)
        return 1
    print("ok")
    return 0


def cmd_run(args) -> int:
    lang = _detect_lang(args.file, args.lang, args.dialect)
    program = _load(args.file, lang, args.json)
    diags = _typecheck(program, lang)
    if diags:
        _emit_diags(diags, args.file, args.json)
        return 1
    trace = None
    if args.trace:
        trace = lambda rule, redex: print("%s: %s" % (rule, syntax.show_expr(redex)), file=sys.stderr)
    res = reduce.run(program, max_steps=args.max_steps, lang="fgg" if lang == "fgg" else "fg", trace=trace)
    print(res.describe())
    return 0


def cmd_translate(args) -> int:
    program = _load(args.file, "fgg", args.json)
    try:
        if args.mode == "dict":
            options = dicttrans.TransOptions(
                skip_redundant_asserts=args.skip_redundant_asserts,
                type_metadata=not args.no_type_metadata,
            )
            out, info = dicttrans.translate_with_info(program, options)
            inventory = [e.as_dict() for e in info.inventory]
        else:
            out, warnings = erasure.erase_program(program)
            for w in warnings:
                print("warning: %s" % w, file=sys.stderr)
            inventory = []
    except (dicttrans.TranslationError, erasure.ErasureError) as ex:
        print("error: %s" % ex, file=sys.stderr)
        return 1
    text = syntax.pretty_print(out)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.emit_inventory:
        print(json.dumps({"mode": args.mode, "declarations": inventory}, indent=2))
    elif not args.output:
        sys.stdout.write(text)
    return 0


def cmd_cosim(args) -> int:
    program = _load(args.file, "fgg", args.json)
    try:
        report = cosim.check_correspondence(program, max_steps=args.steps)
    except dicttrans.TranslationError as ex:
        print("error: %s" % ex, file=sys.stderr)
        return 1
    if args.report == "json":
        print(report.to_json())
    else:
        for r in report.records:
            print(
                "step %d: %s  =>  e*%d %s s*%d  matched=%s"
                % (r.fgg_step_index, r.fgg_rule, r.erase_steps, r.mid_rule, r.sim_steps, r.matched)
            )
        print("terminal: %s agree=%s %s" % (report.terminal.kind, report.terminal.both_sides_agree, report.terminal.detail))
    if not report.ok:
        if report.mismatch_detail:
            print(report.mismatch_detail, file=sys.stderr)
        return 1
    return 0


def cmd_bench(args) -> int:
    lo, _, hi = args.range.partition("..")
    try:
        params = range(int(lo), int(hi) + 1)
    except ValueError:
        print("error: --range must look like LO..HI", file=sys.stderr)
        return 2
    families = {f: params for f in args.family.split(",")}
    translators = tuple(args.mode.split(","))
    rows = bench.run_suite(
        families,
        translators,
        iterations=args.iterations,
        run_steps=not args.no_run,
        max_steps=args.max_steps,
    )
    text = bench.render_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print("wrote %d rows to %s" % (len(rows), args.out))
    else:
        sys.stdout.write(text)
    return 1 if any(r.error for r in rows) else 0


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="feathergo", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", help="source file, or - for stdin")
        p.add_argument("--lang", choices=("fg", "fgg"), help="override extension-based dialect detection")
        p.add_argument("--dialect", choices=("core", "extended"), default="extended", help="fg sub-dialect")
        p.add_argument("--json", action="store_true", help="machine-readable diagnostics")

    p = sub.add_parser("parse", help="parse and print the canonical form")
    common(p)
    p.set_defaults(fn=cmd_parse)

    p = sub.add_parser("typecheck", help="typecheck a program")
    common(p)
    p.set_defaults(fn=cmd_typecheck)

    p = sub.add_parser("run", help="evaluate a program")
    common(p)
    p.add_argument("--max-steps", type=int, default=reduce.DEFAULT_MAX_STEPS)
    p.add_argument("--trace", action="store_true", help="one line per step on stderr")
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("translate", help="translate fgg to fg")
    common(p)
    p.add_argument("--mode", choices=("dict", "erasure"), required=True)
    p.add_argument("-o", "--output", help="write the translated program here")
    p.add_argument("--skip-redundant-asserts", action="store_true")
    p.add_argument("--no-type-metadata", action="store_true")
    p.add_argument("--emit-inventory", action="store_true", help="print the generated-declaration manifest as JSON")
    p.set_defaults(fn=cmd_translate)

    p = sub.add_parser("cosim", help="check operational correspondence fgg vs dict-translated fg")
    common(p)
    p.add_argument("--steps", type=int, default=500, help="source step budget")
    p.add_argument("--report", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_cosim)

    p = sub.add_parser("bench", help="generate benchmark families and collect metrics")
    p.add_argument("--family", default="a,b,c,d,e", help="comma-separated families")
    p.add_argument("--range", required=True, help="parameter sweep LO..HI")
    p.add_argument("--mode", default="dict,erasure", help="comma-separated translators")
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--iterations", type=int, default=1)
    p.add_argument("--no-run", action="store_true", help="skip interpreter step counts")
    p.add_argument("--max-steps", type=int, default=10**6)
    p.set_defaults(fn=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit as ex:
        return ex.code if isinstance(ex.code, int) else 1
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
