"""Command-line entry point: ``astk <check> [--flags]``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from astk import __version__
from astk.checks import REGISTRY, run_check, verify_all
from astk.errors import AstkError, GroupLoadError, UsageError
from astk.report import (EXIT_FAIL, EXIT_PASS, EXIT_USAGE, REPORT_V, Report, combine_status,
                         digest, dumps, exit_code)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _flag(name: str) -> str:
    return "--" + name.replace("_", "-")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="astk", description="Exact verification checks with JSON reports.")
    parser.add_argument("--version", action="version", version=f"astk {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="<check>")
    for name, desc in sorted(REGISTRY.items()):
        sp = sub.add_parser(name, help=desc.anchor)
        for p in desc.params:
            sp.add_argument(_flag(p.name), dest=p.name, type=p.kind, default=None, help=p.help)
        _common(sp)
    va = sub.add_parser("verify-all", help="run every acceptance check")
    va.add_argument("--jobs", type=int, default=1)
    va.add_argument("--exclude", default="", help="comma-separated check names")
    va.add_argument("--precision", type=int, default=None,
                    help="override the precision of every check that takes one")
    _common(va)
    grp = sub.add_parser("group", help="group-file utilities")
    gsub = grp.add_subparsers(dest="group_command", metavar="<action>")
    gv = gsub.add_parser("validate", help="validate a finite-group JSON file")
    gv.add_argument("file")
    _common(gv)
    return parser


def _common(sp):
    sp.add_argument("--out", default=None, help="also write the report to this file")
    sp.add_argument("--no-timings", action="store_true", help="omit wall-clock timings")


def _emit(text: str, out: str | None):
    print(text)
    if out:
        Path(out).write_text(text + "\n")


def _group_validate(path: str) -> Report:
    from astk.groups.finite import load_group_file

    try:
        g = load_group_file(path)
    except GroupLoadError as exc:
        return Report("group-validate", {"file": path}, "", "fail",
                      {"invariant": exc.invariant, "error": str(exc)})
    result = {"name": g.name, "order": g.order, "classes": g.nclasses,
              "class_sizes": list(g.class_sizes()), "characters": [c.name for c in g.characters],
              "split": g.split, "exponent": g.exponent()}
    return Report("group-validate", {"file": path}, "", "pass", result)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help(sys.stderr)
            return EXIT_USAGE
        timings = not args.no_timings
        if args.command == "verify-all":
            if args.jobs < 1:
                raise UsageError("--jobs must be >= 1")
            exclude = [s.strip() for s in args.exclude.split(",") if s.strip()]
            status, reports, excluded = verify_all(args.jobs, exclude, args.precision)
            body = {"report_v": REPORT_V, "check": "verify-all", "status": status,
                    "version": __version__, "excluded": excluded,
                    "precision_override": args.precision,
                    "reports": {r.check: r.to_json(timings=False) for r in reports}}
            body["report_digest"] = digest(body)
            if timings:
                body["timings_ms"] = {r.check: r.timings_ms for r in reports}
            _emit(dumps(body), args.out)
            return exit_code(status)
        if args.command == "group":
            if args.group_command != "validate":
                raise UsageError("usage: astk group validate <file>")
            report = _group_validate(args.file)
            _emit(report.dumps(timings), args.out)
            return EXIT_PASS if report.status == "pass" else EXIT_FAIL
        desc = REGISTRY[args.command]
        params = {p.name: getattr(args, p.name) for p in desc.params
                  if getattr(args, p.name) is not None}
        report = run_check(args.command, params)
        _emit(report.dumps(timings), args.out)
        return exit_code(report.status)
    except UsageError as exc:
        print(f"astk: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AstkError as exc:
        print(f"astk: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())


__all__ = ["main", "build_parser", "combine_status"]
