"""``rpalab`` command line: script, one-shot and REPL evaluation.

Exit status: 0 ok, 2 parse error (including bad flags), 3 domain error,
4 a fuzz suite found a counterexample.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Iterable, TextIO

from .errors import ParseError, RpaError
from .index_filters import parse_filter
from .render import render_json, render_text
from .session import Output, Session, run_line

__all__ = ["main", "run_lines", "render_output", "EXIT_OK", "EXIT_PARSE", "EXIT_DOMAIN",
           "EXIT_COUNTEREXAMPLE"]

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_COUNTEREXAMPLE = 4


def exit_code_for(exc: RpaError) -> int:
    return EXIT_PARSE if isinstance(exc, ParseError) else EXIT_DOMAIN


def render_output(out: Output, fmt: str) -> str:
    payload = out.payload
    if fmt == "json":
        return render_json(payload)
    if out.kind == "let":
        return f"{payload['name']} = {render_text(payload['value'])}"
    if out.kind == "fuzz":
        head = " ".join(f"{k}={payload[k]}" for k in ("suite", "cases", "seed", "passed", "failed"))
        cx = payload["counterexample"]
        return head if cx is None else head + "\ncounterexample " + json.dumps(cx, separators=(",", ":"))
    if out.kind in ("classify", "cmp"):
        return render_text(next(iter(payload.values())))
    return render_text(payload)


def _render_error(exc: RpaError, fmt: str, line_no: int | None) -> str:
    where = f"line {line_no}: " if line_no is not None else ""
    if fmt == "json":
        obj = {"error": exc.code, "message": str(exc)}
        if line_no is not None:
            obj["line"] = line_no
        return json.dumps(obj, separators=(",", ":"))
    return f"{where}error {exc.code}: {exc}"


def _commands(lines: Iterable[str]):
    for no, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def run_lines(session: Session, lines: Iterable[str], fmt: str = "text",
              out: TextIO | None = None, err: TextIO | None = None,
              keep_going: bool = False) -> tuple[Session, int]:
    """Execute command lines in order; stop at the first error unless ``keep_going``."""
    out = out or sys.stdout
    err = err or sys.stderr
    status = EXIT_OK
    for no, line in _commands(lines):
        try:
            session, result = run_line(session, line)
        except RpaError as exc:
            print(_render_error(exc, fmt, no), file=err)
            code = exit_code_for(exc)
            if not keep_going:
                return session, code
            status = status or code
            continue
        print(render_output(result, fmt), file=out)
        if result.exit_code and not status:
            status = result.exit_code
    return session, status


def _repl(session: Session, fmt: str) -> int:
    print("rpalab REPL; filter =", session.filter, "(Ctrl-D to quit)")
    status = EXIT_OK
    while True:
        try:
            line = input("rpa> ")
        except EOFError:
            print()
            return status
        session, code = run_lines(session, [line], fmt)
        status = code or status


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="rpalab",
        description="Exact arithmetic in reduced power algebras: scalars, step waves, operators.")
    p.add_argument("script", nargs="?",
                   help="file with one command per line ('-' for stdin); omit for a REPL")
    p.add_argument("-e", "--eval", action="append", default=[], metavar="CMD",
                   help="run CMD (repeatable) instead of a script")
    p.add_argument("--filter", default="frechet", type=_filter_arg,
                   help="frechet | principal:K | superset:M:R1,R2,... (default frechet)")
    p.add_argument("--trunc", type=_positive, default=4,
                   help="truncation order for sqrt (default 4)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0, help="default seed for fuzz (default 0)")
    p.add_argument("--keep-going", action="store_true",
                   help="continue a script after an error; exit with the first error's status")
    return p


def _filter_arg(text: str):
    try:
        return parse_filter(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    k = int(text)
    if k < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return k


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)  # argparse exits with status 2 on bad flags
    session = Session(filter=args.filter, trunc=args.trunc, seed=args.seed)
    if args.eval:
        _, code = run_lines(session, args.eval, args.format, keep_going=args.keep_going)
        return code
    if args.script is None and sys.stdin.isatty():
        return _repl(session, args.format)
    if args.script in (None, "-"):
        _, code = run_lines(session, sys.stdin, args.format, keep_going=args.keep_going)
        return code
    try:
        with open(args.script, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        print(f"rpalab: cannot read {args.script}: {exc.strerror}", file=sys.stderr)
        return EXIT_PARSE
    _, code = run_lines(session, lines, args.format, keep_going=args.keep_going)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
