"""Command-line entry point: ``gradedbass run script.gb`` and friends."""

from __future__ import annotations

import argparse
import sys

from ..errors import InputError
from ..field import Field
from .catalog import UnknownCatalogEntry, catalog
from .dsl import Options, ParseError, parse_script, render
from .runner import EXIT_INPUT, RunOptions, run_text


def _field(text: str) -> Field:
    if text in ("Q", "q"):
        return Field.rationals()
    try:
        return Field(int(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"--field expects a prime or Q, got '{text}'")
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _common(p: argparse.ArgumentParser):
    p.add_argument("--json", action="store_true", help="emit the JSON report instead of text")
    p.add_argument("--bound", type=int, default=6, help="homological bound D (default 6)")
    p.add_argument("--degree-cap", type=int, default=24, help="internal degree cap (default 24)")
    p.add_argument("--field", type=_field, default=None, help="field for 'k[...]' rings: a prime or Q")
    p.add_argument("--window-slack", type=int, default=4, help="extra strands scanned past the window anchor")
    p.add_argument("--seed", type=int, default=0, help="seed for 'random' rings")
    p.add_argument("--out", default=None, help="write the report to this path instead of stdout")
    p.add_argument("--timings", action="store_true", help="record per-command wall time in the report")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gradedbass", description="Batch verification workbench.")
    sub = ap.add_subparsers(dest="cmd", required=True)
    r = sub.add_parser("run", help="run a script file ('-' reads stdin)")
    r.add_argument("script")
    _common(r)
    c = sub.add_parser("catalog", help="list catalog entries, print one, or run it")
    c.add_argument("name", nargs="?")
    c.add_argument("--run", action="store_true", help="run the entry (or every entry) instead of printing it")
    _common(c)
    f = sub.add_parser("fmt", help="parse a script and print its canonical form")
    f.add_argument("script")
    _common(f)
    return ap


def _options(ns) -> RunOptions:
    return RunOptions(ns.bound, ns.degree_cap, ns.field, ns.window_slack, ns.seed, ns.timings)


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    opts = _options(ns)
    try:
        if ns.cmd == "catalog":
            if ns.name is None and not ns.run:
                _emit("\n".join(catalog()), ns.out)
                return 0
            names = [ns.name] if ns.name else catalog()
            if not ns.run:
                _emit(catalog(ns.name).rstrip("\n"), ns.out)
                return 0
            return _run_many([(n, catalog(n)) for n in names], ns, opts)
        text = _read(ns.script)
        if ns.cmd == "fmt":
            try:
                script = parse_script(text, Options(opts.field, opts.degree_cap, opts.seed))
            except ParseError as exc:
                print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
                return EXIT_INPUT
            _emit(render(script).rstrip("\n"), ns.out)
            return 0
        return _run_many([(ns.script, text)], ns, opts)
    except UnknownCatalogEntry as exc:
        print(f"UnknownCatalogEntry: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def _run_many(items, ns, opts) -> int:
    reports = [(name, run_text(text, opts)) for name, text in items]
    code = _combine([r.exit_code for _, r in reports])
    if ns.json:
        if len(reports) == 1:
            body = reports[0][1].to_json()
        else:
            import json
            body = json.dumps({name: r.to_dict() for name, r in reports}, indent=2, sort_keys=True)
    else:
        parts = []
        for name, r in reports:
            head = f"== {name}" if len(reports) > 1 else None
            parts.append((head + "\n" if head else "") + r.to_text())
        body = "\n".join(parts)
    _emit(body, ns.out)
    return code


def _combine(codes) -> int:
    for c in (2, 1, 3):
        if c in codes:
            return c
    return 0


if __name__ == "__main__":
    sys.exit(main())
