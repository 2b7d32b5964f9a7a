"""Command-line entry point: ``raneylab {gen,analyze,spectra,check,atlas}``."""

from __future__ import annotations

import argparse
import sys
from typing import Iterable

from . import config
from .birkhoff import canonical_hash, enumerate_posets, upset_lattice
from .errors import ParseError, RaneyError
from .formats import dumps, lattice_to_json, poset_to_json, read_file
from .harness import ATLAS_COLUMNS, analyze_frame, analyze_space, atlas, run_theorem_suite, spectra_report

CHECK_COLUMNS = ("id", "scope", "instances", "passed", "failed")


def _tsv_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (dict, list)):
        return dumps(v)
    return str(v)


def _emit(rows: Iterable[dict], fmt: str, columns: Iterable[str] | None, out) -> None:
    rows = list(rows)
    if fmt == "jsonl":
        for r in rows:
            out.write(dumps(r) + "\n")
        return
    cols = list(columns) if columns is not None else sorted({k for r in rows for k in r})
    out.write("\t".join(cols) + "\n")
    for r in rows:
        out.write("\t".join(_tsv_value(r.get(c, "")) for c in cols) + "\n")


def _kv_rows(report: dict) -> list[dict]:
    return [{"key": k, "value": v} for k, v in sorted(report.items())]


def _caps(args) -> config.Caps:
    return config.Caps(max_poset=args.max_poset, max_elements=args.max_elements)


def cmd_gen(args, out) -> int:
    rows = []
    for P in enumerate_posets(args.posets, cap=config.HARD_MAX_POSET):
        L = upset_lattice(P)
        rows.append({"hash": canonical_hash(P), "n": P.n, "elements": L.n,
                     "poset": poset_to_json(P), "lattice": lattice_to_json(L)})
    rows.sort(key=lambda r: r["hash"])
    _emit(rows, args.format, ("hash", "n", "elements", "poset"), out)
    return 0


def _load(path: str):
    parsed = read_file(path)
    if parsed.kind == "poset":
        return "frame", upset_lattice(parsed.value)
    return ("frame" if parsed.kind == "lattice" else "space"), parsed.value


def cmd_analyze(args, out) -> int:
    kind, obj = _load(args.file)
    report = analyze_frame(obj) if kind == "frame" else analyze_space(obj)
    if args.format == "jsonl":
        _emit([report], "jsonl", None, out)
    else:
        _emit(_kv_rows(report), "tsv", ("key", "value"), out)
    return 0


def cmd_spectra(args, out) -> int:
    kind, obj = _load(args.file)
    L = obj if kind == "frame" else obj.omega
    from .formats import require_frame

    report = spectra_report(require_frame(L))
    if args.format == "jsonl":
        _emit([report], "jsonl", None, out)
    else:
        _emit(_kv_rows(report), "tsv", ("key", "value"), out)
    return 0


def cmd_check(args, out) -> int:
    only = [s for part in args.only for s in part.split(",") if s] if args.only else None
    report = run_theorem_suite(_caps(args), only=only, jobs=args.jobs)
    if args.format == "jsonl":
        for row in report["checks"]:
            out.write(dumps(row) + "\n")
        out.write(dumps({"summary": {k: report[k] for k in ("caps", "counts", "ok")}}) + "\n")
    else:
        _emit(report["checks"], "tsv", CHECK_COLUMNS, out)
    return 0 if report["ok"] else 1


def cmd_atlas(args, out) -> int:
    caps = _caps(args)
    rows = [r for n in range(args.max_poset + 1) for r in atlas(n, caps)]
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            _emit(rows, args.format, ATLAS_COLUMNS, fh)
    else:
        _emit(rows, args.format, ATLAS_COLUMNS, out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("jsonl", "tsv"), default="jsonl")
    caps = argparse.ArgumentParser(add_help=False)
    caps.add_argument("--max-poset", type=int, default=4)
    caps.add_argument("--max-elements", type=int, default=None,
                      help=f"frame-size cap (default: ${config.ENV_MAX_ELEMENTS} or "
                           f"{config.DEFAULT_MAX_ELEMENTS})")

    p = argparse.ArgumentParser(prog="raneylab", description="Finite frames, filters and Raney extensions.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[fmt], help="posets of a given size with their upset lattices")
    g.add_argument("--posets", type=int, required=True, metavar="N")
    g.set_defaults(func=cmd_gen)

    a = sub.add_parser("analyze", parents=[fmt], help="property report for a lattice, poset or space file")
    a.add_argument("file")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("spectra", parents=[fmt], help="pt, pt_D, maxpt and the extension spectrum")
    s.add_argument("file")
    s.set_defaults(func=cmd_spectra)

    c = sub.add_parser("check", parents=[fmt, caps], help="run the theorem suite")
    c.add_argument("--only", action="append", metavar="IDS", help="comma-separated check ids")
    c.add_argument("--jobs", type=int, default=1)
    c.set_defaults(func=cmd_check)

    t = sub.add_parser("atlas", parents=[fmt, caps], help="one row per frame up to a poset size")
    t.add_argument("--out", metavar="PATH")
    t.set_defaults(func=cmd_atlas)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    try:
        return args.func(args, out)
    except ParseError as exc:
        where = getattr(args, "file", "<input>")
        print(f"{where}:{exc.line}:{exc.column}: {exc.message}", file=sys.stderr)
        return 2
    except (RaneyError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
