"""Command-line front end.

Exit codes: 0 when every check passes, 1 for usage or input errors, 2 when a
check fails or an instance could not be evaluated.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .families import KINDS, FamilySpec, build
from .graph import GraphError, format_edge_list, parse_edge_list
from .graph6 import Graph6Error, decode_graph6, encode_graph6
from .linalg import char_poly, inertia_from_charpoly, parse_matrix, rank
from .metric import HYPER_BOUND, L1_MAX_N, Metric, MetricError, hierarchy_report
from .report import CHECKS, SCHEMA_VERSION, CacheError, SweepSpec, analyze_graph, emit_report, run_sweep

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2
PARAMS = ("k", "t", "ell", "b", "d", "q", "n")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_range(text: str) -> list[int]:
    """``"3..30"`` (inclusive), ``"4"`` or ``"2,5,7"``."""
    out: list[int] = []
    try:
        for part in text.split(","):
            if ".." in part:
                lo, hi = part.split("..")
                lo, hi = int(lo), int(hi)
                if hi < lo:
                    raise UsageError(f"empty range {part!r}")
                out += range(lo, hi + 1)
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"bad integer range {text!r}") from None
    return out


def _checks(text: str) -> tuple[str, ...]:
    names = tuple(sorted({c.strip() for c in text.split(",") if c.strip()}))
    bad = set(names) - set(CHECKS)
    if bad or not names:
        raise UsageError(f"--check takes a comma list from {', '.join(CHECKS)}")
    return names


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--cache", help="JSONL result cache")
    p.add_argument("--format", default="json", help="json or csv (reports); g6 or edges (gen)")
    p.add_argument("--out", help="write output here instead of stdout")
    return p


def _family_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=KINDS, required=True)
    for name in PARAMS:
        p.add_argument(f"--{name}")
    p.add_argument("--pruefer", help="comma-separated Pruefer sequence")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="blockdist", description="Distance spectra of block graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", parents=[common], help="build one family member")
    _family_args(p)

    p = sub.add_parser("analyze", parents=[common], help="analyze graphs from a graph6 or edge-list file")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--check", default="conjecture")
    p.add_argument("--l1-max-n", type=int, default=L1_MAX_N)
    p.add_argument("--hyper-bound", type=int, default=HYPER_BOUND)

    p = sub.add_parser("sweep", parents=[common], help="analyze a parameter grid of one family")
    _family_args(p)
    p.add_argument("--check", default="conjecture")
    p.add_argument("--l1-max-n", type=int, default=L1_MAX_N)
    p.add_argument("--hyper-bound", type=int, default=HYPER_BOUND)

    p = sub.add_parser("enumerate", parents=[common], help="analyze every block graph (or tree) on n vertices")
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--trees", action="store_true", help="enumerate trees instead of block graphs")
    p.add_argument("--check", default="conjecture")
    p.add_argument("--l1-max-n", type=int, default=L1_MAX_N)
    p.add_argument("--hyper-bound", type=int, default=HYPER_BOUND)

    p = sub.add_parser("metric", parents=[common], help="metric hierarchy report for a distance matrix")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--l1-max-n", type=int, default=L1_MAX_N)
    p.add_argument("--hyper-bound", type=int, default=HYPER_BOUND)

    p = sub.add_parser("matrix", parents=[common], help="exact rank, characteristic polynomial, inertia")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--rank", action="store_true")
    p.add_argument("--charpoly", action="store_true")
    p.add_argument("--inertia", action="store_true")
    return parser


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path!r}: {exc.strerror}") from None


def _write(text: str, path: Optional[str]) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path!r}: {exc.strerror}") from None


def read_graphs(text: str):
    """Graphs from graph6 lines, or a single edge list (first line ``n m``)."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise UsageError("input holds no graphs")
    if len(lines[0].split()) == 2:
        return [parse_edge_list(text)]
    out = []
    for ln in lines:
        if ln.startswith(">>graph6<<"):
            ln = ln[len(">>graph6<<") :]
        out.append(decode_graph6(ln))
    return out


def _spec_params(args, ranged: bool) -> dict:
    params = {}
    for name in PARAMS:
        raw = getattr(args, name, None)
        if raw is None:
            continue
        values = parse_range(raw)
        if ranged:
            params[name] = values
        elif len(values) != 1:
            raise UsageError(f"--{name} takes a single value here")
        else:
            params[name] = values[0]
    if getattr(args, "pruefer", None) is not None:
        seq = [int(x) for x in args.pruefer.split(",") if x.strip()]
        params["pruefer"] = [seq] if ranged else seq
    return params


def _report_fmt(args) -> str:
    if args.format not in ("json", "csv"):
        raise UsageError(f"report format must be json or csv, not {args.format!r}")
    return args.format


def _finish(records, args) -> int:
    _write(emit_report(records, _report_fmt(args)), args.out)
    bad = [r for r in records if not r.ok]
    for r in bad:
        what = r.error or ", ".join(r.findings)
        print(f"finding: {r.key} ({r.family}): {what}", file=sys.stderr)
    return EXIT_FAIL if bad else EXIT_OK


def cmd_gen(args) -> int:
    g = build(FamilySpec(args.family, _spec_params(args, ranged=False)))
    if args.format in ("g6", "json"):
        _write(encode_graph6(g), args.out)
    elif args.format == "edges":
        _write(format_edge_list(g), args.out)
    else:
        raise UsageError("gen writes --format g6 or edges")
    return EXIT_OK


def cmd_analyze(args) -> int:
    checks = _checks(args.check)
    _report_fmt(args)
    records = [
        analyze_graph(g, "input", checks, args.l1_max_n, args.hyper_bound) for g in read_graphs(_read(args.inp))
    ]
    return _finish(sorted(records, key=lambda r: r.key), args)


def _run(args, spec_kwargs) -> int:
    _report_fmt(args)
    spec = SweepSpec(
        checks=_checks(args.check),
        jobs=args.jobs,
        cache=args.cache,
        l1_max_n=args.l1_max_n,
        hyper_bound=args.hyper_bound,
        **spec_kwargs,
    )
    stats: dict = {}
    records = run_sweep(spec, stats)
    print(f"{len(records)} records, {stats['computed']} computed, {stats['cached']} from cache", file=sys.stderr)
    return _finish(records, args)


def cmd_sweep(args) -> int:
    return _run(args, {"family": args.family, "ranges": _spec_params(args, ranged=True)})


def cmd_enumerate(args) -> int:
    return _run(args, {"enumerate": "tree" if args.trees else "block", "n": args.n})


def cmd_metric(args) -> int:
    m = Metric.from_rows(parse_matrix(_read(args.inp)).to_lists())
    rep = hierarchy_report(m, l1_max_n=args.l1_max_n, hyper_bound=args.hyper_bound)
    obj = {"schema_version": SCHEMA_VERSION, **rep.to_json()}
    _write(json.dumps(obj, indent=2, sort_keys=True), args.out)
    return EXIT_OK


def cmd_matrix(args) -> int:
    m = parse_matrix(_read(args.inp))
    want_all = not (args.rank or args.charpoly or args.inertia)
    obj: dict = {"schema_version": SCHEMA_VERSION, "n": m.order}
    p = None
    if args.rank or want_all:
        obj["rank"] = rank(m)
    if args.charpoly or want_all:
        p = char_poly(m)
        obj["charpoly"] = [str(c) for c in p.coeffs]
    if (args.inertia or want_all) and m.symmetric:
        obj["inertia"] = list(inertia_from_charpoly(p or char_poly(m)).as_tuple())
    _write(json.dumps(obj, indent=2, sort_keys=True), args.out)
    return EXIT_OK


COMMANDS = {
    "gen": cmd_gen,
    "analyze": cmd_analyze,
    "sweep": cmd_sweep,
    "enumerate": cmd_enumerate,
    "metric": cmd_metric,
    "matrix": cmd_matrix,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be at least 1")
        return COMMANDS[args.command](args)
    except (UsageError, GraphError, Graph6Error, MetricError, CacheError, ValueError) as exc:
        print(f"blockdist: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
