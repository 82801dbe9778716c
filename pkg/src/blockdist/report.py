"""Sweeps over graph families, a resumable JSONL cache, and JSON/CSV reports.

Records are keyed by canonical graph6, so the same graph reached through two
families is computed once.  Workers only compute; the parent process is the
sole writer of the cache file.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Optional

from .families import FamilySpec, build, enumerate_block_graphs, enumerate_trees
from .graph import Graph, distance_matrix, non_clique_block
from .graph6 import canonical_graph6, canonical_labeling, decode_graph6
from .linalg import IntPolynomial, bareiss_determinant, char_poly, cofactor_sum, inertia_from_charpoly
from .metric import HYPER_BOUND, L1_MAX_N, Metric, hierarchy_report
from .spectra import (
    block_graph_window,
    conjecture_verdict,
    sequence_report,
    signed_coefficients,
    tree_window,
)

__all__ = [
    "SCHEMA_VERSION",
    "CacheError",
    "ReportRecord",
    "SweepSpec",
    "analyze_graph",
    "iter_instances",
    "run_sweep",
    "load_cache",
    "emit_report",
    "parse_report",
    "recompute_verdicts",
]

SCHEMA_VERSION = 1
CHECKS = ("conjecture", "hierarchy")
VERDICTS = (
    "positivity_ok",
    "trace_zero_ok",
    "log_concave_ok",
    "unimodal_ok",
    "inertia_ok",
    "peak_in_window",
    "ghh_ok",
    "tree_peak_in_window",
)


class CacheError(RuntimeError):
    pass


@dataclass(frozen=True)
class ReportRecord:
    key: str
    n: int
    family: str
    coefficients: tuple[str, ...] = ()
    peak_index: Optional[int] = None
    argmax: Optional[tuple[int, int]] = None
    verdicts: dict = field(default_factory=dict)
    inertia: Optional[tuple[int, int, int]] = None
    det: Optional[str] = None
    cof: Optional[str] = None
    tree_coefficients: Optional[tuple[str, ...]] = None
    hierarchy: Optional[dict] = None
    findings: tuple[str, ...] = ()
    error: Optional[str] = None
    checks: tuple[str, ...] = ("conjecture",)
    timing: float = 0.0

    @property
    def ok(self) -> bool:
        return self.error is None and not self.findings

    def to_json(self, timing: bool = False) -> dict:
        obj = {
            "schema_version": SCHEMA_VERSION,
            "key": self.key,
            "n": self.n,
            "family": self.family,
            "coefficients": list(self.coefficients),
            "peak_index": self.peak_index,
            "argmax": None if self.argmax is None else list(self.argmax),
            "verdicts": {k: self.verdicts.get(k) for k in VERDICTS},
            "inertia": None if self.inertia is None else list(self.inertia),
            "det": self.det,
            "cof": self.cof,
            "tree_coefficients": None if self.tree_coefficients is None else list(self.tree_coefficients),
            "hierarchy": self.hierarchy,
            "findings": list(self.findings),
            "error": self.error,
            "checks": list(self.checks),
        }
        if timing:
            obj["timing"] = self.timing
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "ReportRecord":
        version = obj.get("schema_version", SCHEMA_VERSION)
        if version != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {version}")
        tc = obj.get("tree_coefficients")
        return cls(
            key=obj["key"],
            n=int(obj["n"]),
            family=obj.get("family", ""),
            coefficients=tuple(str(c) for c in obj.get("coefficients", ())),
            peak_index=obj.get("peak_index"),
            argmax=None if obj.get("argmax") is None else tuple(obj["argmax"]),
            verdicts=dict(obj.get("verdicts") or {}),
            inertia=None if obj.get("inertia") is None else tuple(obj["inertia"]),
            det=obj.get("det"),
            cof=obj.get("cof"),
            tree_coefficients=None if tc is None else tuple(str(c) for c in tc),
            hierarchy=obj.get("hierarchy"),
            findings=tuple(obj.get("findings", ())),
            error=obj.get("error"),
            checks=tuple(obj.get("checks", ("conjecture",))),
            timing=float(obj.get("timing", 0.0)),
        )


# --- single-graph analysis -----------------------------------------------------


def analyze_graph(
    g: Graph,
    family: str = "",
    checks: Iterable[str] = ("conjecture",),
    l1_max_n: int = L1_MAX_N,
    hyper_bound: int = HYPER_BOUND,
) -> ReportRecord:
    """Evaluate one graph.  Failures become error records instead of raising."""
    checks = tuple(sorted(set(checks)))
    start = time.perf_counter()
    try:
        key = canonical_graph6(g)
        g = g.relabel(canonical_labeling(g))
    except Exception as exc:  # noqa: BLE001
        return ReportRecord(key=f"!{family}", n=g.n, family=family, error=f"{type(exc).__name__}: {exc}", checks=checks)
    try:
        rec = _analyze(g, key, family, checks, l1_max_n, hyper_bound)
    except Exception as exc:  # noqa: BLE001
        rec = ReportRecord(key=key, n=g.n, family=family, error=f"{type(exc).__name__}: {exc}", checks=checks)
    return replace(rec, timing=round(time.perf_counter() - start, 6))


def _analyze(g, key, family, checks, l1_max_n, hyper_bound) -> ReportRecord:
    block = g.is_connected and non_clique_block(g) is None
    findings: list[str] = []
    if g.n >= 2 and block:
        v = conjecture_verdict(g)
        verdicts = {
            "positivity_ok": v.positivity_ok,
            "trace_zero_ok": v.trace_zero_ok,
            "log_concave_ok": v.log_concave_ok,
            "unimodal_ok": v.unimodal_ok,
            "inertia_ok": v.inertia_ok,
            "peak_in_window": v.peak_in_window,
            "ghh_ok": v.ghh_ok,
            "tree_peak_in_window": v.tree_peak_in_window,
        }
        if "conjecture" in checks:
            findings += v.failures
        rec = ReportRecord(
            key=key,
            n=g.n,
            family=family,
            coefficients=tuple(str(s) for s in v.sequence.s),
            peak_index=v.report.peak_index,
            argmax=v.report.argmax,
            verdicts=verdicts,
            inertia=v.inertia.as_tuple(),
            det=str(v.det),
            cof=str(v.cof),
            tree_coefficients=None if v.tree_coefficients is None else tuple(str(c) for c in v.tree_coefficients),
        )
    else:
        # not a block graph: report the raw spectral data, no theorem applies
        d = distance_matrix(g)
        p = char_poly(d)
        seq = signed_coefficients(p, g.n)
        rep = sequence_report(seq) if seq.s else None
        rec = ReportRecord(
            key=key,
            n=g.n,
            family=family,
            coefficients=tuple(str(s) for s in seq.s),
            peak_index=None if rep is None else rep.peak_index,
            argmax=None if rep is None else rep.argmax,
            verdicts={},
            inertia=inertia_from_charpoly(p).as_tuple(),
            det=str(bareiss_determinant(d)),
            cof=str(cofactor_sum(d)),
        )
    hier = None
    if "hierarchy" in checks:
        h = hierarchy_report(Metric.from_graph(g), l1_max_n=l1_max_n, hyper_bound=hyper_bound)
        hier = h.to_json()
        if block:
            # block graph metrics are of negative type with one positive eigenvalue
            if not h.negative_type:
                findings.append("negative_type")
            if not h.one_positive_eigenvalue:
                findings.append("one_positive_eigenvalue")
    return replace(rec, hierarchy=hier, findings=tuple(findings), checks=checks)


def recompute_verdicts(rec: ReportRecord) -> dict:
    """Rebuild the coefficient-derived verdicts from the stored decimal strings alone.

    The polynomial is reassembled assuming the trace coefficient is zero,
    which holds for every distance matrix.
    """
    n = rec.n
    s = [int(c) for c in rec.coefficients]
    # c_k = (-1)^(n-1) s_k for k <= n-2, c_{n-1} = 0, c_n = (-1)^n; p = (-1)^n det(D - xI)
    c = [(-1) ** (n - 1) * x for x in s] + [0, (-1) ** n]
    p = IntPolynomial(tuple((-1) ** n * x for x in c))
    rep = sequence_report(s)
    out = {
        "positivity_ok": rep.positive,
        "log_concave_ok": rep.log_concave,
        "unimodal_ok": rep.unimodal,
        "inertia_ok": inertia_from_charpoly(p).as_tuple() == (1, 0, n - 1),
        "peak_in_window": rep.peak_index in block_graph_window(n),
        "peak_index": rep.peak_index,
        "argmax": rep.argmax,
    }
    if rec.tree_coefficients is not None and n >= 3:
        tr = sequence_report([int(x) for x in rec.tree_coefficients])
        out["tree_peak_in_window"] = tr.peak_index in tree_window(n) and not tr.tied
    return out


# --- sweeps ----------------------------------------------------------------------


@dataclass(frozen=True)
class SweepSpec:
    """Either a family with per-parameter value lists, or an enumeration order.

    ``enumerate`` is ``"block"`` or ``"tree"`` together with ``n``.
    """

    family: Optional[str] = None
    ranges: dict = field(default_factory=dict)
    enumerate: Optional[str] = None
    n: Optional[int] = None
    checks: tuple[str, ...] = ("conjecture",)
    jobs: int = 1
    cache: Optional[str] = None
    l1_max_n: int = L1_MAX_N
    hyper_bound: int = HYPER_BOUND

    def __post_init__(self):
        if (self.family is None) == (self.enumerate is None):
            raise ValueError("a sweep needs exactly one of family or enumerate")
        if self.enumerate is not None:
            if self.enumerate not in ("block", "tree"):
                raise ValueError(f"unknown enumeration {self.enumerate!r}")
            if self.n is None or self.n < 1:
                raise ValueError("enumeration needs n >= 1")
        for name, values in self.ranges.items():
            if not list(values):
                raise ValueError(f"empty range for parameter {name!r}")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
        bad = set(self.checks) - set(CHECKS)
        if bad:
            raise ValueError(f"unknown checks {sorted(bad)}")


def iter_instances(spec: SweepSpec) -> Iterator[tuple[str, Optional[Graph], Optional[str]]]:
    """(family descriptor, graph or None, error message or None) per instance."""
    if spec.enumerate is not None:
        gen = enumerate_block_graphs(spec.n) if spec.enumerate == "block" else enumerate_trees(spec.n)
        for g in gen:
            yield f"{spec.enumerate}_enum(n={spec.n})", g, None
        return
    names = sorted(spec.ranges)
    for values in itertools.product(*(list(spec.ranges[k]) for k in names)):
        fam = FamilySpec(spec.family, dict(zip(names, values)))
        try:
            yield fam.describe(), build(fam), None
        except Exception as exc:  # noqa: BLE001
            yield fam.describe(), None, f"{type(exc).__name__}: {exc}"


def _worker(task) -> dict:
    g6, family, checks, l1_max_n, hyper_bound = task
    return analyze_graph(decode_graph6(g6), family, checks, l1_max_n, hyper_bound).to_json(timing=True)


def load_cache(path: str) -> dict[str, ReportRecord]:
    """Read a JSONL cache.  A truncated final line is dropped (and cut from the
    file); corruption anywhere else is an error."""
    if not os.path.exists(path):
        return {}
    with open(path, "rb") as fh:
        data = fh.read()
    lines = data.split(b"\n")
    tail = lines.pop()  # bytes after the last newline: empty unless truncated
    good_end = len(data) - len(tail)
    out: dict[str, ReportRecord] = {}
    for i, line in enumerate(lines):
        if not line.strip():
            continue
        try:
            rec = ReportRecord.from_json(json.loads(line))
        except (ValueError, KeyError) as exc:
            if i == len(lines) - 1 and not tail:
                # last complete-looking line that still fails to parse
                good_end -= len(line) + 1
                break
            raise CacheError(f"{path}: corrupt record on line {i + 1}: {exc}") from None
        out[rec.key] = rec
    if good_end != len(data):
        with open(path, "r+b") as fh:
            fh.truncate(good_end)
    return out


def run_sweep(spec: SweepSpec, stats: Optional[dict] = None) -> list[ReportRecord]:
    """Evaluate every instance, reusing cached records.  Output sorted by key."""
    checks = tuple(sorted(set(spec.checks)))
    cached: dict[str, ReportRecord] = {}
    sink = None
    if spec.cache:
        try:
            cached = load_cache(spec.cache)
            sink = open(spec.cache, "a", encoding="utf-8")
        except OSError as exc:
            raise CacheError(f"cache {spec.cache!r} is not writable: {exc}") from None
    results: dict[str, ReportRecord] = {}
    pending: dict[str, tuple] = {}
    for family, g, err in iter_instances(spec):
        if g is None:
            key = f"!{family}"
            results.setdefault(key, ReportRecord(key=key, n=0, family=family, error=err, checks=checks))
            continue
        key = canonical_graph6(g)
        if key in results or key in pending:
            continue
        hit = cached.get(key)
        if hit is not None and hit.error is None and set(checks) <= set(hit.checks):
            results[key] = _restrict(hit, family, checks)
            continue
        pending[key] = (key, family, checks, spec.l1_max_n, spec.hyper_bound)
    try:
        tasks = [pending[k] for k in sorted(pending)]
        if spec.jobs == 1 or len(tasks) <= 1:
            outputs: Iterable[dict] = map(_worker, tasks)
            pool = None
        else:
            pool = ProcessPoolExecutor(max_workers=spec.jobs)
            outputs = pool.map(_worker, tasks, chunksize=max(1, len(tasks) // (4 * spec.jobs)))
        try:
            for obj in outputs:
                rec = ReportRecord.from_json(obj)
                if sink is not None:
                    sink.write(json.dumps(obj, sort_keys=True) + "\n")
                    sink.flush()
                results[rec.key] = rec
        finally:
            if pool is not None:
                pool.shutdown()
    finally:
        if sink is not None:
            sink.close()
    if stats is not None:
        stats["computed"] = len(pending)
        stats["cached"] = len(results) - len(pending)
    return [results[k] for k in sorted(results)]


def _restrict(rec: ReportRecord, family: str, checks: tuple[str, ...]) -> ReportRecord:
    """A cached record seen through the current sweep's family and checks."""
    findings = rec.findings
    hierarchy = rec.hierarchy
    if "hierarchy" not in checks:
        hierarchy = None
        findings = tuple(f for f in findings if f not in ("negative_type", "one_positive_eigenvalue"))
    if "conjecture" not in checks:
        findings = tuple(f for f in findings if f in ("negative_type", "one_positive_eigenvalue"))
    return replace(rec, family=family, checks=checks, hierarchy=hierarchy, findings=findings)


# --- emission --------------------------------------------------------------------

CSV_FIELDS = (
    ["schema_version", "key", "n", "family", "coefficients", "peak_index", "argmax_lo", "argmax_hi"]
    + list(VERDICTS)
    + ["inertia", "det", "cof", "findings", "error"]
)


def emit_report(records: Iterable[ReportRecord], fmt: str = "json") -> str:
    """Deterministic text for a list of records (timing is never emitted)."""
    records = list(records)
    if fmt == "json":
        if not records:
            return "[]"
        return json.dumps([r.to_json() for r in records], indent=2, sort_keys=True)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        for r in records:
            row = [
                SCHEMA_VERSION,
                r.key,
                r.n,
                r.family,
                ";".join(r.coefficients),
                "" if r.peak_index is None else r.peak_index,
                "" if r.argmax is None else r.argmax[0],
                "" if r.argmax is None else r.argmax[1],
            ]
            row += ["" if r.verdicts.get(k) is None else str(r.verdicts[k]).lower() for k in VERDICTS]
            row += [
                "" if r.inertia is None else ";".join(str(x) for x in r.inertia),
                r.det or "",
                r.cof or "",
                ";".join(r.findings),
                r.error or "",
            ]
            w.writerow(row)
        return buf.getvalue()
    raise ValueError(f"unknown report format {fmt!r}")


def parse_report(text: str) -> list[ReportRecord]:
    """Inverse of the JSON emitter."""
    return [ReportRecord.from_json(obj) for obj in json.loads(text)]
