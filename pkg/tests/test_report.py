import json

import pytest

from blockdist.families import enumerate_block_graphs, windmill
from blockdist.graph import from_edge_list
from blockdist.graph6 import canonical_graph6
from blockdist.report import (
    CacheError,
    ReportRecord,
    SweepSpec,
    analyze_graph,
    emit_report,
    load_cache,
    parse_report,
    recompute_verdicts,
    run_sweep,
)

from conftest import cycle


def test_single_windmill_record():
    rec = analyze_graph(windmill(2, 3), "windmill(k=2,t=3)")
    out = emit_report([rec])
    obj = json.loads(out)[0]
    assert obj["schema_version"] == 1
    assert obj["peak_index"] == 2
    assert obj["coefficients"] == ["12", "43", "52", "22"]
    assert '"peak_index": 2' in out and "timing" not in out


def test_empty_reports():
    assert emit_report([], "json") == "[]"
    csv = emit_report([], "csv")
    assert csv.count("\n") == 1 and csv.startswith("schema_version,key")
    with pytest.raises(ValueError):
        emit_report([], "xml")


def test_json_roundtrip_fixpoint():
    recs = run_sweep(SweepSpec(enumerate="block", n=5, checks=("conjecture", "hierarchy")))
    text = emit_report(recs)
    assert emit_report(parse_report(text)) == text
    csv = emit_report(recs, "csv")
    assert csv.count("\n") == len(recs) + 1
    assert "12;43;52;22" in emit_report([analyze_graph(windmill(2, 3))], "csv")


def test_barbell_sweep():
    recs = run_sweep(SweepSpec(family="barbell", ranges={"t": range(3, 11), "ell": range(2, 6)}))
    assert len(recs) == 32
    assert all(r.verdicts["unimodal_ok"] and r.ok for r in recs)
    for r in recs:
        fam = dict(kv.split("=") for kv in r.family[len("barbell(") : -1].split(","))
        t, ell = int(fam["t"]), int(fam["ell"])
        assert r.peak_index == (t - 1 if ell == 2 else t)
    assert [r.key for r in recs] == sorted(r.key for r in recs)


def test_enumeration_sweep_n7():
    recs = run_sweep(SweepSpec(enumerate="block", n=7))
    assert len(recs) == 59 and all(r.verdicts["peak_in_window"] for r in recs)
    trees = run_sweep(SweepSpec(enumerate="tree", n=8))
    assert len(trees) == 23 and all(r.verdicts["tree_peak_in_window"] for r in trees)


def test_records_are_self_contained():
    for rec in run_sweep(SweepSpec(enumerate="block", n=6)):
        again = recompute_verdicts(ReportRecord.from_json(json.loads(json.dumps(rec.to_json()))))
        for k in ("positivity_ok", "log_concave_ok", "unimodal_ok", "inertia_ok", "peak_in_window", "tree_peak_in_window"):
            if k in again:
                assert again[k] == rec.verdicts[k]
        assert again["peak_index"] == rec.peak_index and tuple(again["argmax"]) == rec.argmax


def test_cache_resumes_and_skips(tmp_path):
    cache = tmp_path / "c.jsonl"
    spec = SweepSpec(family="windmill", ranges={"k": [2, 3], "t": [3, 4]}, cache=str(cache))
    stats = {}
    first = run_sweep(spec, stats)
    assert stats == {"computed": 4, "cached": 0}
    second = run_sweep(spec, stats)
    assert stats == {"computed": 0, "cached": 4}
    assert emit_report(first) == emit_report(second)
    # simulate a crash mid-write: the partial last line is dropped and recomputed
    text = cache.read_text()
    cache.write_text(text[: len(text) - 20])
    assert len(load_cache(str(cache))) == 3
    assert cache.read_text().endswith("\n")
    run_sweep(spec, stats)
    assert stats["computed"] == 1
    # corruption before the final line is an error
    lines = cache.read_text().splitlines(keepends=True)
    cache.write_text("garbage\n" + "".join(lines))
    with pytest.raises(CacheError):
        run_sweep(spec)


def test_cache_wider_checks_recompute(tmp_path):
    cache = str(tmp_path / "c.jsonl")
    stats = {}
    run_sweep(SweepSpec(enumerate="block", n=4, cache=cache), stats)
    run_sweep(SweepSpec(enumerate="block", n=4, cache=cache, checks=("conjecture", "hierarchy")), stats)
    assert stats["computed"] == 4
    recs = run_sweep(SweepSpec(enumerate="block", n=4, cache=cache), stats)
    assert stats["computed"] == 0 and all(r.hierarchy is None for r in recs)


def test_unwritable_cache(tmp_path):
    with pytest.raises(CacheError):
        run_sweep(SweepSpec(enumerate="block", n=3, cache=str(tmp_path / "missing" / "c.jsonl")))


def test_error_records_do_not_abort():
    recs = run_sweep(SweepSpec(family="windmill", ranges={"k": [1, 2], "t": [3]}))
    assert len(recs) == 2
    bad = [r for r in recs if r.error]
    assert len(bad) == 1 and "windmill" in bad[0].error and bad[0].key.startswith("!")
    rec = analyze_graph(from_edge_list(3, [(0, 1)]))
    assert rec.error and "Disconnected" in rec.error


def test_non_block_graph_record():
    rec = analyze_graph(cycle(5), checks=("conjecture", "hierarchy"))
    assert rec.error is None and rec.verdicts == {} and rec.inertia == (1, 0, 4)
    assert rec.hierarchy["l1"] is True and not rec.findings


def test_determinism_across_jobs():
    spec = dict(family="lollipop", ranges={"t": range(3, 9), "ell": range(2, 6)})
    a = emit_report(run_sweep(SweepSpec(jobs=1, **spec)))
    b = emit_report(run_sweep(SweepSpec(jobs=8, **spec)))
    assert a == b


def test_sweep_spec_validation():
    with pytest.raises(ValueError):
        SweepSpec()
    with pytest.raises(ValueError):
        SweepSpec(family="barbell", enumerate="block", n=3)
    with pytest.raises(ValueError):
        SweepSpec(family="barbell", ranges={"t": []})
    with pytest.raises(ValueError):
        SweepSpec(enumerate="block", n=3, jobs=0)
    with pytest.raises(ValueError):
        SweepSpec(enumerate="block", n=3, checks=("magic",))


def test_keys_are_canonical():
    recs = run_sweep(SweepSpec(enumerate="block", n=6))
    assert [r.key for r in recs] == [canonical_graph6(g) for g in enumerate_block_graphs(6)]
