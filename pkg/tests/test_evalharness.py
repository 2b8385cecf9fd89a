"""Oracle loading, tolerance matching, recall computation, and the repeated-run
statistics, cross-checked against an integration-based t-distribution oracle."""

from __future__ import annotations

import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carver.errors import EmptyOracleError, InsufficientSamplesError
from carver.evalharness import (
    DumpSource,
    EvalReport,
    EntryVerdict,
    evaluate,
    format_report,
    load_oracle,
    matches,
    repeated_stats,
)

import oracles


# ---------------------------------------------------------------------------
# matches: worked examples


def test_identical_ranges_always_match():
    assert matches((10, 20), (10, 20), host_loc=30, tolerance=0.0)
    assert matches((10, 20), (10, 20), host_loc=30, tolerance=0.03)


def test_one_line_difference_on_a_thirty_line_host_misses():
    # floor(0.03 * 30) = 0 allowed differing lines
    assert not matches((10, 21), (10, 20), host_loc=30, tolerance=0.03)


def test_five_line_difference_on_a_two_hundred_line_host_matches():
    # floor(0.03 * 200) = 6 allowed differing lines
    assert matches((10, 24), (10, 19), host_loc=200, tolerance=0.03)


def test_six_line_difference_at_the_allowance_boundary():
    assert matches((10, 25), (10, 19), host_loc=200, tolerance=0.03)
    assert not matches((10, 26), (10, 19), host_loc=200, tolerance=0.03)


def test_inverted_or_missing_suggestion_never_matches():
    assert not matches((20, 10), (10, 20), host_loc=200, tolerance=0.03)
    assert not matches(None, (10, 20), host_loc=200, tolerance=0.03)


def test_statement_lines_mask_ignores_blank_and_brace_only_lines():
    bearing = frozenset({10, 11, 12, 14})  # 13 bears no statement tokens
    assert matches((10, 13), (10, 12), host_loc=30, tolerance=0.03, statement_lines=bearing)
    assert not matches((10, 14), (10, 12), host_loc=30, tolerance=0.03, statement_lines=bearing)


def test_custom_allowance_rule_is_used():
    ceil_rule = lambda tol, loc: math.ceil(tol * loc)
    # ceil(0.03 * 30) = 1, so the one-line miss above becomes a hit
    assert matches((10, 21), (10, 20), host_loc=30, tolerance=0.03, allowance=ceil_rule)


@settings(max_examples=300, deadline=None)
@given(
    s=st.tuples(st.integers(1, 60), st.integers(1, 60)).map(lambda t: (min(t), max(t))),
    o=st.tuples(st.integers(1, 60), st.integers(1, 60)).map(lambda t: (min(t), max(t))),
    loc=st.integers(1, 300),
    tol_lo=st.floats(0.0, 0.2),
    tol_extra=st.floats(0.0, 0.2),
)
def test_matching_is_symmetric_and_monotone_in_tolerance(s, o, loc, tol_lo, tol_extra):
    assert matches(s, o, loc, tol_lo) == matches(o, s, loc, tol_lo)
    if matches(s, o, loc, tol_lo):
        assert matches(s, o, loc, tol_lo + tol_extra)


# ---------------------------------------------------------------------------
# oracle loading


def write_jsonl(path, rows):
    path.write_text("\n".join(json.dumps(r) for r in rows) + "\n")


def entry(demo_rel, name, start, end, ex_start, ex_end, id_=None):
    return {
        "id": id_ or f"t-{name}",
        "file": demo_rel,
        "method_name": name,
        "method_start": start,
        "method_end": end,
        "extracted_start": ex_start,
        "extracted_end": ex_end,
    }


def test_load_oracle_resolves_and_summarizes(repo_root):
    load = load_oracle(repo_root / "fixtures" / "oracle" / "demo_oracle.jsonl", root=repo_root)
    assert len(load.entries) == 10
    assert load.skipped == ()
    summary = load.loc_summary
    assert summary["min"] <= summary["median"] <= summary["max"]
    first = load.entries[0]
    assert first.host_loc == first.entry.method_end - first.entry.method_start + 1


def test_load_oracle_skips_each_kind_of_bad_row(tmp_path, repo_root):
    demo = "fixtures/java/demo/JvmClassWriter.java"
    good = entry(demo, "writeJvmClass", 65, 96, 85, 90, id_="good")
    rows = [
        good,
        {"id": "missing-fields", "file": demo},
        entry("fixtures/java/demo/NoSuchFile.java", "writeJvmClass", 65, 96, 85, 90, id_="no-file"),
        entry(demo, "writeJvmClass", 66, 96, 85, 90, id_="wrong-line"),
        entry(demo, "writeJvmClass", 65, 96, 50, 90, id_="outside-host"),
    ]
    oracle_path = tmp_path / "oracle.jsonl"
    text = "\n".join(json.dumps(r) for r in rows) + "\nnot json at all\n"
    oracle_path.write_text(text)
    load = load_oracle(oracle_path, root=repo_root)
    assert [r.id for r in load.entries] == ["good"]
    skipped_ids = [sid for sid, _ in load.skipped]
    assert set(skipped_ids) == {"missing-fields", "no-file", "wrong-line", "outside-host", "line 6"}


def test_load_oracle_with_nothing_usable_raises(tmp_path, repo_root):
    oracle_path = tmp_path / "oracle.jsonl"
    oracle_path.write_text(json.dumps({"id": "x", "file": "nope.java"}) + "\n")
    with pytest.raises(EmptyOracleError):
        load_oracle(oracle_path, root=repo_root)


# ---------------------------------------------------------------------------
# evaluation over a dump


def test_demo_dump_recall_is_frozen(repo_root):
    load = load_oracle(repo_root / "fixtures" / "oracle" / "demo_oracle.jsonl", root=repo_root)
    source = DumpSource(repo_root / "fixtures" / "oracle" / "demo_dump.jsonl")
    report = evaluate(load.entries, source, k=5, tolerance=0.03)
    assert report.recall_at(1) == pytest.approx(0.8)
    assert report.recall == pytest.approx(0.9)
    hits = {v.entry_id: v.matched_rank for v in report.verdicts}
    assert hits["demo-render"] == 2
    assert hits["demo-digestBlock"] is None


def test_acceptance_oracle_recall_matches_the_construction(repo_root):
    """Every verdict is forced by how the dump was built, so the recall values
    are hand-computable: 11 rank-1 hits, one rank-2, one rank-5, 7 misses."""
    oracle_dir = repo_root / "fixtures" / "oracle"
    load = load_oracle(oracle_dir / "acceptance_oracle.jsonl", root=repo_root)
    assert len(load.entries) == 20 and load.skipped == ()
    report = evaluate(load.entries, DumpSource(oracle_dir / "acceptance_dump.jsonl"), k=5, tolerance=0.03)
    assert report.recall_at(1) == pytest.approx(11 / 20)
    assert report.recall_at(2) == pytest.approx(12 / 20)
    assert report.recall_at(4) == pytest.approx(12 / 20)
    assert report.recall_at(5) == pytest.approx(13 / 20)
    manifest = json.loads((oracle_dir / "acceptance_manifest.json").read_text())
    for verdict in report.verdicts:
        assert verdict.matched_rank == manifest[verdict.entry_id]["expected_rank"], verdict.entry_id


def test_report_json_shape(repo_root):
    load = load_oracle(repo_root / "fixtures" / "oracle" / "demo_oracle.jsonl", root=repo_root)
    report = evaluate(load.entries, DumpSource(repo_root / "fixtures" / "oracle" / "demo_dump.jsonl"))
    payload = report.to_json()
    assert payload["k"] == 5
    assert payload["tolerance"] == 0.03
    assert payload["total"] == 10
    assert payload["recall_at"]["5"] == pytest.approx(0.9)
    text = format_report(report)
    assert "recall@5" in text


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_recall_is_monotone_in_k(data):
    n = data.draw(st.integers(1, 8))
    verdicts = tuple(
        EntryVerdict(entry_id=f"e{i}", matched_rank=data.draw(st.one_of(st.none(), st.integers(1, 6))), considered=5)
        for i in range(n)
    )
    report = EvalReport(k=5, tolerance=0.03, verdicts=verdicts)
    values = [report.recall_at(j) for j in range(1, 6)]
    assert values == sorted(values)
    assert all(0.0 <= v <= 1.0 for v in values)


# ---------------------------------------------------------------------------
# repeated-run statistics


def test_textbook_case_against_integration_oracle():
    stats = repeated_stats([10, 12, 9, 11, 13], baseline=10.0)
    assert stats.n == 5
    assert stats.mean == pytest.approx(11.0)
    assert stats.sd == pytest.approx(math.sqrt(2.5))
    assert stats.t == pytest.approx(math.sqrt(2.0))
    assert stats.dof == 4
    assert not stats.degenerate
    assert stats.p == pytest.approx(oracles.t_two_sided_p(math.sqrt(2.0), 4), abs=1e-9)


def test_zero_variance_conventions():
    flat = repeated_stats([0.8, 0.8, 0.8], baseline=0.8)
    assert flat.degenerate
    assert flat.t == 0.0 and flat.p == 1.0
    apart = repeated_stats([0.9, 0.9, 0.9], baseline=0.8)
    assert apart.degenerate
    assert math.isinf(apart.t) and apart.t > 0
    assert apart.p == 0.0
    below = repeated_stats([0.7, 0.7], baseline=0.8)
    assert math.isinf(below.t) and below.t < 0


def test_insufficient_samples():
    with pytest.raises(InsufficientSamplesError):
        repeated_stats([0.5], baseline=0.4)


@settings(max_examples=120, deadline=None)
@given(
    st.lists(st.floats(0.0, 1.0, allow_nan=False), min_size=2, max_size=12),
    st.floats(0.0, 1.0, allow_nan=False),
)
def test_p_value_agrees_with_integration_oracle(values, baseline):
    stats = repeated_stats(values, baseline=baseline)
    if stats.degenerate:
        return
    assert stats.p == pytest.approx(oracles.t_two_sided_p(stats.t, stats.dof), abs=1e-9)
    assert 0.0 <= stats.p <= 1.0
