"""Suggestion lifecycle: normalization, validation order, and filtering."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carver.candidates import (
    Suggestion,
    filter_useful,
    is_java_identifier,
    normalize,
    run_lifecycle,
    validate,
)

import oracles
from conftest import analyzed, snippet_model, unit_for


BODY = [
    "int total = 0;",          # line 3
    "int limit = a * b;",      # line 4
    "for (int k = 0; k < limit; k++) {",  # 5
    "    if (k == b) {",       # 6
    "        continue;",       # 7
    "    }",                   # 8
    "    total += k;",         # 9
    "}",                       # 10
    "if (total > limit) {",    # 11
    "    return limit;",       # 12
    "}",                       # 13
    "return total;",           # 14
]


@pytest.fixture(scope="module")
def host():
    return snippet_model(BODY)


def lifecycle(host, name, rng):
    model, cfg, live = host
    return run_lifecycle(model, cfg, live, Suggestion(proposed_name=name, raw_range=rng))


# ---------------------------------------------------------------------------
# normalization


def test_exact_sibling_run_is_kept(host):
    s = lifecycle(host, "computeLimit", (4, 4))
    assert s.state == "useful"
    assert s.normalized_range == (4, 4)


def test_two_live_declarations_cannot_leave_the_fragment(host):
    s = lifecycle(host, "setupCounters", (3, 4))
    assert s.state == "invalid"
    assert s.reason.category == "multiple_outputs"
    assert "limit" in s.reason.detail and "total" in s.reason.detail


def test_noisy_boundaries_snap_to_the_same_fragment(host):
    model, cfg, live = host
    exact = lifecycle(host, "tally", (5, 10))
    into_loop = lifecycle(host, "tally", (5, 9))
    assert exact.state == into_loop.state == "useful"
    assert exact.normalized_range == into_loop.normalized_range == (5, 10)
    assert exact.fragment == into_loop.fragment


def test_normalized_range_is_canonical_not_raw(host):
    # the raw range ends on the brace line 8; the run is just the if (6..8)
    s = lifecycle(host, "skipMatch", (6, 8))
    assert s.normalized_range == (6, 8)
    s2 = lifecycle(host, "skipMatch", (7, 8))
    # 7..8 covers the continue plus the closing brace of the if: the brace
    # line belongs to the if, so the enclosure grows to the whole if
    assert s2.normalized_range == (6, 8)


def test_out_of_bounds_and_inversion_and_names(host):
    assert lifecycle(host, "f", (400, 410)).reason.category == "out_of_bounds"
    assert lifecycle(host, "f", (9, 6)).reason.category == "inverted_range"
    assert lifecycle(host, "9bad", (3, 4)).reason.category == "name_invalid"
    assert lifecycle(host, "class", (3, 4)).reason.category == "name_invalid"
    assert lifecycle(host, "", (3, 4)).reason.category == "name_invalid"


def test_out_of_bounds_wins_over_inversion_and_bad_name(host):
    s = lifecycle(host, "9bad", (410, 400))
    assert s.reason.category == "out_of_bounds"


def test_inversion_wins_over_bad_name(host):
    s = lifecycle(host, "9bad", (9, 6))
    assert s.reason.category == "inverted_range"


def test_jump_rejection_and_its_order(host):
    # the if at 6..8 contains a continue that targets the loop outside
    s = lifecycle(host, "skipMatch", (6, 8))
    assert s.state == "invalid"
    assert s.reason.category == "jump_crosses_boundary"
    # a bad name is reported before the jump analysis runs
    s = lifecycle(host, "bad name", (6, 8))
    assert s.reason.category == "name_invalid"


def test_conditional_return_rejection(host):
    s = lifecycle(host, "maybeReturn", (11, 13))
    assert s.state == "invalid"
    assert s.reason.category == "conditional_return"


def test_all_paths_return_fragment_is_useful(host):
    s = lifecycle(host, "finishUp", (11, 14))
    assert s.state == "useful"


def test_multiple_outputs_rejection():
    model, cfg, live = snippet_model(
        [
            "int x = a + 1;",
            "int y = b + 2;",
            "return x + y;",
        ]
    )
    s = run_lifecycle(model, cfg, live, Suggestion(proposed_name="makeBoth", raw_range=(3, 4)))
    assert s.state == "invalid"
    assert s.reason.category == "multiple_outputs"
    assert "x" in s.reason.detail and "y" in s.reason.detail


def test_partial_assignment_without_inbound_value_is_rejected():
    model, cfg, live = snippet_model(
        [
            "int r = 0;",
            "if (a > b) {",
            "    r = a;",
            "}",
            "int keep = r + 1;",
            "return keep;",
        ]
    )
    # the fragment never reads r, so the extracted method cannot hand the
    # old value back on the skipping path
    s = run_lifecycle(model, cfg, live, Suggestion(proposed_name="pickA", raw_range=(4, 6)))
    assert s.state == "invalid"
    assert s.reason.category == "multiple_outputs"


def test_partial_assignment_with_inbound_value_is_allowed():
    model, cfg, live = snippet_model(
        [
            "int r = 0;",
            "if (a > b) {",
            "    r = r + a;",
            "}",
            "int keep = r + 1;",
            "return keep;",
        ]
    )
    # here r is an input too, so the caller can rebind r = pickA(r, a, b)
    # and the skipping path returns the value unchanged
    s = run_lifecycle(model, cfg, live, Suggestion(proposed_name="pickA", raw_range=(4, 6)))
    assert s.state == "useful"


def test_partial_assignment_of_fresh_variable_is_rejected():
    model, cfg, live = snippet_model(
        [
            "if (a > b) {",
            "    b = a;",
            "}",
            "return b;",
        ]
    )
    model2, cfg2, live2 = snippet_model(
        [
            "int r;",
            "if (a > b) {",
            "    r = a;",
            "} else {",
            "    b = a;",
            "}",
            "return r + b;",
        ]
    )
    s = run_lifecycle(model2, cfg2, live2, Suggestion(proposed_name="pick", raw_range=(4, 8)))
    assert s.state == "invalid"
    assert s.reason.category == "multiple_outputs"


def test_whole_body_is_filtered_not_invalid(host):
    s = lifecycle(host, "doEverything", (3, 14))
    assert s.state == "filtered"
    assert s.reason.category == "whole_body"


def test_name_collision_with_sibling_method(zoo_dir):
    model, cfg, live = analyzed(zoo_dir / "SyntaxZoo.java", "sumAll")
    body_start = model.body_span[0]
    s = run_lifecycle(model, cfg, live, Suggestion(proposed_name="oneLiner", raw_range=(body_start, body_start)))
    assert s.state == "invalid"
    assert s.reason.category == "name_invalid"
    assert "collides" in s.reason.detail


def test_identifier_rules():
    assert is_java_identifier("extractChunk")
    assert is_java_identifier("_x$2")
    assert not is_java_identifier("2start")
    assert not is_java_identifier("with space")
    assert not is_java_identifier("while")
    assert not is_java_identifier("true")


def test_lifecycle_stages_refuse_wrong_states(host):
    model, cfg, live = host
    raw = Suggestion(proposed_name="f", raw_range=(3, 4))
    with pytest.raises(ValueError):
        validate(model, cfg, live, raw)
    with pytest.raises(ValueError):
        filter_useful(model, raw)
    normalized = normalize(model, raw)
    with pytest.raises(ValueError):
        normalize(model, normalized)


# ---------------------------------------------------------------------------
# properties


@settings(max_examples=300, deadline=None)
@given(
    start=st.integers(min_value=-30, max_value=60),
    end=st.integers(min_value=-30, max_value=60),
    name=st.text(max_size=12),
)
def test_lifecycle_is_total_and_terminal(host, start, end, name):
    s = lifecycle(host, name, (start, end))
    assert s.terminal()
    if s.state in ("useful", "filtered"):
        assert s.normalized_range is not None


@settings(max_examples=300, deadline=None)
@given(
    start=st.integers(min_value=1, max_value=40),
    end=st.integers(min_value=1, max_value=40),
)
def test_normalization_is_idempotent(host, start, end):
    """Feeding a normalized range back through the lifecycle lands on the
    same fragment."""
    first = lifecycle(host, "probe", (start, end))
    if first.normalized_range is None:
        return
    again = lifecycle(host, "probe", first.normalized_range)
    assert again.normalized_range == first.normalized_range
    assert again.fragment == first.fragment


@settings(max_examples=200, deadline=None)
@given(
    start=st.integers(min_value=1, max_value=40),
    end=st.integers(min_value=1, max_value=40),
)
def test_normalized_output_is_an_aligned_run(host, start, end):
    model, _, _ = host
    s = lifecycle(host, "probe", (start, end))
    if s.fragment is None:
        return
    runs = {tuple(run) for run, _, _ in oracles.aligned_runs(model)}
    assert tuple(s.fragment) in runs
