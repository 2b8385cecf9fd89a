"""Suggestion lifecycle: normalize raw line ranges, validate extract-method
preconditions, and filter non-useful survivors.

States move along raw -> normalized -> {invalid | valid} -> {filtered | useful}.
Rejections carry a category from the closed set in REJECTION_CATEGORIES and are
produced in a fixed check order so runs are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .dataflow import Cfg, LivenessResult, fragment_flow, fragment_io, must_assign_at_leaks
from .errors import EmptyRangeError
from .lexer import KEYWORDS
from .source_model import MethodModel, statements_in_range

REJECTION_CATEGORIES = frozenset(
    [
        "out_of_bounds",
        "inverted_range",
        "unalignable",
        "jump_crosses_boundary",
        "multiple_outputs",
        "conditional_return",
        "whole_body",
        "empty_fragment",
        "name_invalid",
    ]
)

INVALID_ORDER = (
    "out_of_bounds",
    "inverted_range",
    "unalignable",
    "name_invalid",
    "jump_crosses_boundary",
    "conditional_return",
    "multiple_outputs",
)


@dataclass(frozen=True, slots=True)
class RejectionReason:
    category: str
    detail: str

    def __post_init__(self) -> None:
        if self.category not in REJECTION_CATEGORIES:
            raise ValueError(f"unknown rejection category {self.category!r}")
        if not self.detail:
            raise ValueError("rejection detail must be non-empty")


@dataclass(frozen=True, slots=True)
class Provenance:
    iteration: int
    index: int
    provider_id: str = ""

    @property
    def uid(self) -> str:
        return f"{self.iteration}:{self.index}"


@dataclass(frozen=True, slots=True)
class Suggestion:
    proposed_name: str
    raw_range: tuple[int, int]
    state: str = "raw"
    normalized_range: tuple[int, int] | None = None
    fragment: tuple[int, ...] | None = None
    reason: RejectionReason | None = None
    provenance: Provenance = Provenance(0, 0)
    norm_failure: str | None = None  # out_of_bounds | inverted_range | unalignable

    def terminal(self) -> bool:
        return self.state in ("invalid", "filtered", "useful")


_VALID_STATES = {"raw", "normalized", "invalid", "valid", "filtered", "useful"}
_TRANSITIONS = {
    "raw": {"normalized"},
    "normalized": {"invalid", "valid"},
    "valid": {"filtered", "useful"},
}


def _advance(s: Suggestion, new_state: str, **changes) -> Suggestion:
    if new_state not in _VALID_STATES:
        raise ValueError(f"unknown state {new_state!r}")
    allowed = _TRANSITIONS.get(s.state, set())
    if new_state not in allowed:
        raise ValueError(f"illegal transition {s.state} -> {new_state}")
    return replace(s, state=new_state, **changes)


def is_java_identifier(name: str) -> bool:
    if not name:
        return False
    if name in KEYWORDS:
        return False
    first = name[0]
    if not (first.isalpha() or first in ("_", "$")):
        return False
    return all(ch.isalnum() or ch in ("_", "$") for ch in name[1:])


# ---------------------------------------------------------------------------
# normalize


def normalize(model: MethodModel, s: Suggestion) -> Suggestion:
    """Snap the raw range outward to a complete sibling statement sequence.

    Never raises: boundary failures are recorded on the suggestion and turned
    into rejections by validate. The normalized range is canonical (trimmed to
    the run's actual statement extent), so identical fragments reached from
    noisy boundaries group together downstream.
    """
    if s.state != "raw":
        raise ValueError(f"normalize expects a raw suggestion, got {s.state}")
    a, b = s.raw_range
    lo, hi = min(a, b), max(a, b)
    try:
        res = statements_in_range(model, lo, hi)
    except EmptyRangeError:
        return _advance(s, "normalized", norm_failure="out_of_bounds")
    if a > b:
        return _advance(s, "normalized", norm_failure="inverted_range")
    if res.span is None:
        return _advance(s, "normalized", norm_failure="unalignable")
    return _advance(s, "normalized", normalized_range=res.span, fragment=res.ids)


# ---------------------------------------------------------------------------
# validate


def _invalid(s: Suggestion, category: str, detail: str) -> Suggestion:
    return _advance(s, "invalid", reason=RejectionReason(category, detail))


def validate(model: MethodModel, cfg: Cfg, live: LivenessResult, s: Suggestion) -> Suggestion:
    """Apply the precondition checks in the fixed order; first failure wins."""
    if s.state != "normalized":
        raise ValueError(f"validate expects a normalized suggestion, got {s.state}")

    if s.norm_failure == "out_of_bounds":
        return _invalid(s, "out_of_bounds", f"range {s.raw_range[0]}..{s.raw_range[1]} selects no statement of the method body")
    if s.norm_failure == "inverted_range":
        return _invalid(s, "inverted_range", f"range {s.raw_range[0]}..{s.raw_range[1]} ends before it starts")
    if s.norm_failure == "unalignable":
        return _invalid(
            s, "unalignable", "no complete-statement sequence encloses the range; statements share lines with enclosing syntax"
        )
    assert s.fragment is not None

    if not is_java_identifier(s.proposed_name):
        return _invalid(s, "name_invalid", f"{s.proposed_name!r} is not a legal Java identifier")
    if s.proposed_name in model.sibling_method_names:
        return _invalid(s, "name_invalid", f"{s.proposed_name!r} collides with a method of {model.type_name}")

    flow = fragment_flow(model, cfg, s.fragment)
    for sid in sorted(flow.subtree):
        stmt = model.stmt(sid)
        j = stmt.jump
        if j is None or j.kind not in ("break", "continue"):
            continue
        if j.unresolved:
            return _invalid(s, "jump_crosses_boundary", f"line {stmt.span.start_line}: labeled {j.kind} targets code outside the method model")
        if j.target not in flow.subtree:
            tgt = model.stmt(j.target)
            return _invalid(
                s,
                "jump_crosses_boundary",
                f"line {stmt.span.start_line}: {j.kind} targets the {tgt.kind} starting at line {tgt.span.start_line}, outside the fragment",
            )

    if flow.has_return and not flow.all_paths_return:
        return _invalid(s, "conditional_return", "fragment returns on some paths but falls through on others")

    inputs, outputs = fragment_io(model, cfg, live, s.fragment)
    if len(outputs) > 1:
        return _invalid(s, "multiple_outputs", f"fragment produces {len(outputs)} live results: {', '.join(sorted(outputs))}")
    if len(outputs) == 1:
        out = next(iter(outputs))
        if flow.all_paths_return:
            return _invalid(s, "multiple_outputs", f"fragment returns on all paths and also leaves {out!r} live")
        if not must_assign_at_leaks(model, cfg, flow, out) and out not in inputs:
            return _invalid(
                s,
                "multiple_outputs",
                f"{out!r} is assigned on only some paths through the fragment and cannot be passed through",
            )
    return _advance(s, "valid")


# ---------------------------------------------------------------------------
# filter_useful


def filter_useful(model: MethodModel, s: Suggestion) -> Suggestion:
    if s.state != "valid":
        raise ValueError(f"filter_useful expects a valid suggestion, got {s.state}")
    assert s.fragment is not None
    if len(s.fragment) == 0:
        return _advance(s, "filtered", reason=RejectionReason("empty_fragment", "fragment contains no statements"))
    frag_lines = model.statement_lines(s.fragment)
    body_lines = model.body_statement_lines()
    if frag_lines == body_lines:
        return _advance(s, "filtered", reason=RejectionReason("whole_body", "fragment covers the whole method body"))
    return _advance(s, "useful")


def run_lifecycle(model: MethodModel, cfg: Cfg, live: LivenessResult, s: Suggestion) -> Suggestion:
    """raw -> terminal state in one call."""
    s = normalize(model, s)
    s = validate(model, cfg, live, s)
    if s.state == "valid":
        s = filter_useful(model, s)
    return s
