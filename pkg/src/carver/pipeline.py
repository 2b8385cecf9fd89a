"""End-to-end suggestion pipeline: prompt, sample, normalize, validate,
filter, rank.

Timing splits provider wall time from analysis time so the analysis budget
can be asserted independently of network latency.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .candidates import Suggestion, run_lifecycle
from .dataflow import build_cfg, liveness
from .errors import CarverError
from .extractor import plan as build_plan
from .provider import CompletionRecord, Provider, ProviderConfig, build_prompt, parse_completion, sample
from .ranking import RankedGroup, aggregate, rank
from .source_model import MethodModel, SourceUnit


@dataclass(frozen=True)
class GroupView:
    """One ranked group, flattened for CLI and HTTP responses."""

    index: int
    name: str
    range: tuple[int, int]
    frequency: int
    names: tuple[str, ...]
    fragment_lines: tuple[int, ...]
    signature: str | None  # None when planning the group fails

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "name": self.name,
            "range": list(self.range),
            "frequency": self.frequency,
            "names": list(self.names),
            "fragment_lines": list(self.fragment_lines),
            "signature": self.signature,
        }


def suggestion_summary(s: Suggestion) -> dict:
    """Rejection-trail entry for one suggestion, terminal state included."""
    out = {
        "name": s.proposed_name,
        "raw_range": list(s.raw_range),
        "state": s.state,
        "normalized_range": list(s.normalized_range) if s.normalized_range else None,
        "provenance": s.provenance.uid if s.provenance else None,
    }
    if s.reason is not None:
        out["reason"] = {"category": s.reason.category, "detail": s.reason.detail}
    return out


@dataclass(frozen=True)
class PipelineResult:
    path: str
    method_name: str
    method_span: tuple[int, int]  # declaration line .. closing brace line
    records: tuple[CompletionRecord, ...]
    suggestions: tuple[Suggestion, ...]  # all sampled suggestions, terminal states
    groups: tuple[RankedGroup, ...]
    group_views: tuple[GroupView, ...]
    diagnostics: tuple[str, ...] = field(default_factory=tuple)
    analysis_seconds: float = 0.0
    provider_seconds: float = 0.0

    def to_json(self) -> dict:
        # no timing fields: printed output must be byte-identical across
        # replayed runs, timings live on the dataclass only
        return {
            "path": self.path,
            "method": self.method_name,
            "method_span": list(self.method_span),
            "iterations": len(self.records),
            "groups": [g.to_json() for g in self.group_views],
            "suggestions": [suggestion_summary(s) for s in self.suggestions],
            "diagnostics": list(self.diagnostics),
        }


def suggest_pipeline(
    unit: SourceUnit,
    model: MethodModel,
    provider: Provider,
    config: ProviderConfig,
    top_n: int = 3,
    system_preamble: str | None = None,
) -> PipelineResult:
    t0 = time.perf_counter()
    cfg = build_cfg(model)
    live = liveness(cfg, model)
    prompt = build_prompt(model, config, system_preamble)
    t1 = time.perf_counter()

    records = sample(provider, prompt, config)
    t2 = time.perf_counter()

    diagnostics: list[str] = []
    raw: list[Suggestion] = []
    for rec in records:
        if rec.error is not None:
            diagnostics.append(f"iteration {rec.iteration}: request failed: {rec.error}")
            continue
        parsed, diags = parse_completion(rec.raw_text, unit, rec.iteration, provider.provider_id)
        rec.parsed = parsed
        rec.diagnostics = diags
        diagnostics.extend(f"iteration {rec.iteration}: {d}" for d in diags)
        raw.extend(parsed)

    terminal = tuple(run_lifecycle(model, cfg, live, s) for s in raw)
    useful = [s for s in terminal if s.state == "useful"]
    groups = tuple(rank(aggregate(useful), top_n=top_n))

    views = []
    for idx, group in enumerate(groups):
        try:
            signature = build_plan(model, cfg, live, group).signature_preview()
        except CarverError as exc:
            signature = None
            diagnostics.append(f"group {idx}: planning failed: {exc}")
        views.append(
            GroupView(
                index=idx,
                name=group.representative_name,
                range=group.canonical_range,
                frequency=group.frequency,
                names=group.names,
                fragment_lines=tuple(sorted(model.statement_lines(group.fragment))),
                signature=signature,
            )
        )
    t3 = time.perf_counter()

    return PipelineResult(
        path=unit.path,
        method_name=model.name,
        method_span=(model.decl_line, model.close_line),
        records=tuple(records),
        suggestions=terminal,
        groups=groups,
        group_views=tuple(views),
        diagnostics=tuple(diagnostics),
        analysis_seconds=(t1 - t0) + (t3 - t2),
        provider_seconds=t2 - t1,
    )
