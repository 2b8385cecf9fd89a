#!/usr/bin/env python3
"""Regenerate the recorded-completion fixtures for the demo corpus.

Outputs, all deterministic for a given corpus and prompt text:
  fixtures/replay/<digest>.json   five completions per demo method
  fixtures/oracle/demo_oracle.jsonl   ten labelled extractions
  fixtures/oracle/demo_dump.jsonl     pipeline output over the replay fixtures

The completions are synthetic but realistic: fragment ranges are taken from
the analyzer's own enumeration of extractable fragments, then salted with the
failure shapes a sampled model actually produces (whole-body ranges, prose,
out-of-range lines, bad names, inverted ranges).
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from carver.candidates import Suggestion, run_lifecycle
from carver.dataflow import build_cfg, liveness
from carver.provider import ProviderConfig, ReplayProvider, build_prompt, request_digest
from carver.pipeline import suggest_pipeline
from carver.source_model import locate_method, parse_unit

DEMO = REPO / "fixtures" / "java" / "demo"
REPLAY = REPO / "fixtures" / "replay"
ORACLE_DIR = REPO / "fixtures" / "oracle"

# the ten demo targets, one method per file
TARGETS = [
    ("JvmClassWriter.java", "writeJvmClass"),
    ("CsvParser.java", "parseRecord"),
    ("RateLimiter.java", "tryAcquire"),
    ("MatrixOps.java", "multiply"),
    ("HttpRouter.java", "route"),
    ("RetryPolicy.java", "execute"),
    ("TemplateEngine.java", "render"),
    ("InventoryLedger.java", "reconcile"),
    ("PathNormalizer.java", "normalize"),
    ("ChecksumStream.java", "digestBlock"),
]

VERBS = ("extract", "handle", "process")


def valid_fragments(model, cfg, live):
    """All extractable sibling runs, largest first: (start, end, line_count)."""
    out = []
    seen = set()
    parents = {s.parent for s in model.statements}
    for parent in parents:
        sibs = model.root_ids if parent is None else model.stmt(parent).children
        for i in range(len(sibs)):
            for j in range(i, len(sibs)):
                run = sibs[i : j + 1]
                lo = model.stmt(run[0]).span.start_line
                hi = max(model.stmt(r).span.end_line for r in run)
                if (lo, hi) in seen:
                    continue
                seen.add((lo, hi))
                s = run_lifecycle(model, cfg, live, Suggestion(proposed_name="probe", raw_range=(lo, hi)))
                if s.state == "useful":
                    out.append((s.normalized_range[0], s.normalized_range[1]))
    out = sorted(set(out), key=lambda r: (-(r[1] - r[0]), r[0]))
    return out


def suggestion_obj(name: str, start: int, end: int) -> dict:
    return {"function_name": name, "line_start": start, "line_end": end}


def jvm_writer_completions(model) -> list[str]:
    """Hand-scripted scenario for the class-file writer: the three table
    blocks compete, whole-body and malformed entries ride along."""
    body_lo, body_hi = model.body_span
    c1 = [
        suggestion_obj("writeInterfaces", 77, 80),
        suggestion_obj("writeFields", 81, 84),
        suggestion_obj("writeMethods", 85, 90),
    ]
    c2 = [
        suggestion_obj("writeMethods", 85, 90),
        suggestion_obj("writeHeader", 67, 76),
        suggestion_obj("writeClassFile", body_lo, body_hi),
    ]
    c3 = [
        suggestion_obj("writeMethods", 85, 89),
        suggestion_obj("writeFields", 81, 84),
        suggestion_obj("write methods!", 77, 80),
    ]
    c4 = "The method is already quite readable, but here are some options to consider."
    c5 = [
        suggestion_obj("writeAttributes", 91, 94),
        suggestion_obj("tableDump", 200, 210),
        suggestion_obj("flip", 90, 85),
    ]
    return [
        json.dumps(c1),
        "Here are my suggestions:\n```json\n" + json.dumps(c2, indent=2) + "\n```",
        json.dumps(c3),
        c4,
        "```\n" + json.dumps(c5) + "\n```",
    ]


def generic_completions(method_name: str, model, fragments) -> list[str]:
    """Five completions per ordinary target: the best fragment three times
    (once under a minority name), runners-up, whole body, and noise."""
    stem = method_name[0].upper() + method_name[1:]
    names = [f"{verb}{stem}" for verb in VERBS]
    body_lo, body_hi = model.body_span
    f1 = fragments[0]
    f2 = fragments[1] if len(fragments) > 1 else fragments[0]
    f3 = fragments[2] if len(fragments) > 2 else fragments[-1]
    c1 = [suggestion_obj(names[0], *f1), suggestion_obj(names[1], *f2)]
    c2 = [suggestion_obj(names[0], *f1), suggestion_obj("doWork", body_lo, body_hi)]
    c3 = [suggestion_obj(names[1], *f1), suggestion_obj(names[2], *f3)]
    c4 = [suggestion_obj(names[0], *f2), suggestion_obj("bad name", *f3), suggestion_obj("probe", 9000, 9005)]
    c5 = "I would extract the main loop.\n```json\n" + json.dumps([suggestion_obj(names[0], *f1)]) + "\n```"
    return [json.dumps(c1), json.dumps(c2), json.dumps(c3), json.dumps(c4), c5]


def pick_oracle(method_name: str, fragments) -> tuple[tuple[int, int], str]:
    """Ground-truth extraction per target. Most point at the dominant
    fragment; render labels the runner-up (a rank-2 hit) and digestBlock a
    fragment the completions never mention (a deliberate miss)."""
    stem = method_name[0].upper() + method_name[1:]
    if method_name == "writeJvmClass":
        return (85, 90), "writeMethods"
    if method_name == "render" and len(fragments) > 1:
        return fragments[1], f"handle{stem}"
    if method_name == "digestBlock":
        suggested = set(fragments[:3])
        for frag in fragments[3:]:
            if frag not in suggested:
                return frag, f"fold{stem}"
    return fragments[0], f"extract{stem}"


def main() -> int:
    REPLAY.mkdir(parents=True, exist_ok=True)
    ORACLE_DIR.mkdir(parents=True, exist_ok=True)
    config = ProviderConfig()
    oracle_lines = []
    dump_lines = []

    for filename, method_name in TARGETS:
        path = DEMO / filename
        unit = parse_unit(path.read_text(encoding="utf-8"), str(path))
        model = locate_method(unit, method_name)
        cfg = build_cfg(model)
        live = liveness(cfg, model)
        fragments = valid_fragments(model, cfg, live)
        if not fragments:
            raise SystemExit(f"{filename}:{method_name} has no extractable fragment")

        if method_name == "writeJvmClass":
            completions = jvm_writer_completions(model)
        else:
            completions = generic_completions(method_name, model, fragments)

        prompt = build_prompt(model, config)
        digest = request_digest(prompt.messages(), config)
        fixture = {
            "digest": digest,
            "prompt_text": "\n\n".join(f"[{m['role']}]\n{m['content']}" for m in prompt.messages()),
            "completions": completions,
        }
        (REPLAY / f"{digest}.json").write_text(json.dumps(fixture, indent=2) + "\n", encoding="utf-8")
        print(f"{filename}:{method_name} -> {digest[:12]}... ({len(fragments)} fragments)")

        entry_id = f"demo-{method_name}"
        oracle_range, oracle_name = pick_oracle(method_name, fragments)
        oracle_lines.append(
            {
                "id": entry_id,
                "file": f"fixtures/java/demo/{filename}",
                "method_name": method_name,
                "method_start": model.decl_line,
                "method_end": model.close_line,
                "extracted_start": oracle_range[0],
                "extracted_end": oracle_range[1],
                "extracted_name": oracle_name,
            }
        )

        provider = ReplayProvider(REPLAY)
        result = suggest_pipeline(unit, model, provider, config, top_n=5)
        dump_lines.append(
            {
                "id": entry_id,
                "suggestions": [
                    {"start": g.canonical_range[0], "end": g.canonical_range[1], "name": g.representative_name}
                    for g in result.groups
                ],
            }
        )

    with open(ORACLE_DIR / "demo_oracle.jsonl", "w", encoding="utf-8") as fh:
        for line in oracle_lines:
            fh.write(json.dumps(line) + "\n")
    with open(ORACLE_DIR / "demo_dump.jsonl", "w", encoding="utf-8") as fh:
        for line in dump_lines:
            fh.write(json.dumps(line) + "\n")
    print(f"wrote {len(oracle_lines)} oracle entries and {len(dump_lines)} dump rows")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
