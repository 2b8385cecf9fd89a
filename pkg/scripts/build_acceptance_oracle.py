#!/usr/bin/env python3
"""Regenerate the 20-entry synthetic oracle and its hand-planned dump.

Every entry's verdict is fixed BY CONSTRUCTION, so the expected recall values
are plain arithmetic over the plan, not something measured from the harness:

    hits (13): 9 exact rank-1, 1 within-tolerance rank-1 (host 39 LOC,
               allowance floor(0.03*39)=1), 1 signature-line-inclusion rank-1
               (the extra line bears no statement tokens), 1 rank-2, 1 rank-5
    misses (7): 2 off-by-one on small hosts (allowance 0), 1 inverted range,
               1 correct-but-rank-6, 1 entry absent from the dump, 1 empty
               suggestion list, 1 disjoint range

    recall@1 = 11/20, recall@2 = 12/20, recall@5 = 13/20

The construction is verified here with independent line-set arithmetic; the
script refuses to write files if any planned verdict cannot be guaranteed.
"""

from __future__ import annotations

import json
import math
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from carver.candidates import Suggestion, run_lifecycle
from carver.dataflow import build_cfg, liveness
from carver.source_model import locate_method, parse_unit

DEMO = REPO / "fixtures" / "java" / "demo"
ORACLE_DIR = REPO / "fixtures" / "oracle"

# (file, method, kind): kinds drive how the dump row is derived from the
# oracle fragment; see plan() below
PLAN = [
    ("JvmClassWriter.java", "writeJvmClass", "exact"),
    ("JvmClassWriter.java", "writeMemberBody", "exact"),
    ("CsvParser.java", "parseRecord", "tolerance_hit"),
    ("CsvParser.java", "needsQuoting", "off_by_one_miss"),
    ("RateLimiter.java", "tryAcquire", "exact"),
    ("RateLimiter.java", "nanosUntil", "inverted_miss"),
    ("MatrixOps.java", "multiply", "rank5_hit"),
    ("MatrixOps.java", "trace", "exact"),
    ("HttpRouter.java", "route", "rank6_miss"),
    ("HttpRouter.java", "register", "exact"),
    ("RetryPolicy.java", "execute", "signature_inclusion_hit"),
    ("RetryPolicy.java", "delayForAttempt", "exact"),
    ("TemplateEngine.java", "render", "exact"),
    ("TokenBucketLog.java", "append", "absent_miss"),
    ("InventoryLedger.java", "reconcile", "exact"),
    ("InventoryLedger.java", "totalBooked", "empty_miss"),
    ("PathNormalizer.java", "normalize", "off_by_one_miss"),
    ("PathNormalizer.java", "isHidden", "disjoint_miss"),
    ("ChecksumStream.java", "digestBlock", "exact"),
    ("ChecksumStream.java", "buildTable", "rank2_hit"),
]

EXPECTED_RANK = {
    "exact": 1,
    "tolerance_hit": 1,
    "signature_inclusion_hit": 1,
    "rank2_hit": 2,
    "rank5_hit": 5,
    "off_by_one_miss": None,
    "inverted_miss": None,
    "rank6_miss": None,
    "absent_miss": None,
    "empty_miss": None,
    "disjoint_miss": None,
}


def valid_fragments(model, cfg, live):
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
                    out.append(s.normalized_range)
    return sorted(set(out), key=lambda r: (-(r[1] - r[0]), r[0]))


def line_set(rng, bearing):
    if rng is None or rng[0] > rng[1]:
        return frozenset()
    return frozenset(range(rng[0], rng[1] + 1)) & bearing


def check(condition: bool, what: str) -> None:
    if not condition:
        raise SystemExit(f"plan violation: {what}")


def filler_lines(bearing, fragment, allowance, count):
    """Single-line ranges guaranteed NOT to match the fragment, for wrong-rank rows."""
    frag = line_set(fragment, bearing)
    picks = []
    for ln in sorted(bearing):
        if len(frozenset([ln]) ^ frag) > allowance:
            picks.append((ln, ln))
        if len(picks) == count:
            return picks
    raise SystemExit(f"need {count} mismatching filler lines near {fragment}")


def main() -> int:
    ORACLE_DIR.mkdir(parents=True, exist_ok=True)
    oracle_rows = []
    dump_rows = []
    manifest = {}

    for index, (filename, method_name, kind) in enumerate(PLAN, start=1):
        path = DEMO / filename
        unit = parse_unit(path.read_text(encoding="utf-8"), str(path))
        model = locate_method(unit, method_name)
        cfg = build_cfg(model)
        live = liveness(cfg, model)
        fragments = valid_fragments(model, cfg, live)
        check(bool(fragments), f"{filename}:{method_name} has no extractable fragment")
        bearing = model.body_statement_lines()
        host_loc = model.close_line - model.decl_line + 1
        allowance = math.floor(0.03 * host_loc)

        fragment = fragments[0]
        if kind == "signature_inclusion_hit":
            first_line = min(bearing)
            starting = [f for f in fragments if f[0] == first_line]
            check(bool(starting), f"{method_name}: no fragment starts on the first body line")
            fragment = starting[0]

        entry_id = f"acc-{index:02d}-{method_name}"
        suggestions: list[dict] | None
        if kind == "exact":
            suggestions = [{"start": fragment[0], "end": fragment[1], "name": method_name + "Core"}]
        elif kind == "tolerance_hit":
            check(allowance >= 1, f"{method_name}: host {host_loc} LOC gives allowance 0")
            extra = fragment[1] + 1
            check(extra in bearing, f"{method_name}: line {extra} bears no statement")
            suggested = (fragment[0], extra)
            diff = line_set(suggested, bearing) ^ line_set(fragment, bearing)
            check(len(diff) == 1, f"{method_name}: tolerance case deviates by {len(diff)}")
            suggestions = [{"start": suggested[0], "end": suggested[1]}]
        elif kind == "signature_inclusion_hit":
            suggested = (model.decl_line, fragment[1])
            check(
                line_set(suggested, bearing) == line_set(fragment, bearing),
                f"{method_name}: signature lines unexpectedly bear statements",
            )
            suggestions = [{"start": suggested[0], "end": suggested[1]}]
        elif kind == "rank2_hit":
            wrong = filler_lines(bearing, fragment, allowance, 1)
            suggestions = [{"start": a, "end": b} for a, b in wrong]
            suggestions.append({"start": fragment[0], "end": fragment[1]})
        elif kind == "rank5_hit":
            wrong = filler_lines(bearing, fragment, allowance, 4)
            suggestions = [{"start": a, "end": b} for a, b in wrong]
            suggestions.append({"start": fragment[0], "end": fragment[1]})
        elif kind == "rank6_miss":
            wrong = filler_lines(bearing, fragment, allowance, 5)
            suggestions = [{"start": a, "end": b} for a, b in wrong]
            suggestions.append({"start": fragment[0], "end": fragment[1]})
        elif kind == "off_by_one_miss":
            check(allowance == 0, f"{method_name}: off-by-one needs allowance 0, got {allowance}")
            extra = fragment[1] + 1
            if extra not in bearing:
                extra = fragment[0] - 1
                check(extra in bearing, f"{method_name}: no adjacent statement line")
                suggested = (extra, fragment[1])
            else:
                suggested = (fragment[0], extra)
            diff = line_set(suggested, bearing) ^ line_set(fragment, bearing)
            check(len(diff) >= 1, f"{method_name}: off-by-one did not deviate")
            suggestions = [{"start": suggested[0], "end": suggested[1]}]
        elif kind == "inverted_miss":
            suggestions = [{"start": fragment[1], "end": fragment[0] - 1}]
        elif kind == "absent_miss":
            suggestions = None
        elif kind == "empty_miss":
            suggestions = []
        elif kind == "disjoint_miss":
            wrong = filler_lines(bearing, fragment, allowance, 1)
            diff = line_set(wrong[0], bearing) ^ line_set(fragment, bearing)
            check(len(diff) > allowance, f"{method_name}: disjoint case within allowance")
            suggestions = [{"start": wrong[0][0], "end": wrong[0][1]}]
        else:
            raise SystemExit(f"unknown kind {kind}")

        oracle_rows.append(
            {
                "id": entry_id,
                "file": f"fixtures/java/demo/{filename}",
                "method_name": method_name,
                "method_start": model.decl_line,
                "method_end": model.close_line,
                "extracted_start": fragment[0],
                "extracted_end": fragment[1],
            }
        )
        if suggestions is not None:
            dump_rows.append({"id": entry_id, "suggestions": suggestions})
        manifest[entry_id] = {"kind": kind, "expected_rank": EXPECTED_RANK[kind]}

    hits = sum(1 for v in manifest.values() if v["expected_rank"] is not None and v["expected_rank"] <= 5)
    check(hits == 13, f"plan yields {hits} hits at k=5, expected 13")

    with open(ORACLE_DIR / "acceptance_oracle.jsonl", "w", encoding="utf-8") as fh:
        for row in oracle_rows:
            fh.write(json.dumps(row) + "\n")
    with open(ORACLE_DIR / "acceptance_dump.jsonl", "w", encoding="utf-8") as fh:
        for row in dump_rows:
            fh.write(json.dumps(row) + "\n")
    with open(ORACLE_DIR / "acceptance_manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")
    print(f"wrote {len(oracle_rows)} oracle entries, {len(dump_rows)} dump rows, 13/20 planned hits")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
