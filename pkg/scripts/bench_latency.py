"""Benchmark the non-provider half of the suggestion pipeline.

Generates a synthetic Java method of a requested size, runs the pipeline with
a canned in-process provider, and reports analysis_seconds (CFG + liveness +
prompt assembly + lifecycle + ranking + planning; provider wall time is
tracked separately by the pipeline and excluded here).

Usage:
    python scripts/bench_latency.py [--lines 500] [--repeat 5]
"""

from __future__ import annotations

import argparse
import statistics

from carver.pipeline import suggest_pipeline
from carver.provider import Provider, ProviderConfig
from carver.source_model import locate_method, parse_unit


def synthetic_source(method_lines: int = 500) -> str:
    """A parseable class whose single method spans `method_lines` lines,
    mixing declarations, branches, and assignments."""
    lines = ["class Bench {", "    static int churn(int seed, int rounds) {", "        int acc = seed;"]
    # 4 lines per block: declaration, branch, guarded assignment, close
    blocks = max(1, (method_lines - 4) // 4)
    for i in range(blocks):
        lines.append(f"        int v{i} = seed + {i};")
        lines.append(f"        if (v{i} % rounds > 0) {{")
        lines.append(f"            acc = acc + v{i};")
        lines.append("        }")
    lines.append("        return acc;")
    lines.append("    }")
    lines.append("}")
    return "\n".join(lines) + "\n"


class CannedProvider(Provider):
    """Returns one fixed completion instantly; keeps provider time ~zero."""

    provider_id = "canned"

    def __init__(self, completion: str):
        self.completion = completion

    def complete(self, messages, config, iteration):
        return self.completion


def bench_once(text: str) -> float:
    unit = parse_unit(text, "Bench.java")
    model = locate_method(unit, "churn")
    mid = model.decl_line + (model.close_line - model.decl_line) // 2
    completion = (
        f'[{{"function_name": "stepOne", "line_start": {model.decl_line + 2}, "line_end": {model.decl_line + 5}}},'
        f' {{"function_name": "stepTwo", "line_start": {mid}, "line_end": {mid + 3}}}]'
    )
    config = ProviderConfig(prompt_budget_chars=1_000_000)
    result = suggest_pipeline(unit, model, CannedProvider(completion), config)
    return result.analysis_seconds


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lines", type=int, default=500, help="method size in lines")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    text = synthetic_source(args.lines)
    times = [bench_once(text) for _ in range(args.repeat)]
    print(f"method lines: {args.lines}")
    print(f"analysis seconds: min {min(times):.4f}  median {statistics.median(times):.4f}  max {max(times):.4f}")


if __name__ == "__main__":
    main()
