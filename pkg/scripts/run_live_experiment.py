#!/usr/bin/env python3
"""Run the recall experiment against a live model and keep every artifact.

Not part of CI: it needs network access and an API key. CI covers the same
code paths through recorded fixtures (see fixtures/replay/ and the eval
tests); this script exists to reproduce those fixtures and the headline
numbers from scratch, or to measure a new model/endpoint.

For each oracle entry the full pipeline runs once per repeat: sample
completions, normalize, validate, filter, rank. The top-k ranked ranges are
written to a dump file (one JSON object per entry), the dump is evaluated
against the oracle, and the per-run reports plus summary statistics land in
the output directory:

    out/
      run-01.dump.jsonl     ranked ranges per oracle entry, replayable later
      run-01.report.json    evaluate() output for that dump
      ...
      summary.json          recalls per run, mean/sd/t/p when --baseline given

With --record DIRECTORY every provider completion is also captured as a
replay fixture, so a later `carver eval --provider replay --fixture-dir ...`
or `pytest` run reproduces this experiment byte for byte without the network.

The API key is read from the environment variable named by api_key_env in
the config (default CARVER_API_KEY). There is no flag for the key itself and
it never appears in logs or artifacts.

Usage:
    export CARVER_API_KEY=...
    python scripts/run_live_experiment.py --oracle fixtures/oracle/demo_oracle.jsonl \
        --out results/ --repeat 3 --baseline 0.48
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from carver.config import load_config, make_provider
from carver.errors import CarverError
from carver.evalharness import DumpSource, evaluate, format_report, load_oracle, repeated_stats
from carver.pipeline import suggest_pipeline
from carver.provider import RecordingProvider
from carver.source_model import locate_method, parse_unit


def run_once(load, provider, config, dump_path: Path) -> dict:
    """One full pass over the oracle; writes the dump and returns the report JSON."""
    units = {}
    with open(dump_path, "w", encoding="utf-8") as out:
        for resolved in load.entries:
            if resolved.path not in units:
                text = Path(resolved.path).read_text(encoding="utf-8")
                units[resolved.path] = parse_unit(text, resolved.path)
            unit = units[resolved.path]
            model = locate_method(unit, resolved.entry.method_start)
            result = suggest_pipeline(
                unit,
                model,
                provider,
                config.provider,
                top_n=config.k,
                system_preamble=config.system_preamble(),
            )
            for note in result.diagnostics:
                print(f"  [{resolved.id}] {note}", file=sys.stderr)
            row = {
                "id": resolved.id,
                "suggestions": [
                    {"start": g.range[0], "end": g.range[1], "name": g.name, "frequency": g.frequency}
                    for g in result.group_views
                ],
            }
            out.write(json.dumps(row) + "\n")

    report = evaluate(load.entries, DumpSource(dump_path), k=config.k, tolerance=config.tolerance)
    payload = report.to_json()
    payload["loc_summary"] = load.loc_summary
    print(format_report(report))
    return payload


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0], allow_abbrev=False)
    ap.add_argument("--oracle", required=True, help="oracle JSONL (id/file/method/extraction lines)")
    ap.add_argument("--out", required=True, help="directory for dumps, reports, and the summary")
    ap.add_argument("--config", default=None, help="JSON config file (endpoint, model, iterations, ...)")
    ap.add_argument("--root", default=".", help="directory oracle file paths are relative to")
    ap.add_argument("--repeat", type=int, default=1, help="independent pipeline passes over the oracle")
    ap.add_argument("--baseline", type=float, default=None, help="recall to test the repeated runs against")
    ap.add_argument("--k", type=int, default=None, help="rank cutoff (default from config: 5)")
    ap.add_argument("--tolerance", type=float, default=None, help="match tolerance (default from config: 0.03)")
    ap.add_argument("--record", default=None, metavar="DIR", help="also write replay fixtures to DIR")
    args = ap.parse_args()

    overrides = {"k": args.k, "tolerance": args.tolerance, "root": args.root}
    try:
        config = load_config(config_path=args.config, overrides=overrides)
        provider = make_provider(config)
        if args.record:
            Path(args.record).mkdir(parents=True, exist_ok=True)
            provider = RecordingProvider(provider, args.record)

        load = load_oracle(args.oracle, root=config.root)
    except (CarverError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for entry_id, why in load.skipped:
        print(f"skipped {entry_id}: {why}", file=sys.stderr)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    recalls: list[float] = []
    runs = max(1, args.repeat)
    for i in range(1, runs + 1):
        print(f"run {i}/{runs}: {len(load.entries)} entries, provider {provider.provider_id}")
        dump_path = out_dir / f"run-{i:02d}.dump.jsonl"
        try:
            payload = run_once(load, provider, config, dump_path)
        except CarverError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        (out_dir / f"run-{i:02d}.report.json").write_text(
            json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        recalls.append(payload["recall"])

    summary: dict = {
        "oracle": str(args.oracle),
        "entries": len(load.entries),
        "k": config.k,
        "tolerance": config.tolerance,
        "model": config.provider.model_name,
        "iterations": config.provider.iterations,
        "recalls": recalls,
    }
    if args.baseline is not None and runs > 1:
        stats = repeated_stats(recalls, args.baseline)
        summary["baseline"] = args.baseline
        summary["stats"] = stats.to_json()
        flag = " (degenerate: zero variance)" if stats.degenerate else ""
        print(f"t({stats.dof}) = {stats.t:.4f}, p = {stats.p:.6f} vs baseline {args.baseline}{flag}")
    (out_dir / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"artifacts in {out_dir}/")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
