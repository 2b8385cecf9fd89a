"""Command-line entry points: suggest, apply, eval, serve.

Exit codes:
  0 success (including "no suggestions survived")
  1 unexpected internal error
  2 usage or configuration error
  3 input file not found
  4 source failed to parse
  5 method not found or ambiguous
  6 provider unreachable or replay fixture missing
  7 oracle has no resolvable entries
  8 requested range rejected (reason printed verbatim)
  9 file changed between plan and apply
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import tempfile
from pathlib import Path

from .candidates import Suggestion, run_lifecycle
from .config import AppConfig, load_config, make_provider
from .dataflow import build_cfg, liveness
from .errors import (
    AmbiguousMethodError,
    CarverError,
    EmptyOracleError,
    MethodNotFoundError,
    MissingFixtureError,
    ParseError,
    PlanConflictError,
    ProviderUnreachableError,
    StaleUnitError,
)
from .evalharness import DumpSource, evaluate, format_report, load_oracle, repeated_stats
from .extractor import apply as apply_plan
from .extractor import plan as build_plan
from .pipeline import suggest_pipeline, suggestion_summary
from .ranking import RankedGroup
from .source_model import SourceUnit, locate_method, parse_unit

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_NO_FILE = 3
EXIT_PARSE = 4
EXIT_NO_METHOD = 5
EXIT_PROVIDER = 6
EXIT_EMPTY_ORACLE = 7
EXIT_REJECTED = 8
EXIT_STALE = 9


def _range_arg(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"(-?\d+):(-?\d+)", text)
    if not m:
        raise argparse.ArgumentTypeError("range must look like START:END, e.g. 85:90")
    return int(m.group(1)), int(m.group(2))


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--endpoint", help="chat-completions endpoint URL")
    p.add_argument("--model", help="model name sent to the endpoint")
    p.add_argument("--temperature", type=float)
    p.add_argument("--iterations", type=int, help="number of completions to sample")
    p.add_argument("--max-parallel", type=int, dest="max_parallel")
    p.add_argument("--timeout", type=float, help="per-request timeout, seconds")
    p.add_argument("--api-key-env", dest="api_key_env", help="NAME of the env var holding the API key")
    p.add_argument("--provider", choices=("live", "replay", "record"))
    p.add_argument("--fixtures", help="fixture directory for replay/record providers")
    p.add_argument("--prompt", help="file overriding the built-in system preamble")
    p.add_argument("--top-n", type=int, dest="top_n")
    p.add_argument("--root", help="project root for relative paths")


def _config_from(args: argparse.Namespace, extra: dict | None = None) -> AppConfig:
    keys = (
        "endpoint",
        "model",
        "temperature",
        "iterations",
        "max_parallel",
        "timeout",
        "api_key_env",
        "provider",
        "fixtures",
        "prompt",
        "top_n",
        "root",
    )
    overrides = {k: getattr(args, k, None) for k in keys}
    if extra:
        overrides.update({k: v for k, v in extra.items() if v is not None})
    return load_config(config_path=getattr(args, "config", None), overrides=overrides)


def _read_unit(path: str) -> SourceUnit:
    text = Path(path).read_text(encoding="utf-8")
    return parse_unit(text, path)


def _locator(args: argparse.Namespace) -> str | int:
    if getattr(args, "method", None):
        return args.method
    if getattr(args, "line", None):
        return int(args.line)
    rng = getattr(args, "range", None)
    if rng is not None:
        return rng[0]
    raise SystemExit("one of --method or --line is required")


def cmd_suggest(args: argparse.Namespace) -> int:
    config = _config_from(args)
    unit = _read_unit(args.file)
    model = locate_method(unit, _locator(args))
    provider = make_provider(config)
    result = suggest_pipeline(
        unit, model, provider, config.provider, top_n=config.top_n, system_preamble=config.system_preamble()
    )

    if args.json:
        print(json.dumps(result.to_json(), indent=2, sort_keys=True))
        return EXIT_OK

    for note in result.diagnostics:
        print(f"note: {note}", file=sys.stderr)
    print(f"{model.name} ({args.file} lines {model.decl_line}-{model.close_line}), {len(result.records)} completions")
    if not result.group_views:
        print("no suggestions survived validation and filtering")
        return EXIT_OK
    print(f"{'rank':>4}  {'lines':<11} {'freq':>4}  suggestion")
    for view in result.group_views:
        lines = f"{view.range[0]}-{view.range[1]}"
        sig = view.signature or view.name
        print(f"{view.index + 1:>4}  {lines:<11} {view.frequency:>4}  {sig}")
    return EXIT_OK


def cmd_apply(args: argparse.Namespace) -> int:
    unit = _read_unit(args.file)
    model = locate_method(unit, _locator(args))
    cfg = build_cfg(model)
    live = liveness(cfg, model)

    s = Suggestion(proposed_name=args.name, raw_range=args.range)
    s = run_lifecycle(model, cfg, live, s)
    if s.state != "useful":
        assert s.reason is not None
        print(f"rejected: {s.reason.category}: {s.reason.detail}", file=sys.stderr)
        return EXIT_REJECTED

    group = RankedGroup(
        canonical_range=s.normalized_range,
        frequency=1,
        names=(args.name,),
        representative_name=args.name,
        fragment=s.fragment,
    )
    plan_ = build_plan(model, cfg, live, group)
    new_text, script = apply_plan(unit, model, plan_)

    if args.in_place:
        target = Path(args.file)
        fd, tmp = tempfile.mkstemp(dir=str(target.parent), prefix=f".{target.name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(new_text)
            os.replace(tmp, target)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        span = plan_.fragment_span
        print(f"extracted lines {span[0]}-{span[1]} of {model.name} into {plan_.signature_preview()}")
    else:
        sys.stdout.write(script.diff)
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    config = _config_from(args, extra={"k": args.k, "tolerance": args.tolerance})
    load = load_oracle(args.oracle, root=config.root)
    for entry_id, why in load.skipped:
        print(f"skipped {entry_id}: {why}", file=sys.stderr)

    if args.dump:
        source = DumpSource(args.dump)
    else:
        source = _PipelineSource(config)

    runs = max(1, args.repeat or 1)
    reports = [evaluate(load.entries, source, k=config.k, tolerance=config.tolerance) for _ in range(runs)]
    report = reports[0]
    recalls = [r.recall for r in reports]
    stats = repeated_stats(recalls, args.baseline) if args.repeat and args.baseline is not None else None

    if args.json:
        payload = report.to_json()
        payload["loc_summary"] = load.loc_summary
        if runs > 1:
            payload["runs"] = recalls
        if stats is not None:
            payload["stats"] = stats.to_json()
        print(json.dumps(payload, indent=2, sort_keys=True))
        return EXIT_OK

    loc = load.loc_summary
    print(
        f"oracle: {len(load.entries)} entries "
        f"(host LOC min {loc['min']:.0f} / median {loc['median']:.1f} / mean {loc['mean']:.1f} / max {loc['max']:.0f})"
    )
    print(format_report(report))
    if runs > 1:
        print(f"runs: {', '.join(f'{r:.4f}' for r in recalls)}")
    if stats is not None:
        flag = " (degenerate: zero variance)" if stats.degenerate else ""
        print(f"t({stats.dof}) = {stats.t:.4f}, p = {stats.p:.6f} vs baseline {args.baseline}{flag}")
    return EXIT_OK


class _PipelineSource:
    """Live suggestion source for eval: runs the full pipeline per entry."""

    def __init__(self, config: AppConfig):
        self.config = config
        self.provider = make_provider(config)
        self._units: dict[str, SourceUnit] = {}
        self._trails: dict[str, list[dict]] = {}

    def suggestions_for(self, resolved):
        if resolved.path not in self._units:
            self._units[resolved.path] = parse_unit(
                Path(resolved.path).read_text(encoding="utf-8"), resolved.path
            )
        unit = self._units[resolved.path]
        model = locate_method(unit, resolved.entry.method_start)
        result = suggest_pipeline(
            unit,
            model,
            self.provider,
            self.config.provider,
            top_n=self.config.k,
            system_preamble=self.config.system_preamble(),
        )
        self._trails[resolved.id] = [suggestion_summary(s) for s in result.suggestions]
        return [g.canonical_range for g in result.groups]

    def trail_for(self, resolved):
        return self._trails.get(resolved.id, [])


def cmd_serve(args: argparse.Namespace) -> int:
    from .service import run_service

    config = _config_from(args, extra={"port": args.port})
    return run_service(config)


def build_parser() -> argparse.ArgumentParser:
    # allow_abbrev=False keeps --api-key from aliasing --api-key-env: the key
    # itself must never be accepted on the command line
    parser = argparse.ArgumentParser(
        prog="carver",
        description="extract-method refactoring assistant for Java",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("suggest", allow_abbrev=False, help="sample, validate and rank extraction suggestions for one method")
    p.add_argument("file", metavar="FILE")
    who = p.add_mutually_exclusive_group(required=True)
    who.add_argument("--method", help="method name (must be unique in the file)")
    who.add_argument("--line", type=int, help="any line inside the method")
    p.add_argument("--json", action="store_true", help="machine-readable output with the full rejection trail")
    _add_config_flags(p)
    p.set_defaults(func=cmd_suggest)

    p = sub.add_parser("apply", allow_abbrev=False, help="extract an explicit line range into a new method")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--range", type=_range_arg, required=True, metavar="START:END")
    p.add_argument("--name", required=True, help="name for the extracted method")
    who = p.add_mutually_exclusive_group()
    who.add_argument("--method", help="host method name")
    who.add_argument("--line", type=int, help="any line inside the host method")
    how = p.add_mutually_exclusive_group()
    how.add_argument("--diff", action="store_true", default=True, help="print a unified diff (default)")
    how.add_argument("--in-place", action="store_true", dest="in_place", help="rewrite the file atomically")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("eval", allow_abbrev=False, help="measure recall of a suggestion source against an oracle")
    p.add_argument("oracle", metavar="ORACLE", help="oracle JSONL file")
    p.add_argument("--dump", help="ranked-suggestions JSONL; omit to sample live")
    p.add_argument("--k", type=int, default=None, help="suggestions considered per entry")
    p.add_argument("--tolerance", type=float, default=None, help="allowed line-set deviation fraction")
    p.add_argument("--repeat", type=int, default=None, help="number of evaluation runs")
    p.add_argument("--baseline", type=float, default=None, help="baseline recall for the repeated-runs t test")
    p.add_argument("--json", action="store_true")
    _add_config_flags(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("serve", allow_abbrev=False, help="run the local HTTP service for the review UI")
    p.add_argument("--port", type=int, default=None)
    _add_config_flags(p)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_FILE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (MethodNotFoundError, AmbiguousMethodError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_METHOD
    except (ProviderUnreachableError, MissingFixtureError) as exc:
        print(f"provider error: {exc}", file=sys.stderr)
        return EXIT_PROVIDER
    except EmptyOracleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY_ORACLE
    except PlanConflictError as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except StaleUnitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STALE
    except ValueError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CarverError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
