"""Recall-based evaluation against a human-labelled oracle.

An oracle is JSONL, one extraction per line:

    {"id": ..., "file": ..., "method_name": ..., "method_start": ..., "method_end": ...,
     "extracted_start": ..., "extracted_end": ..., "extracted_name": ...?}

A dump is JSONL pairing oracle ids with ranked suggested ranges:

    {"id": ..., "suggestions": [{"start": ..., "end": ..., "name": ...?}, ...]}

A suggestion matches an oracle entry when the symmetric difference of the two
line sets, restricted to statement-bearing lines of the host method, is at
most floor(tolerance * host_loc). recall@k counts entries whose match appears
within the top k suggestions.
"""

from __future__ import annotations

import json
import math
import statistics
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Protocol, Sequence

from scipy import stats as _scipy_stats

from .errors import EmptyOracleError, InsufficientSamplesError
from .source_model import SourceUnit, locate_method, parse_unit


@dataclass(frozen=True)
class OracleEntry:
    id: str
    file: str
    method_name: str
    method_start: int
    method_end: int
    extracted_start: int
    extracted_end: int
    extracted_name: str | None = None


@dataclass(frozen=True)
class ResolvedEntry:
    entry: OracleEntry
    path: str
    host_loc: int
    statement_lines: frozenset[int]

    @property
    def id(self) -> str:
        return self.entry.id


@dataclass(frozen=True)
class OracleLoad:
    entries: tuple[ResolvedEntry, ...]
    skipped: tuple[tuple[str, str], ...]  # (entry id or line tag, reason)
    loc_summary: dict[str, float] = field(default_factory=dict)


_REQUIRED = ("id", "file", "method_name", "method_start", "method_end", "extracted_start", "extracted_end")


def load_oracle(path: str | Path, root: str | Path = ".") -> OracleLoad:
    """Read and resolve an oracle file. Unresolvable entries are skipped with
    a diagnostic; an oracle with zero resolvable entries is an error."""
    rootp = Path(root)
    resolved: list[ResolvedEntry] = []
    skipped: list[tuple[str, str]] = []
    units: dict[str, tuple[SourceUnit | None, Exception | None]] = {}

    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            raw = raw.strip()
            if not raw:
                continue
            tag = f"line {lineno}"
            try:
                obj = json.loads(raw)
            except json.JSONDecodeError as exc:
                skipped.append((tag, f"malformed JSON: {exc}"))
                continue
            missing = [key for key in _REQUIRED if key not in obj]
            if missing:
                skipped.append((str(obj.get("id", tag)), f"missing fields: {', '.join(missing)}"))
                continue
            entry = OracleEntry(
                id=str(obj["id"]),
                file=str(obj["file"]),
                method_name=str(obj["method_name"]),
                method_start=int(obj["method_start"]),
                method_end=int(obj["method_end"]),
                extracted_start=int(obj["extracted_start"]),
                extracted_end=int(obj["extracted_end"]),
                extracted_name=str(obj["extracted_name"]) if obj.get("extracted_name") else None,
            )
            res = _resolve(entry, rootp, units)
            if isinstance(res, str):
                skipped.append((entry.id, res))
            else:
                resolved.append(res)

    if not resolved:
        notes = "; ".join(f"{sid}: {why}" for sid, why in skipped[:5])
        suffix = f" ({len(skipped)} skipped: {notes})" if skipped else ""
        raise EmptyOracleError(f"no resolvable entries in {path}{suffix}")
    locs = sorted(r.host_loc for r in resolved)
    summary = {
        "min": float(locs[0]),
        "max": float(locs[-1]),
        "mean": float(statistics.fmean(locs)),
        "median": float(statistics.median(locs)),
    }
    return OracleLoad(entries=tuple(resolved), skipped=tuple(skipped), loc_summary=summary)


def _resolve(
    entry: OracleEntry, root: Path, units: dict[str, tuple[SourceUnit, Exception | None]]
) -> ResolvedEntry | str:
    target = root / entry.file
    key = str(target)
    if key not in units:
        try:
            unit = parse_unit(target.read_text(encoding="utf-8"), str(target))
            units[key] = (unit, None)
        except FileNotFoundError:
            units[key] = (None, FileNotFoundError(f"no such file: {target}"))
        except Exception as exc:
            units[key] = (None, exc)
    unit, err = units[key]
    if unit is None:
        return str(err)
    try:
        model = locate_method(unit, entry.method_start)
    except Exception as exc:
        return f"cannot locate method at line {entry.method_start}: {exc}"
    if model.name != entry.method_name:
        return f"method at line {entry.method_start} is {model.name!r}, oracle says {entry.method_name!r}"
    if model.decl_line != entry.method_start:
        return (
            f"{entry.method_name!r} is declared at line {model.decl_line}, "
            f"oracle says {entry.method_start}"
        )
    if not (entry.method_start <= entry.extracted_start <= entry.extracted_end <= entry.method_end):
        return "extracted range is not contained in the host method"
    return ResolvedEntry(
        entry=entry,
        path=key,
        host_loc=entry.method_end - entry.method_start + 1,
        statement_lines=frozenset(model.body_statement_lines()),
    )


def matches(
    suggested: tuple[int, int] | None,
    oracle: tuple[int, int],
    host_loc: int,
    tolerance: float,
    statement_lines: frozenset[int] | None = None,
    allowance: Callable[[float, int], int] | None = None,
) -> bool:
    """Tolerance test over line sets. Inverted or absent suggestions never match
    a non-empty oracle set; they are treated as the empty set, not an error.
    The default allowance is floor(tolerance * host_loc); pass `allowance` to
    swap in a different scaling rule."""
    def line_set(rng: tuple[int, int] | None) -> frozenset[int]:
        if rng is None or rng[0] > rng[1]:
            return frozenset()
        lines = frozenset(range(rng[0], rng[1] + 1))
        return lines & statement_lines if statement_lines is not None else lines

    allowed = math.floor(tolerance * host_loc) if allowance is None else allowance(tolerance, host_loc)
    return len(line_set(suggested) ^ line_set(oracle)) <= allowed


class SuggestionSource(Protocol):
    def suggestions_for(self, resolved: ResolvedEntry) -> Sequence[tuple[int, int]]: ...


class DumpSource:
    """Ranked suggestions read from a dump file keyed by oracle id."""

    def __init__(self, path: str | Path):
        self._by_id: dict[str, list[tuple[int, int]]] = {}
        with open(path, encoding="utf-8") as fh:
            for raw in fh:
                raw = raw.strip()
                if not raw:
                    continue
                obj = json.loads(raw)
                ranked = [
                    (int(s["start"]), int(s["end"]))
                    for s in obj.get("suggestions", [])
                    if isinstance(s, dict) and "start" in s and "end" in s
                ]
                self._by_id[str(obj["id"])] = ranked

    def suggestions_for(self, resolved: ResolvedEntry) -> Sequence[tuple[int, int]]:
        return self._by_id.get(resolved.id, [])


@dataclass(frozen=True)
class EntryVerdict:
    entry_id: str
    matched_rank: int | None  # 1-based, None = miss within top k
    considered: tuple[tuple[int, int], ...]
    trail: tuple[dict, ...] = ()  # per-suggestion lifecycle records, when the source has them


@dataclass(frozen=True)
class EvalReport:
    k: int
    tolerance: float
    verdicts: tuple[EntryVerdict, ...]

    @property
    def total(self) -> int:
        return len(self.verdicts)

    def recall_at(self, j: int) -> float:
        if not self.verdicts:
            return 0.0
        hits = sum(1 for v in self.verdicts if v.matched_rank is not None and v.matched_rank <= j)
        return hits / len(self.verdicts)

    @property
    def recall(self) -> float:
        return self.recall_at(self.k)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "tolerance": self.tolerance,
            "total": self.total,
            "recall": self.recall,
            "recall_at": {str(j): self.recall_at(j) for j in range(1, self.k + 1)},
            "entries": [
                {
                    "id": v.entry_id,
                    "matched_rank": v.matched_rank,
                    "considered": [list(rng) for rng in v.considered],
                    **({"trail": list(v.trail)} if v.trail else {}),
                }
                for v in self.verdicts
            ],
        }


def evaluate(
    entries: Sequence[ResolvedEntry], source: SuggestionSource, k: int = 5, tolerance: float = 0.03
) -> EvalReport:
    verdicts = []
    trail_for = getattr(source, "trail_for", None)
    for resolved in entries:
        ranked = list(source.suggestions_for(resolved))[:k]
        oracle_range = (resolved.entry.extracted_start, resolved.entry.extracted_end)
        matched = None
        for rank, rng in enumerate(ranked, start=1):
            if matches(rng, oracle_range, resolved.host_loc, tolerance, resolved.statement_lines):
                matched = rank
                break
        trail = tuple(trail_for(resolved)) if trail_for is not None else ()
        verdicts.append(
            EntryVerdict(entry_id=resolved.id, matched_rank=matched, considered=tuple(ranked), trail=trail)
        )
    return EvalReport(k=k, tolerance=tolerance, verdicts=tuple(verdicts))


def format_report(report: EvalReport) -> str:
    lines = [f"{'id':<24} {'rank':>4}  result"]
    for v in report.verdicts:
        rank = str(v.matched_rank) if v.matched_rank is not None else "-"
        lines.append(f"{v.entry_id:<24} {rank:>4}  {'hit' if v.matched_rank else 'miss'}")
    lines.append("")
    for j in range(1, report.k + 1):
        lines.append(f"recall@{j} = {report.recall_at(j):.4f}")
    lines.append(f"entries: {report.total}, tolerance: {report.tolerance}")
    return "\n".join(lines)


@dataclass(frozen=True)
class RepeatedStats:
    n: int
    mean: float
    sd: float
    t: float
    p: float
    dof: int
    degenerate: bool  # zero variance: the t statistic is a convention, not an estimate

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "mean": self.mean,
            "sd": self.sd,
            "t": self.t,
            "p": self.p,
            "dof": self.dof,
            "degenerate": self.degenerate,
        }


def repeated_stats(recalls: Sequence[float], baseline: float) -> RepeatedStats:
    """One-sample t test of repeated recall measurements against a baseline."""
    n = len(recalls)
    if n < 2:
        raise InsufficientSamplesError(f"need at least 2 runs, got {n}")
    mean = statistics.fmean(recalls)
    sd = statistics.stdev(recalls)
    dof = n - 1
    if sd == 0.0:
        # stdev uses exact fraction arithmetic, so sd == 0 means every sample
        # is the same value; report that value rather than fmean's rounding.
        mean = float(recalls[0])
        if mean == baseline:
            return RepeatedStats(n, mean, sd, 0.0, 1.0, dof, degenerate=True)
        t = math.inf if mean > baseline else -math.inf
        return RepeatedStats(n, mean, sd, t, 0.0, dof, degenerate=True)
    t = (mean - baseline) / (sd / math.sqrt(n))
    p = 2.0 * float(_scipy_stats.t.sf(abs(t), dof))
    return RepeatedStats(n, mean, sd, float(t), p, dof, degenerate=False)
