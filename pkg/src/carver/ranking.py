"""Group useful suggestions by normalized range and rank by frequency."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .candidates import Suggestion


@dataclass(frozen=True)
class RankedGroup:
    canonical_range: tuple[int, int]
    frequency: int
    names: tuple[str, ...]  # multiset, in first-seen order
    representative_name: str
    fragment: tuple[int, ...]
    members: tuple[str, ...] = ()  # suggestion uids, empty for ad-hoc groups

    @property
    def span_lines(self) -> int:
        return self.canonical_range[1] - self.canonical_range[0] + 1


def _modal_name(names: list[str]) -> str:
    counts = Counter(names)
    best = max(counts.values())
    return min(n for n, c in counts.items() if c == best)


def aggregate(suggestions: list[Suggestion]) -> list[RankedGroup]:
    """Group by exact normalized range; representative name is the modal one
    (ties broken lexicographically)."""
    buckets: dict[tuple[int, int], list[Suggestion]] = {}
    for s in suggestions:
        if s.state != "useful":
            raise ValueError(f"aggregate expects useful suggestions, got {s.state}")
        assert s.normalized_range is not None
        buckets.setdefault(s.normalized_range, []).append(s)
    groups: list[RankedGroup] = []
    for rng in sorted(buckets):
        members = buckets[rng]
        names = [m.proposed_name for m in members]
        groups.append(
            RankedGroup(
                canonical_range=rng,
                frequency=len(members),
                names=tuple(names),
                representative_name=_modal_name(names),
                members=tuple(m.provenance.uid if m.provenance else "manual" for m in members),
                fragment=members[0].fragment or (),
            )
        )
    return groups


def rank(groups: list[RankedGroup], top_n: int = 3) -> list[RankedGroup]:
    """Descending frequency; ties go to the longer fragment, then the earlier
    start line. Truncated to top_n."""
    if top_n < 1:
        raise ValueError("top_n must be >= 1")
    ordered = sorted(groups, key=lambda g: (-g.frequency, -g.span_lines, g.canonical_range[0]))
    return ordered[:top_n]
