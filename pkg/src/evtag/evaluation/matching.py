"""Span matching policies."""

from __future__ import annotations

from enum import Enum
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Sequence

    from evtag.corpus.types import EventSpan

__all__ = [
    "MatchMode",
    "match_spans",
]


class MatchMode(str, Enum):
    """Extent matching policy.

    ``STRICT`` pairs spans with identical extents. ``RELAXED`` pairs overlapping spans
    one-to-one.
    """

    STRICT = "strict"
    RELAXED = "relaxed"

    def __str__(self) -> str:
        return self.value


def match_spans(
    gold: Sequence[EventSpan],
    system: Sequence[EventSpan],
    mode: MatchMode | str,
) -> list[tuple[int, int]]:
    """Pair gold and system spans of one sentence.

    Relaxed matching walks the gold spans left to right and pairs each with the first system
    span (in start order) that overlaps it and is still unpaired.

    Args:
        gold (Sequence[EventSpan]): Gold spans, sorted by start.
        system (Sequence[EventSpan]): System spans, sorted by start.
        mode (MatchMode | str): ``strict`` or ``relaxed``.

    Returns:
        list[tuple[int, int]]: ``(gold_index, system_index)`` pairs; every index occurs at
            most once.

    Examples:
        >>> from evtag.corpus import EventClass, EventSpan
        >>> from evtag.evaluation import match_spans
        >>> gold = [EventSpan(0, 5, EventClass.OCCURRENCE)]
        >>> system = [
        ...     EventSpan(0, 1, EventClass.OCCURRENCE),
        ...     EventSpan(3, 4, EventClass.STATE),
        ... ]
        >>> match_spans(gold, system, "strict"), match_spans(gold, system, "relaxed")
        ([], [(0, 0)])
    """
    mode = MatchMode(mode)
    if mode is MatchMode.STRICT:
        by_extent = {span.extent: j for j, span in enumerate(system)}
        return [
            (i, by_extent[span.extent])
            for i, span in enumerate(gold)
            if span.extent in by_extent
        ]
    used: set[int] = set()
    pairs = []
    for i, gold_span in enumerate(gold):
        for j, system_span in enumerate(system):
            if (j not in used) and gold_span.overlaps(system_span):
                pairs.append((i, j))
                used.add(j)
                break
    return pairs
