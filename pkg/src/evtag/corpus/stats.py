"""Corpus statistics: events per class, event tokens per POS, multi-token events."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from evtag.constants import EVENT_CLASS_NAMES, MISSING_POS
from evtag.corpus.types import Corpus

__all__ = [
    "CountsReport",
    "corpus_stats",
]


@dataclass(frozen=True, slots=True)
class CountsReport:
    """Event counts for one corpus.

    Attributes:
        per_class: Events per class, every class present, canonical order.
        per_pos_tokens: Event tokens per POS, each token of an event counted under its own
            POS.
        per_pos_events: Events per POS of their first token.
        multi_token_events: Number of events spanning two or more tokens.
        total_events: Number of events.
        total_event_tokens: Number of tokens covered by events.
    """

    per_class: dict[str, int] = field(default_factory=dict)
    per_pos_tokens: dict[str, int] = field(default_factory=dict)
    per_pos_events: dict[str, int] = field(default_factory=dict)
    multi_token_events: int = 0
    total_events: int = 0
    total_event_tokens: int = 0

    def format_table(self, title: str = "") -> str:
        """Render the counts as a plain-text table."""
        lines = [title] if title else []
        lines.append(f"{'Class':<12}{'Events':>8}")
        for name, count in self.per_class.items():
            lines.append(f"{name:<12}{count:>8}")
        lines.append(f"{'Overall':<12}{self.total_events:>8}")
        lines.append(f"{'Multi-token':<12}{self.multi_token_events:>8}")
        lines.append("")
        lines.append(f"{'POS':<12}{'Tokens':>8}")
        for pos, count in self.per_pos_tokens.items():
            lines.append(f"{pos:<12}{count:>8}")
        lines.append(f"{'Overall':<12}{self.total_event_tokens:>8}")
        return "\n".join(lines)


def corpus_stats(corpus: Corpus) -> CountsReport:
    """Count events of a corpus.

    Args:
        corpus (Corpus): Corpus to count.

    Returns:
        CountsReport: Counts per class and per POS.

    Examples:
        >>> from evtag.corpus import Corpus, EventClass, EventSpan, Sentence, corpus_stats
        >>> s = Sentence.from_surfaces(
        ...     ["in", "grado", "di", "vincere"],
        ...     [EventSpan(0, 2, EventClass.STATE), EventSpan(3, 3, EventClass.OCCURRENCE)],
        ... )
        >>> report = corpus_stats(Corpus([s]))
        >>> report.total_events, report.multi_token_events, report.total_event_tokens
        (2, 1, 4)
    """
    per_class: Counter[str] = Counter()
    per_pos_tokens: Counter[str] = Counter()
    per_pos_events: Counter[str] = Counter()
    multi = 0
    for sentence in corpus:
        for span in sentence.events:
            per_class[span.event_class.value] += 1
            if len(span) > 1:
                multi += 1
            per_pos_events[sentence.tokens[span.start].pos or MISSING_POS] += 1
            for token in sentence.tokens[span.start : span.end + 1]:
                per_pos_tokens[token.pos or MISSING_POS] += 1
    return CountsReport(
        per_class={name: per_class[name] for name in EVENT_CLASS_NAMES},
        per_pos_tokens=dict(sorted(per_pos_tokens.items())),
        per_pos_events=dict(sorted(per_pos_events.items())),
        multi_token_events=multi,
        total_events=sum(per_class.values()),
        total_event_tokens=sum(per_pos_tokens.values()),
    )
