"""Error analysis: strict recall per part of speech and class confusion."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from evtag.constants import EVENT_CLASS_NAMES, MISSING_POS
from evtag.corpus.types import EventClass
from evtag.evaluation.matching import MatchMode, match_spans
from evtag.evaluation.scoring import check_alignment
from evtag.utils import safe_div

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from evtag.corpus.types import Corpus

__all__ = [
    "PosRow",
    "PosBreakdown",
    "ConfusionMatrix",
    "pos_breakdown",
    "class_confusion",
]


@dataclass(frozen=True, slots=True)
class PosRow:
    """Gold events of one part of speech and how many the system matched strictly."""

    pos: str
    gold: int
    matched: int

    @property
    def recall(self) -> float:
        """Matched share in percent."""
        return 100.0 * safe_div(self.matched, self.gold)


@dataclass(frozen=True, slots=True)
class PosBreakdown:
    """Per-POS strict recall, rows sorted by POS tag."""

    rows: tuple[PosRow, ...]

    def __getitem__(self, pos: str) -> PosRow:
        for row in self.rows:
            if row.pos == pos:
                return row
        raise KeyError(pos)

    def format_table(self) -> str:
        lines = [f"{'POS':<16}{'gold':>8}{'matched':>9}{'recall':>9}"]
        for row in self.rows:
            lines.append(f"{row.pos:<16}{row.gold:>8}{row.matched:>9}{row.recall:>8.2f}%")
        return "\n".join(lines)


def pos_breakdown(gold: Corpus, system: Corpus) -> PosBreakdown:
    """Strict recall of gold events grouped by the POS tag of each event's first token.

    The column format carries no dependency heads, so the first token stands in for the
    syntactic head; for single-token events the two coincide. Events whose first token has no
    POS are counted under ``"_"``.

    Raises:
        AlignmentError: The corpora are not aligned.

    Examples:
        >>> from evtag.corpus import Corpus, EventClass, EventSpan, Sentence
        >>> from evtag.evaluation import pos_breakdown
        >>> spans = [EventSpan(0, 0, EventClass.STATE), EventSpan(1, 1, EventClass.OCCURRENCE)]
        >>> words = ["crisi", "guerra"]
        >>> gold = Corpus([Sentence.from_surfaces(words, spans, pos=["Noun", "Noun"])])
        >>> system = Corpus([Sentence.from_surfaces(words, spans[:1])])
        >>> pos_breakdown(gold, system)["Noun"].recall
        50.0
    """
    check_alignment(gold, system)
    totals: dict[str, int] = {}
    matched: dict[str, int] = {}
    for g, s in zip(gold, system):
        hit = {i for i, _ in match_spans(g.events, s.events, MatchMode.STRICT)}
        for i, span in enumerate(g.events):
            pos = g.tokens[span.start].pos or MISSING_POS
            totals[pos] = totals.get(pos, 0) + 1
            matched[pos] = matched.get(pos, 0) + (i in hit)
    rows = tuple(PosRow(pos, totals[pos], matched[pos]) for pos in sorted(totals))
    return PosBreakdown(rows)


@dataclass(frozen=True, slots=True, eq=False)
class ConfusionMatrix:
    """Class counts over extent-matched pairs.

    Attributes:
        counts: Matrix ``7 x 7``; rows are gold classes and columns system classes, both in
            canonical class order.
        mode: Matching mode the pairs come from.
    """

    counts: NDArray[np.int64]
    mode: MatchMode = MatchMode.STRICT
    classes: tuple[str, ...] = field(default=EVENT_CLASS_NAMES)

    def __post_init__(self) -> None:
        n = len(self.classes)
        if self.counts.shape != (n, n):
            raise ValueError(f"counts must have shape ({n}, {n}), got {self.counts.shape}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConfusionMatrix):
            return NotImplemented
        return (self.mode is other.mode) and np.array_equal(self.counts, other.counts)

    def __getitem__(self, key: tuple[EventClass | str, EventClass | str]) -> int:
        gold, system = (EventClass(k).index for k in key)
        return int(self.counts[gold, system])

    @property
    def total(self) -> int:
        """Number of matched pairs."""
        return int(self.counts.sum())

    @property
    def n_errors(self) -> int:
        """Number of matched pairs with a wrong class."""
        return self.total - int(np.trace(self.counts))

    def error_shares(self) -> dict[str, float]:
        """Share of class errors (percent) per system class."""
        off_diagonal = self.counts - np.diag(np.diag(self.counts))
        column_errors = off_diagonal.sum(axis=0)
        return {
            name: 100.0 * safe_div(int(n), self.n_errors)
            for name, n in zip(self.classes, column_errors)
        }

    def format_table(self) -> str:
        width = max(len(name) for name in self.classes) + 2
        header = "".join(name[:10].rjust(12) for name in self.classes)
        lines = ["gold \\ system".ljust(width) + header]
        for name, row in zip(self.classes, self.counts):
            lines.append(name.ljust(width) + "".join(f"{int(n):>12}" for n in row))
        shares = self.error_shares()
        share_cells = "".join(f"{shares[name]:>11.2f}%" for name in self.classes)
        lines.append("error share".ljust(width) + share_cells)
        return "\n".join(lines)


def class_confusion(
    gold: Corpus, system: Corpus, mode: MatchMode | str = MatchMode.STRICT
) -> ConfusionMatrix:
    """Count ``(gold class, system class)`` over extent-matched pairs.

    Args:
        gold (Corpus): Reference annotation.
        system (Corpus): System output.
        mode (MatchMode | str, optional): Matching mode. Defaults to strict.

    Returns:
        ConfusionMatrix: Diagonal entries are correct classifications.

    Raises:
        AlignmentError: The corpora are not aligned.
    """
    mode = MatchMode(mode)
    check_alignment(gold, system)
    counts = np.zeros((len(EVENT_CLASS_NAMES), len(EVENT_CLASS_NAMES)), dtype=np.int64)
    for g, s in zip(gold, system):
        for i, j in match_spans(g.events, s.events, mode):
            counts[g.events[i].event_class.index, s.events[j].event_class.index] += 1
    return ConfusionMatrix(counts, mode)
