"""Strict and relaxed span precision, recall, F1 and class-aware F1."""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, fields
from typing import TYPE_CHECKING

from evtag.errors import AlignmentError
from evtag.evaluation.matching import MatchMode, match_spans
from evtag.utils import harmonic_mean, safe_div

if TYPE_CHECKING:
    from evtag.corpus.types import Corpus

__all__ = [
    "ModeScores",
    "ScoreCounts",
    "ScoreReport",
    "METRIC_NAMES",
    "COUNT_NAMES",
    "check_alignment",
    "score",
]

logger: logging.Logger = logging.getLogger(__name__)

METRIC_NAMES: tuple[str, ...] = ("precision", "recall", "f1", "f1_class")


@dataclass(frozen=True, slots=True)
class ModeScores:
    """Rates of one matching mode, each in ``[0, 1]``."""

    precision: float
    recall: float
    f1: float
    f1_class: float


@dataclass(frozen=True, slots=True)
class ScoreCounts:
    """Span counts behind a :class:`ScoreReport`."""

    gold: int
    system: int
    strict_tp: int
    relaxed_tp: int
    strict_tp_class: int
    relaxed_tp_class: int


COUNT_NAMES: tuple[str, ...] = tuple(f.name for f in fields(ScoreCounts))


@dataclass(frozen=True, slots=True)
class ScoreReport:
    """Strict and relaxed scores with their counts."""

    strict: ModeScores
    relaxed: ModeScores
    counts: ScoreCounts

    def mode(self, mode: MatchMode | str) -> ModeScores:
        return self.strict if MatchMode(mode) is MatchMode.STRICT else self.relaxed

    def as_dict(self) -> dict[str, float | int]:
        """Flat ``{"strict.precision": ..., "counts.gold": ...}`` view in a fixed key order."""
        flat: dict[str, float | int] = {}
        for prefix, values in (
            ("strict", self.strict),
            ("relaxed", self.relaxed),
            ("counts", self.counts),
        ):
            for key, value in asdict(values).items():
                flat[f"{prefix}.{key}"] = value
        return flat

    @classmethod
    def from_dict(cls, values: dict[str, float | int]) -> ScoreReport:
        """Inverse of :meth:`as_dict`.

        Raises:
            KeyError: A metric is missing.
        """

        def section(prefix: str, names: tuple[str, ...]) -> dict[str, float | int]:
            return {name: values[f"{prefix}.{name}"] for name in names}

        counts = section("counts", COUNT_NAMES)
        return cls(
            ModeScores(**section("strict", METRIC_NAMES)),  # type: ignore[arg-type]
            ModeScores(**section("relaxed", METRIC_NAMES)),  # type: ignore[arg-type]
            ScoreCounts(**{k: int(v) for k, v in counts.items()}),
        )


def check_alignment(gold: Corpus, system: Corpus) -> None:
    """Check that two corpora hold the same sentences token by token.

    Raises:
        AlignmentError: Sentence counts differ, or the first sentence whose token surfaces
            differ.
    """
    for i, (g, s) in enumerate(zip(gold, system)):
        if g.surfaces != s.surfaces:
            raise AlignmentError(
                f"token sequences differ ({len(g)} gold tokens, {len(s)} system tokens)",
                sentence_index=i,
            )
    if len(gold) != len(system):
        raise AlignmentError(
            f"corpora have {len(gold)} gold and {len(system)} system sentences",
            sentence_index=min(len(gold), len(system)),
        )


def _mode_scores(tp: int, tp_class: int, n_gold: int, n_system: int) -> ModeScores:
    precision = safe_div(tp, n_system)
    recall = safe_div(tp, n_gold)
    f1_class = harmonic_mean(safe_div(tp_class, n_system), safe_div(tp_class, n_gold))
    return ModeScores(precision, recall, harmonic_mean(precision, recall), f1_class)


def score(gold: Corpus, system: Corpus) -> ScoreReport:
    """Score system spans against gold spans.

    A true positive is a matched pair; for ``f1_class`` the pair must also agree on class.
    Rates with a zero denominator are 0.

    Args:
        gold (Corpus): Reference annotation.
        system (Corpus): System output over the same sentences.

    Returns:
        ScoreReport: Strict and relaxed scores.

    Raises:
        AlignmentError: The corpora are not aligned.

    Examples:
        >>> from evtag.corpus import Corpus, EventClass, EventSpan, Sentence
        >>> from evtag.evaluation import score
        >>> words = ["a", "b", "c", "d"]
        >>> def one(start, end):
        ...     span = EventSpan(start, end, EventClass.STATE)
        ...     return Corpus([Sentence.from_surfaces(words, [span])])
        >>> gold, system = one(0, 1), one(0, 0)
        >>> report = score(gold, system)
        >>> report.strict.f1, report.relaxed.f1, report.relaxed.f1_class
        (0.0, 1.0, 1.0)
    """
    check_alignment(gold, system)
    tp = dict.fromkeys(MatchMode, 0)
    tp_class = dict.fromkeys(MatchMode, 0)
    for g, s in zip(gold, system):
        for mode in MatchMode:
            for i, j in match_spans(g.events, s.events, mode):
                tp[mode] += 1
                if g.events[i].event_class is s.events[j].event_class:
                    tp_class[mode] += 1
    counts = ScoreCounts(
        gold=gold.n_events,
        system=system.n_events,
        strict_tp=tp[MatchMode.STRICT],
        relaxed_tp=tp[MatchMode.RELAXED],
        strict_tp_class=tp_class[MatchMode.STRICT],
        relaxed_tp_class=tp_class[MatchMode.RELAXED],
    )
    report = ScoreReport(
        _mode_scores(counts.strict_tp, counts.strict_tp_class, counts.gold, counts.system),
        _mode_scores(counts.relaxed_tp, counts.relaxed_tp_class, counts.gold, counts.system),
        counts,
    )
    logger.debug("Scored %d sentences: %s", len(gold), counts)
    return report
