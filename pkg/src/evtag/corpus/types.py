"""Value types for tokenized, event-annotated text.

All types are immutable once constructed and validate their invariants on construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING

from evtag.constants import EVENT_CLASS_NAMES
from evtag.errors import InvalidAnnotationError

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator, Sequence

__all__ = [
    "EventClass",
    "Token",
    "EventSpan",
    "Sentence",
    "Corpus",
    "validate_spans",
]


class EventClass(str, Enum):
    """The seven event classes, in canonical order."""

    OCCURRENCE = "OCCURRENCE"
    ASPECTUAL = "ASPECTUAL"
    I_STATE = "I_STATE"
    I_ACTION = "I_ACTION"
    PERCEPTION = "PERCEPTION"
    REPORTING = "REPORTING"
    STATE = "STATE"

    @property
    def index(self) -> int:
        """Position of the class in canonical order."""
        return EVENT_CLASS_NAMES.index(self.value)

    @classmethod
    def from_index(cls, index: int) -> EventClass:
        return cls(EVENT_CLASS_NAMES[index])

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, slots=True)
class Token:
    """A single token.

    Args:
        surface (str): Token text, non-empty.
        pos (str | None, optional): Coarse part-of-speech tag, used for diagnostics only.

    Raises:
        ValueError: Empty surface.
    """

    surface: str
    pos: str | None = None

    def __post_init__(self) -> None:
        if not self.surface:
            raise ValueError("Token surface must not be empty")


@dataclass(frozen=True, slots=True, order=True)
class EventSpan:
    """Contiguous, inclusive token range carrying an event class.

    Args:
        start (int): Index of the first token (0-based).
        end (int): Index of the last token (inclusive).
        event_class (EventClass): Class of the event.

    Raises:
        InvalidAnnotationError: ``start`` is negative or greater than ``end``.

    Examples:
        >>> from evtag.corpus import EventClass, EventSpan
        >>> span = EventSpan(3, 5, EventClass.STATE)
        >>> len(span)
        3
        >>> span.overlaps(EventSpan(5, 6, EventClass.OCCURRENCE))
        True
    """

    start: int
    end: int
    event_class: EventClass

    def __post_init__(self) -> None:
        if self.start < 0:
            raise InvalidAnnotationError(f"Span start must be non-negative: {self.start}")
        if self.end < self.start:
            raise InvalidAnnotationError(
                f"Span end must be >= span start: ({self.start}, {self.end})"
            )
        if not isinstance(self.event_class, EventClass):
            object.__setattr__(self, "event_class", EventClass(self.event_class))

    def __len__(self) -> int:
        return self.end - self.start + 1

    @property
    def extent(self) -> tuple[int, int]:
        return self.start, self.end

    def overlaps(self, other: EventSpan) -> bool:
        """Whether the two spans share at least one token."""
        return (self.start <= other.end) and (other.start <= self.end)


def validate_spans(n_tokens: int, spans: Iterable[EventSpan]) -> tuple[EventSpan, ...]:
    """Check spans against a sentence length and return them sorted by start.

    Args:
        n_tokens (int): Number of tokens in the sentence.
        spans (Iterable[EventSpan]): Spans to check.

    Returns:
        tuple[EventSpan, ...]: Spans sorted by start.

    Raises:
        InvalidAnnotationError: A span is out of bounds or two spans overlap.
    """
    ordered = tuple(sorted(spans, key=lambda s: (s.start, s.end)))
    previous: EventSpan | None = None
    for span in ordered:
        if span.end >= n_tokens:
            raise InvalidAnnotationError(
                f"Span ({span.start}, {span.end}) out of bounds for {n_tokens} tokens"
            )
        if (previous is not None) and previous.overlaps(span):
            raise InvalidAnnotationError(
                f"Overlapping spans: ({previous.start}, {previous.end})"
                f" and ({span.start}, {span.end})"
            )
        previous = span
    return ordered


@dataclass(frozen=True, slots=True)
class Sentence:
    """Ordered tokens with their gold (or predicted) event spans.

    Args:
        tokens (Sequence[Token]): Tokens of the sentence.
        events (Iterable[EventSpan], optional): Event spans. Stored sorted by start.

    Raises:
        InvalidAnnotationError: A span is out of bounds or two spans overlap.
    """

    tokens: tuple[Token, ...]
    events: tuple[EventSpan, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "events", validate_spans(len(self.tokens), self.events))

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def surfaces(self) -> tuple[str, ...]:
        return tuple(token.surface for token in self.tokens)

    def with_events(self, events: Iterable[EventSpan]) -> Sentence:
        """Return a copy of the sentence carrying different events."""
        return Sentence(self.tokens, tuple(events))

    @classmethod
    def from_surfaces(
        cls,
        surfaces: Sequence[str],
        events: Iterable[EventSpan] = (),
        pos: Sequence[str | None] | None = None,
    ) -> Sentence:
        """Build a sentence from token strings.

        Examples:
            >>> from evtag.corpus import EventClass, EventSpan, Sentence
            >>> events = [EventSpan(1, 1, EventClass.I_STATE)]
            >>> s = Sentence.from_surfaces(["Marco", "pensa"], events)
            >>> s.surfaces
            ('Marco', 'pensa')
        """
        if pos is None:
            pos = [None] * len(surfaces)
        tokens = tuple(Token(surface, tag) for surface, tag in zip(surfaces, pos))
        return cls(tokens, tuple(events))


@dataclass(frozen=True, slots=True)
class Corpus:
    """Ordered collection of sentences belonging to one split.

    Args:
        sentences (Iterable[Sentence]): Sentences of the corpus.
        split_name (str, optional): Name of the split (``train``, ``dev``, ``test``...).
    """

    sentences: tuple[Sentence, ...] = ()
    split_name: str = field(default="")

    def __post_init__(self) -> None:
        object.__setattr__(self, "sentences", tuple(self.sentences))

    def __len__(self) -> int:
        return len(self.sentences)

    def __iter__(self) -> Iterator[Sentence]:
        return iter(self.sentences)

    def __getitem__(self, index: int) -> Sentence:
        return self.sentences[index]

    @property
    def n_tokens(self) -> int:
        return sum(len(sentence) for sentence in self.sentences)

    @property
    def n_events(self) -> int:
        return sum(len(sentence.events) for sentence in self.sentences)

    def with_events(self, events: Iterable[Iterable[EventSpan]]) -> Corpus:
        """Return a copy of the corpus with one replacement span list per sentence."""
        sentences = tuple(
            s.with_events(e) for s, e in zip(self.sentences, events, strict=True)
        )
        return Corpus(sentences, self.split_name)
