"""BIO encoding and decoding of event spans over the 15-label alphabet."""

from __future__ import annotations

from typing import TYPE_CHECKING

from evtag.constants import LABEL_INDEX, LABELS, OUTSIDE_LABEL
from evtag.corpus.types import EventClass, EventSpan, validate_spans
from evtag.errors import InvalidLabelError

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from evtag.corpus.types import Sentence

__all__ = [
    "TagSequence",
    "label_alphabet",
    "encode_bio",
    "encode_spans",
    "decode_bio",
    "labels_to_indices",
    "indices_to_labels",
]

TagSequence = tuple[str, ...]
"""One label from :func:`label_alphabet` per token."""


def label_alphabet() -> list[str]:
    """Return the label alphabet.

    The label index of a label is its position in this list: ``"O"`` first, then ``B-``/``I-``
    pairs for the seven classes in canonical order.

    Returns:
        list[str]: The 15 labels.

    Examples:
        >>> from evtag.corpus import label_alphabet
        >>> labels = label_alphabet()
        >>> len(labels)
        15
        >>> labels[:3]
        ['O', 'B-OCCURRENCE', 'I-OCCURRENCE']
    """
    return list(LABELS)


def encode_spans(n_tokens: int, spans: Iterable[EventSpan]) -> TagSequence:
    """Encode spans over ``n_tokens`` tokens as BIO labels.

    Args:
        n_tokens (int): Sentence length.
        spans (Iterable[EventSpan]): Spans to encode.

    Returns:
        TagSequence: One label per token.

    Raises:
        InvalidAnnotationError: Overlapping or out-of-bounds spans.
    """
    tags = [OUTSIDE_LABEL] * n_tokens
    for span in validate_spans(n_tokens, spans):
        name = span.event_class.value
        tags[span.start] = f"B-{name}"
        for i in range(span.start + 1, span.end + 1):
            tags[i] = f"I-{name}"
    return tuple(tags)


def encode_bio(sentence: Sentence) -> TagSequence:
    """Encode the events of a sentence as BIO labels.

    Args:
        sentence (Sentence): Annotated sentence.

    Returns:
        TagSequence: One label per token.

    Raises:
        InvalidAnnotationError: Overlapping or out-of-bounds spans.

    Examples:
        >>> from evtag.corpus import EventClass, EventSpan, Sentence, encode_bio
        >>> s = Sentence.from_surfaces(
        ...     "Marco pensa di andare a casa .".split(),
        ...     [EventSpan(1, 1, EventClass.I_STATE), EventSpan(3, 3, EventClass.OCCURRENCE)],
        ... )
        >>> encode_bio(s)
        ('O', 'B-I_STATE', 'O', 'B-OCCURRENCE', 'O', 'O', 'O')
    """
    return encode_spans(len(sentence), sentence.events)


def decode_bio(tags: Sequence[str]) -> list[EventSpan]:
    """Decode BIO labels into event spans.

    Maximal ``B-x (I-x)*`` runs become spans of class ``x``. Malformed input is repaired: an
    ``I-x`` that does not continue a run of class ``x`` starts a new span, as if it were
    ``B-x``.

    Args:
        tags (Sequence[str]): Labels from :func:`label_alphabet`.

    Returns:
        list[EventSpan]: Non-overlapping spans sorted by start.

    Raises:
        InvalidLabelError: Label not in the alphabet.

    Examples:
        >>> from evtag.corpus import decode_bio
        >>> decode_bio(["I-STATE", "I-STATE", "O"])
        [EventSpan(start=0, end=1, event_class=<EventClass.STATE: 'STATE'>)]
    """
    spans: list[EventSpan] = []
    run_start = -1
    run_class: str | None = None
    for i, tag in enumerate(tags):
        if tag not in LABEL_INDEX:
            raise InvalidLabelError(f"Unknown label at position {i}: {tag!r}")
        if tag == OUTSIDE_LABEL:
            if run_class is not None:
                spans.append(EventSpan(run_start, i - 1, EventClass(run_class)))
            run_class = None
            continue
        prefix, name = tag[0], tag[2:]
        if (prefix == "B") or (name != run_class):
            if run_class is not None:
                spans.append(EventSpan(run_start, i - 1, EventClass(run_class)))
            run_start, run_class = i, name
    if run_class is not None:
        spans.append(EventSpan(run_start, len(tags) - 1, EventClass(run_class)))
    return spans


def labels_to_indices(tags: Iterable[str]) -> list[int]:
    """Map labels to label indices.

    Raises:
        InvalidLabelError: Label not in the alphabet.
    """
    indices = []
    for tag in tags:
        try:
            indices.append(LABEL_INDEX[tag])
        except KeyError:
            raise InvalidLabelError(f"Unknown label: {tag!r}") from None
    return indices


def indices_to_labels(indices: Iterable[int]) -> TagSequence:
    """Map label indices to labels.

    Raises:
        InvalidLabelError: Index outside the alphabet.
    """
    labels = []
    for index in indices:
        if not 0 <= index < len(LABELS):
            raise InvalidLabelError(f"Label index out of range: {index}")
        labels.append(LABELS[index])
    return tuple(labels)
