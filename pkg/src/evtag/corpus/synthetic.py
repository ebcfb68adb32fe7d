"""Seeded synthetic corpora for desk-scale experiments.

Sentences are assembled from a small template vocabulary in which every trigger word (or
trigger phrase) belongs to exactly one event class, so the token-to-class mapping is
learnable. Class proportions follow the training-split distribution of the Italian EVENTI
corpus.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, TypeVar

import numpy as np

from evtag.corpus.types import Corpus, EventClass, EventSpan, Sentence, Token

if TYPE_CHECKING:
    from collections.abc import Sequence

__all__ = [
    "CLASS_PROPORTIONS",
    "TRIGGERS",
    "generate_synthetic_corpus",
    "generate_synthetic_splits",
    "synthetic_vocabulary",
]

# Events per class in the EVENTI Main Task training data
_CLASS_COUNTS: dict[EventClass, int] = {
    EventClass.OCCURRENCE: 9041,
    EventClass.ASPECTUAL: 446,
    EventClass.I_STATE: 1599,
    EventClass.I_ACTION: 1476,
    EventClass.PERCEPTION: 162,
    EventClass.REPORTING: 714,
    EventClass.STATE: 4090,
}
CLASS_PROPORTIONS: dict[EventClass, float] = {
    cls: count / sum(_CLASS_COUNTS.values()) for cls, count in _CLASS_COUNTS.items()
}

# (tokens, POS) per class; no trigger token is used anywhere else in the vocabulary
TRIGGERS: dict[EventClass, tuple[tuple[tuple[str, ...], str], ...]] = {
    EventClass.OCCURRENCE: (
        (("arriva",), "Verb"),
        (("esplode",), "Verb"),
        (("vince",), "Verb"),
        (("parte",), "Verb"),
        (("incontro",), "Noun"),
        (("attacco",), "Noun"),
        (("elezioni",), "Noun"),
        (("fa", "le", "valigie"), "Verb"),
    ),
    EventClass.ASPECTUAL: (
        (("inizia",), "Verb"),
        (("continua",), "Verb"),
        (("smette",), "Verb"),
        (("termina",), "Verb"),
    ),
    EventClass.I_STATE: (
        (("pensa",), "Verb"),
        (("crede",), "Verb"),
        (("teme",), "Verb"),
        (("spera",), "Verb"),
    ),
    EventClass.I_ACTION: (
        (("promette",), "Verb"),
        (("tenta",), "Verb"),
        (("chiede",), "Verb"),
        (("decide",), "Verb"),
    ),
    EventClass.PERCEPTION: (
        (("vede",), "Verb"),
        (("sente",), "Verb"),
        (("osserva",), "Verb"),
    ),
    EventClass.REPORTING: (
        (("dice",), "Verb"),
        (("afferma",), "Verb"),
        (("dichiara",), "Verb"),
        (("annuncia",), "Verb"),
    ),
    EventClass.STATE: (
        (("crisi",), "Noun"),
        (("guerra",), "Noun"),
        (("malato",), "Adjective"),
        (("felice",), "Adjective"),
        (("in", "grado", "di"), "Preposition"),
    ),
}

_SUBJECTS: tuple[tuple[tuple[str, str], ...], ...] = (
    (("Marco", "PropN"),),
    (("Giulia", "PropN"),),
    (("il", "Det"), ("governo", "Noun")),
    (("la", "Det"), ("polizia", "Noun")),
    (("il", "Det"), ("sindaco", "Noun")),
    (("un", "Det"), ("testimone", "Noun")),
)
_ADVERBS: tuple[tuple[str, str], ...] = (
    ("ieri", "Adv"),
    ("oggi", "Adv"),
    ("ancora", "Adv"),
    ("forse", "Adv"),
)
_OBJECTS: tuple[tuple[tuple[str, str], ...], ...] = (
    (("a", "Prep"), ("Roma", "PropN")),
    (("a", "Prep"), ("casa", "Noun")),
    (("la", "Det"), ("notizia", "Noun")),
    (("con", "Prep"), ("calma", "Noun")),
    (("per", "Prep"), ("tutti", "Pron")),
    (("il", "Det"), ("risultato", "Noun")),
)
_CONNECTIVES: tuple[tuple[str, str], ...] = (
    ("e", "Conj"),
    (",", "Punct"),
    ("ma", "Conj"),
)
_EVENTS_PER_SENTENCE: tuple[int, ...] = (0, 1, 2, 3)
_EVENTS_PER_SENTENCE_P: tuple[float, ...] = (0.1, 0.5, 0.3, 0.1)


def synthetic_vocabulary() -> list[str]:
    """Return every token surface the generator can emit, sorted."""
    words: set[str] = {".", *(w for w, _ in _ADVERBS), *(w for w, _ in _CONNECTIVES)}
    for phrase in _SUBJECTS + _OBJECTS:
        words.update(w for w, _ in phrase)
    for triggers in TRIGGERS.values():
        for tokens, _ in triggers:
            words.update(tokens)
    return sorted(words)


_T = TypeVar("_T")


def _pick(rng: np.random.Generator, options: Sequence[_T]) -> _T:
    return options[int(rng.integers(len(options)))]


def _generate_sentence(
    rng: np.random.Generator, classes: list[EventClass], p: np.ndarray
) -> Sentence:
    tokens: list[Token] = [Token(w, pos) for w, pos in _pick(rng, _SUBJECTS)]
    events: list[EventSpan] = []
    n_events = int(rng.choice(_EVENTS_PER_SENTENCE, p=_EVENTS_PER_SENTENCE_P))
    if n_events == 0:
        tokens.extend(Token(w, pos) for w, pos in _pick(rng, _OBJECTS))
    for k in range(n_events):
        if k > 0:
            word, pos = _pick(rng, _CONNECTIVES)
            tokens.append(Token(word, pos))
        if rng.random() < 0.3:
            word, pos = _pick(rng, _ADVERBS)
            tokens.append(Token(word, pos))
        event_class = classes[int(rng.choice(len(classes), p=p))]
        trigger, pos = _pick(rng, TRIGGERS[event_class])
        start = len(tokens)
        tokens.extend(Token(w, pos) for w in trigger)
        events.append(EventSpan(start, len(tokens) - 1, event_class))
        if rng.random() < 0.6:
            tokens.extend(Token(w, pos) for w, pos in _pick(rng, _OBJECTS))
    tokens.append(Token(".", "Punct"))
    return Sentence(tuple(tokens), tuple(events))


def generate_synthetic_corpus(
    seed: int, n_sentences: int, split_name: str = "synthetic"
) -> Corpus:
    """Generate a deterministic synthetic corpus.

    Args:
        seed (int): Seed of the random generator.
        n_sentences (int): Number of sentences, non-negative.
        split_name (str, optional): Name of the resulting corpus.

    Returns:
        Corpus: Generated corpus; identical for identical arguments.

    Raises:
        ValueError: Negative ``n_sentences``.

    Examples:
        >>> from evtag.corpus import generate_synthetic_corpus
        >>> generate_synthetic_corpus(7, 20) == generate_synthetic_corpus(7, 20)
        True
        >>> len(generate_synthetic_corpus(7, 0))
        0
    """
    if n_sentences < 0:
        raise ValueError(f"n_sentences must be non-negative: {n_sentences}")
    rng = np.random.default_rng(seed)
    classes = list(CLASS_PROPORTIONS)
    p = np.array([CLASS_PROPORTIONS[c] for c in classes])
    sentences = tuple(_generate_sentence(rng, classes, p) for _ in range(n_sentences))
    return Corpus(sentences, split_name)


def generate_synthetic_splits(
    seed: int,
    sizes: tuple[int, int, int] = (2000, 200, 200),
) -> tuple[Corpus, Corpus, Corpus]:
    """Generate disjoint train/dev/test corpora from one seeded stream.

    Args:
        seed (int): Seed of the random generator.
        sizes (tuple[int, int, int], optional): Sentences per split.

    Returns:
        tuple[Corpus, Corpus, Corpus]: Train, dev and test corpora.

    Raises:
        ValueError: Negative split size.
    """
    if any(size < 0 for size in sizes):
        raise ValueError(f"split sizes must be non-negative: {tuple(sizes)}")
    full = generate_synthetic_corpus(seed, sum(sizes))
    n_train, n_dev, _ = sizes
    bounds = ((0, n_train), (n_train, n_train + n_dev), (n_train + n_dev, sum(sizes)))
    return tuple(  # type: ignore[return-value]
        Corpus(full.sentences[lo:hi], name)
        for (lo, hi), name in zip(bounds, ("train", "dev", "test"))
    )
