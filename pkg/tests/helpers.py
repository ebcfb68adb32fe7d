from __future__ import annotations

import pprint
from itertools import product
from typing import TYPE_CHECKING

import numpy as np

from evtag.corpus import Corpus, EventClass, EventSpan, Sentence
from evtag.network import NetworkConfig

if TYPE_CHECKING:
    from collections.abc import Iterator, Sequence
    from typing import Any

    from evtag.network import CrfParams


SMALL_CONFIG = NetworkConfig(
    lstm_units=4,
    lstm_layers=2,
    char_emb_dim=3,
    char_filters=3,
    char_filter_width=3,
)


def fmt_result(result: Any, indent: int = 2) -> str:
    try:
        return pprint.pformat(result, indent=indent, width=100)
    except Exception:
        return repr(result)


def spans(*triples: tuple[int, int, str]) -> list[EventSpan]:
    return [EventSpan(start, end, EventClass(name)) for start, end, name in triples]


def sentence(words: str | Sequence[str], *triples: tuple[int, int, str], pos: Sequence[str] | None = None) -> Sentence:
    if isinstance(words, str):
        words = words.split()
    return Sentence.from_surfaces(list(words), spans(*triples), pos=pos)


def corpus(*sentences: Sentence, split_name: str = "") -> Corpus:
    return Corpus(sentences, split_name)


def all_paths(n_steps: int, n_labels: int) -> Iterator[tuple[int, ...]]:
    """Every label path, in lexicographic order."""
    return product(range(n_labels), repeat=n_steps)


def brute_force_scores(emissions: np.ndarray, crf: CrfParams) -> dict[tuple[int, ...], float]:
    from evtag.network import sequence_score

    n_steps, n_labels = emissions.shape
    return {path: sequence_score(emissions, crf, path) for path in all_paths(n_steps, n_labels)}


def random_crf_instance(rng: np.random.Generator, n_steps: int, n_labels: int, scale: float = 2.0):
    from evtag.network import CrfParams

    emissions = rng.normal(0.0, scale, size=(n_steps, n_labels))
    crf = CrfParams(
        rng.normal(0.0, scale, size=(n_labels, n_labels)),
        rng.normal(0.0, scale, size=n_labels),
        rng.normal(0.0, scale, size=n_labels),
    )
    return emissions, crf
