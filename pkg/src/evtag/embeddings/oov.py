"""Out-of-vocabulary statistics of a corpus against an embedding table."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from evtag.embeddings.table import lookup_key
from evtag.utils import safe_div

if TYPE_CHECKING:
    from evtag.corpus import Corpus
    from evtag.embeddings.table import EmbeddingTable

__all__ = [
    "OovReport",
    "oov_rate",
]


@dataclass(frozen=True, slots=True)
class OovReport:
    """Token and type out-of-vocabulary rates, in percent."""

    token_oov_rate: float
    type_oov_rate: float
    n_tokens: int
    n_types: int
    n_oov_tokens: int = 0
    n_oov_types: int = 0

    def format_line(self, name: str) -> str:
        return (
            f"{name}\ttokens={self.n_tokens}\ttypes={self.n_types}"
            f"\ttoken_oov={self.token_oov_rate:.2f}%\ttype_oov={self.type_oov_rate:.2f}%"
        )


def oov_rate(corpus: Corpus, table: EmbeddingTable) -> OovReport:
    """Measure how much of a corpus an embedding table fails to cover.

    A token is out of vocabulary when the lookup fallback chain finds no key. Types are
    distinct lowercased surfaces; a type is out of vocabulary when none of its surface
    variants resolves.

    Args:
        corpus (Corpus): Corpus to measure.
        table (EmbeddingTable): Embedding table.

    Returns:
        OovReport: Rates in percent; ``0.0`` for an empty corpus.

    Examples:
        >>> import numpy as np
        >>> from evtag.corpus import Corpus, Sentence
        >>> from evtag.embeddings import EmbeddingTable, oov_rate
        >>> table = EmbeddingTable(["a", "b", "c"], np.zeros((3, 2)))
        >>> corpus = Corpus([Sentence.from_surfaces(["a", "b", "c", "d"])])
        >>> oov_rate(corpus, table).token_oov_rate
        25.0
    """
    n_tokens = 0
    n_oov_tokens = 0
    covered_types: dict[str, bool] = {}
    for sentence in corpus:
        for token in sentence.tokens:
            n_tokens += 1
            covered = lookup_key(table, token.surface) is not None
            if not covered:
                n_oov_tokens += 1
            key = token.surface.lower()
            covered_types[key] = covered_types.get(key, False) or covered
    n_types = len(covered_types)
    n_oov_types = sum(1 for covered in covered_types.values() if not covered)
    return OovReport(
        token_oov_rate=100.0 * safe_div(n_oov_tokens, n_tokens),
        type_oov_rate=100.0 * safe_div(n_oov_types, n_types),
        n_tokens=n_tokens,
        n_types=n_types,
        n_oov_tokens=n_oov_tokens,
        n_oov_types=n_oov_types,
    )
