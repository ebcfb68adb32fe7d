"""Character vocabularies for the character-level CNN."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from evtag.constants import PAD_CHAR, UNK_CHAR

if TYPE_CHECKING:
    from collections.abc import Iterable

    from numpy.typing import NDArray

    from evtag.corpus import Corpus

__all__ = [
    "CharVocab",
    "build_char_vocab",
    "PAD_INDEX",
    "UNK_INDEX",
]

PAD_INDEX: int = 0
UNK_INDEX: int = 1


@dataclass(frozen=True, slots=True)
class CharVocab:
    """Ordered character set with reserved padding and unknown entries.

    Args:
        chars (Iterable[str]): Observed characters, without the reserved entries.

    Raises:
        ValueError: Duplicate or multi-character entries.

    Examples:
        >>> from evtag.embeddings import CharVocab
        >>> vocab = CharVocab("ab")
        >>> len(vocab), vocab.encode("abz").tolist()
        (4, [2, 3, 1])
    """

    chars: tuple[str, ...]
    index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        chars = tuple(self.chars)
        if (PAD_CHAR in chars) or (UNK_CHAR in chars):
            chars = tuple(c for c in chars if c not in (PAD_CHAR, UNK_CHAR))
        for c in chars:
            if len(c) != 1:
                raise ValueError(
                    f"Character vocabulary entries must be single characters: {c!r}"
                )
        entries = (PAD_CHAR, UNK_CHAR) + chars
        index = {c: i for i, c in enumerate(entries)}
        if len(index) != len(entries):
            raise ValueError("Character vocabulary entries must be unique")
        object.__setattr__(self, "chars", chars)
        object.__setattr__(self, "index", index)

    @property
    def entries(self) -> tuple[str, ...]:
        """All entries in index order, reserved entries first."""
        return (PAD_CHAR, UNK_CHAR) + self.chars

    def __len__(self) -> int:
        return len(self.chars) + 2

    def encode(self, word: str) -> NDArray[np.int64]:
        """Map each character of a word to its index; unseen characters map to UNK."""
        return np.array([self.index.get(c, UNK_INDEX) for c in word], dtype=np.int64)

    @classmethod
    def from_entries(cls, entries: Iterable[str]) -> CharVocab:
        """Rebuild a vocabulary from :attr:`entries` (reserved entries included)."""
        return cls(tuple(c for c in entries if c not in (PAD_CHAR, UNK_CHAR)))


def build_char_vocab(corpus: Corpus) -> CharVocab:
    """Collect every character of every token surface.

    Args:
        corpus (Corpus): Corpus to scan.

    Returns:
        CharVocab: PAD and UNK, then characters sorted by code point.
    """
    chars: set[str] = set()
    for sentence in corpus:
        for token in sentence.tokens:
            chars.update(token.surface)
    return CharVocab(tuple(sorted(chars)))
