"""Word-vector tables loaded from the plain-text vector format.

Each data line is ``word v1 v2 ... vd``; an optional first line ``vocab_size dim`` is the
word2vec/fastText header.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from evtag.constants import UNK_VECTOR_SCALE, UNK_VECTOR_SEED
from evtag.errors import VectorFormatError
from evtag.utils import decode_utf8_lines, normalize_digits

if TYPE_CHECKING:
    from collections.abc import Iterable
    from pathlib import Path
    from typing import TextIO

    from numpy.typing import NDArray

__all__ = [
    "EmbeddingTable",
    "load_text_vectors",
    "load_vectors",
    "write_text_vectors",
    "sniff_vector_header",
    "random_vectors",
    "lookup",
    "lookup_key",
    "default_unk_vector",
]

logger: logging.Logger = logging.getLogger(__name__)


def default_unk_vector(dim: int) -> NDArray[np.float64]:
    """Vector for unseen words: uniform on ``[-0.25, 0.25]^dim`` from a fixed seed."""
    rng = np.random.default_rng(UNK_VECTOR_SEED)
    return rng.uniform(-UNK_VECTOR_SCALE, UNK_VECTOR_SCALE, size=dim)


@dataclass(frozen=True, slots=True, eq=False)
class EmbeddingTable:
    """Immutable vocabulary to vector map.

    Args:
        words (Iterable[str]): Vocabulary, in row order of ``vectors``. Must be unique.
        vectors (NDArray[np.float64]): Matrix of shape ``(len(words), dim)``.
        unk_vector (NDArray[np.float64] | None, optional): Fallback vector. Defaults to
            :func:`default_unk_vector`.

    Raises:
        ValueError: Shapes are inconsistent, ``dim`` is not positive or words repeat.
    """

    words: tuple[str, ...]
    vectors: NDArray[np.float64]
    unk_vector: NDArray[np.float64] = field(default=None)  # type: ignore[assignment]
    index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        words = tuple(self.words)
        vectors = np.array(self.vectors, dtype=np.float64, copy=True)
        if vectors.ndim != 2 or vectors.shape[0] != len(words):
            raise ValueError(
                f"vectors must have shape ({len(words)}, dim), got {vectors.shape}"
            )
        if vectors.shape[1] < 1:
            raise ValueError(f"dim must be positive: {vectors.shape[1]}")
        if self.unk_vector is None:
            unk = default_unk_vector(vectors.shape[1])
        else:
            unk = np.array(self.unk_vector, dtype=np.float64)
        if unk.shape != (vectors.shape[1],):
            raise ValueError(
                f"unk_vector must have length {vectors.shape[1]}, got {unk.shape}"
            )
        index = {word: i for i, word in enumerate(words)}
        if len(index) != len(words):
            raise ValueError("words must be unique")
        vectors.setflags(write=False)
        unk.setflags(write=False)
        object.__setattr__(self, "words", words)
        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "unk_vector", unk)
        object.__setattr__(self, "index", index)

    @property
    def dim(self) -> int:
        return int(self.vectors.shape[1])

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: object) -> bool:
        return word in self.index

    def vector(self, word: str) -> NDArray[np.float64]:
        """Stored vector of ``word`` (exact match only).

        Raises:
            KeyError: Word not in the table.
        """
        return self.vectors[self.index[word]]

    def lookup(self, token: str) -> NDArray[np.float64]:
        """See :func:`lookup`."""
        return lookup(self, token)


def lookup_key(table: EmbeddingTable, token: str) -> str | None:
    """Return the table key a token resolves to, or None when the token is out of vocabulary.

    The fallback chain is: exact match, lowercased match, lowercased match with every decimal
    digit replaced by ``0``.

    Examples:
        >>> import numpy as np
        >>> from evtag.embeddings import EmbeddingTable, lookup_key
        >>> table = EmbeddingTable(["casa", "00:00"], np.zeros((2, 2)))
        >>> lookup_key(table, "Casa"), lookup_key(table, "12:30"), lookup_key(table, "Roma")
        ('casa', '00:00', None)
    """
    if token in table.index:
        return token
    lowered = token.lower()
    if lowered in table.index:
        return lowered
    normalized = normalize_digits(lowered)
    if normalized in table.index:
        return normalized
    return None


def lookup(table: EmbeddingTable, token: str) -> NDArray[np.float64]:
    """Look up a token, falling back to ``table.unk_vector``.

    Args:
        table (EmbeddingTable): Table to search.
        token (str): Token surface.

    Returns:
        NDArray[np.float64]: Vector of length ``table.dim``.
    """
    key = lookup_key(table, token)
    if key is None:
        return table.unk_vector
    return table.vectors[table.index[key]]


def load_text_vectors(stream: Iterable[str], has_header: bool) -> EmbeddingTable:
    """Load vectors from the plain-text format.

    Duplicate words keep their first occurrence; the number of dropped duplicates is logged.

    Args:
        stream (Iterable[str]): Lines of UTF-8 text.
        has_header (bool): First line is ``vocab_size dim``.

    Returns:
        EmbeddingTable: Loaded table, with ``dim`` inferred from the first data line.

    Raises:
        VectorFormatError: Empty file, malformed header, ragged line or header/body ``dim``
            mismatch.

    Examples:
        >>> import io
        >>> from evtag.embeddings import load_text_vectors
        >>> stream = io.StringIO("casa 0.1 0.2 0.3\\nandare 1 2 3\\n")
        >>> table = load_text_vectors(stream, has_header=False)
        >>> table.dim, len(table)
        (3, 2)
    """
    header_dim: int | None = None
    dim: int | None = None
    words: list[str] = []
    rows: list[NDArray[np.float64]] = []
    seen: set[str] = set()
    n_duplicates = 0
    expect_header = has_header
    for line_no, raw in enumerate(stream, start=1):
        line = raw.rstrip()
        if not line:
            continue
        fields = line.split(" ")
        if expect_header:
            expect_header = False
            if len(fields) != 2:
                raise VectorFormatError(
                    f"expected header 'vocab_size dim', got {line!r}", line_no
                )
            try:
                _, header_dim = int(fields[0]), int(fields[1])
            except ValueError:
                raise VectorFormatError(f"non-integer header {line!r}", line_no) from None
            continue
        word, values = fields[0], fields[1:]
        if dim is None:
            dim = len(values)
            if dim < 1:
                raise VectorFormatError(f"no vector values for {word!r}", line_no)
            if (header_dim is not None) and (header_dim != dim):
                raise VectorFormatError(
                    f"header declares dim {header_dim}, data has dim {dim}", line_no
                )
        if len(values) != dim:
            raise VectorFormatError(f"expected {dim} values, found {len(values)}", line_no)
        if word in seen:
            n_duplicates += 1
            continue
        try:
            row = np.array([float(v) for v in values], dtype=np.float64)
        except ValueError:
            raise VectorFormatError(
                f"non-numeric vector value for {word!r}", line_no
            ) from None
        seen.add(word)
        words.append(word)
        rows.append(row)
    if dim is None:
        raise VectorFormatError("no vectors found")
    if n_duplicates:
        logger.warning("Ignored %d duplicate words (kept first occurrence)", n_duplicates)
    logger.debug("Loaded %d vectors of dim %d", len(words), dim)
    return EmbeddingTable(tuple(words), np.vstack(rows))


def write_text_vectors(table: EmbeddingTable, stream: TextIO, header: bool = False) -> None:
    """Write a table in the plain-text format, with round-trip exact float values.

    Args:
        table (EmbeddingTable): Table to write.
        stream (TextIO): Destination text stream.
        header (bool, optional): Write the ``vocab_size dim`` header. Defaults to False.
    """
    if header:
        stream.write(f"{len(table)} {table.dim}\n")
    for word, row in zip(table.words, table.vectors):
        stream.write(word + " " + " ".join(repr(float(v)) for v in row) + "\n")


def sniff_vector_header(path: str | Path) -> bool:
    """Whether the first line of a vector file is a ``vocab_size dim`` header."""
    with open(path, "rb") as f:
        fields = f.readline().split()
    return (len(fields) == 2) and all(value.isdigit() for value in fields)


def load_vectors(path: str | Path) -> EmbeddingTable:
    """Load a vector file from disk, detecting the header.

    Raises:
        VectorFormatError: Malformed file, including bytes that are not UTF-8.
    """
    has_header = sniff_vector_header(path)
    with open(path, "rb") as f:
        lines = decode_utf8_lines(f, path, VectorFormatError)
        table = load_text_vectors(lines, has_header=has_header)
    logger.info("Loaded %d vectors of dim %d from %s", len(table), table.dim, path)
    return table


def random_vectors(words: Iterable[str], dim: int, seed: int) -> EmbeddingTable:
    """Random table covering ``words``, uniform on ``[-0.5, 0.5]``."""
    vocabulary = tuple(dict.fromkeys(words))
    rng = np.random.default_rng(seed)
    return EmbeddingTable(vocabulary, rng.uniform(-0.5, 0.5, size=(len(vocabulary), dim)))
