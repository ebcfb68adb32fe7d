"""Reading and writing the tab-separated column format.

One token per line as ``surface<TAB>pos<TAB>label``; ``pos`` is ``_`` when unknown; a
blank line terminates a sentence.
"""

from __future__ import annotations

import io
import logging
from typing import TYPE_CHECKING

from evtag.constants import LABEL_INDEX, MISSING_POS
from evtag.corpus.bio import decode_bio, encode_bio
from evtag.corpus.types import Corpus, Sentence, Token
from evtag.errors import ColumnFormatError
from evtag.utils import decode_utf8_lines

if TYPE_CHECKING:
    from collections.abc import Iterable
    from pathlib import Path
    from typing import TextIO

__all__ = [
    "read_column_file",
    "write_column_file",
    "load_corpus",
    "format_corpus",
]

logger: logging.Logger = logging.getLogger(__name__)

_N_COLUMNS: int = 3


def read_column_file(stream: Iterable[str], split_name: str = "") -> Corpus:
    """Read a corpus in column format.

    Gold spans are recovered with :func:`evtag.corpus.decode_bio`, so malformed BIO runs are
    repaired rather than rejected.

    Args:
        stream (Iterable[str]): Lines of UTF-8 text.
        split_name (str, optional): Name given to the resulting corpus.

    Returns:
        Corpus: One sentence per blank-line-separated block.

    Raises:
        ColumnFormatError: Wrong column count, empty surface or unknown label.

    Examples:
        >>> import io
        >>> from evtag.corpus import read_column_file
        >>> text = "Marco\\tNoun\\tO\\nè\\tVerb\\tB-STATE\\n\\n"
        >>> corpus = read_column_file(io.StringIO(text))
        >>> len(corpus), corpus[0].events[0].event_class.value
        (1, 'STATE')
    """
    sentences: list[Sentence] = []
    tokens: list[Token] = []
    labels: list[str] = []

    def flush() -> None:
        if tokens:
            sentences.append(Sentence(tuple(tokens), tuple(decode_bio(labels))))
            tokens.clear()
            labels.clear()

    for line_no, raw in enumerate(stream, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            flush()
            continue
        fields = line.split("\t")
        if len(fields) != _N_COLUMNS:
            raise ColumnFormatError(
                f"expected {_N_COLUMNS} tab-separated columns, found {len(fields)}", line_no
            )
        surface, pos, label = fields
        if not surface:
            raise ColumnFormatError("empty token surface", line_no)
        if label not in LABEL_INDEX:
            raise ColumnFormatError(f"unknown label {label!r}", line_no)
        tokens.append(Token(surface, None if pos in ("", MISSING_POS) else pos))
        labels.append(label)
    flush()
    corpus = Corpus(tuple(sentences), split_name)
    logger.debug("Read %d sentences, %d events", len(corpus), corpus.n_events)
    return corpus


def write_column_file(corpus: Corpus, stream: TextIO) -> None:
    """Write a corpus in column format.

    Every sentence, including the last one, is followed by a blank line.

    Args:
        corpus (Corpus): Corpus to write.
        stream (TextIO): Destination text stream.
    """
    for sentence in corpus:
        for token, label in zip(sentence.tokens, encode_bio(sentence)):
            pos = token.pos if token.pos else MISSING_POS
            stream.write(f"{token.surface}\t{pos}\t{label}\n")
        stream.write("\n")


def format_corpus(corpus: Corpus) -> str:
    """Render a corpus in column format as a string."""
    buffer = io.StringIO()
    write_column_file(corpus, buffer)
    return buffer.getvalue()


def load_corpus(path: str | Path, split_name: str | None = None) -> Corpus:
    """Read a column-format file from disk.

    Args:
        path (str | Path): File to read.
        split_name (str | None, optional): Split name. Defaults to the file name.

    Returns:
        Corpus: Parsed corpus.

    Raises:
        ColumnFormatError: Malformed line, including bytes that are not UTF-8.
    """
    with open(path, "rb") as f:
        lines = decode_utf8_lines(f, path, ColumnFormatError)
        corpus = read_column_file(
            lines, split_name=str(path) if split_name is None else split_name
        )
    logger.info(
        "Read %s: %d sentences, %d tokens, %d events",
        path,
        len(corpus),
        corpus.n_tokens,
        corpus.n_events,
    )
    return corpus
