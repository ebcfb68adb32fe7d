"""
Utility functions.
"""

from __future__ import annotations

import os
import re
import tempfile
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable, Iterator
    from pathlib import Path

__all__ = [
    "normalize_digits",
    "safe_div",
    "harmonic_mean",
    "iter_key_values",
    "decode_utf8_lines",
    "write_text_atomic",
    "write_bytes_atomic",
]

_DIGIT_RE: re.Pattern[str] = re.compile(r"\d")


def normalize_digits(text: str) -> str:
    """Replace every decimal digit with ``0``.

    Args:
        text (str): Text to normalize.

    Returns:
        str: Normalized text.

    Examples:
        >>> from evtag.utils import normalize_digits
        >>> normalize_digits("12/05/2014")
        '00/00/0000'
    """
    return _DIGIT_RE.sub("0", text)


def safe_div(numerator: float, denominator: float) -> float:
    """Divide, defining ``x / 0`` as ``0.0``.

    Examples:
        >>> from evtag.utils import safe_div
        >>> safe_div(1, 4)
        0.25
        >>> safe_div(0, 0)
        0.0
    """
    if denominator == 0:
        return 0.0
    return numerator / denominator


def harmonic_mean(a: float, b: float) -> float:
    """F-measure style harmonic mean, ``0.0`` when both values are zero."""
    return safe_div(2 * a * b, a + b)


def iter_key_values(lines: Iterable[str]) -> Iterator[tuple[int, str, str]]:
    """Parse ``key = value`` lines.

    Blank lines and lines starting with ``#`` are skipped; trailing ``# ...`` comments are
    stripped.

    Args:
        lines (Iterable[str]): Lines to parse.

    Yields:
        tuple[int, str, str]: 1-based line number, key and value.

    Raises:
        ValueError: Line is not of the form ``key = value``.

    Examples:
        >>> from evtag.utils import iter_key_values
        >>> list(iter_key_values(["# comment", "", "seed = 7  # fixed"]))
        [(3, 'seed', '7')]
    """
    for line_no, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if (not sep) or (not key) or (not value):
            raise ValueError(f"line {line_no}: expected 'key = value', got {raw.rstrip()!r}")
        yield line_no, key, value


def decode_utf8_lines(
    lines: Iterable[bytes],
    path: str | Path,
    error: Callable[[str, int], Exception],
) -> Iterator[str]:
    """Decode the lines of a binary file as UTF-8.

    Args:
        lines (Iterable[bytes]): Raw lines, endings included.
        path (str | Path): File name used in the error message.
        error (Callable[[str, int], Exception]): Builds the exception from a message and a
            1-based line number.

    Yields:
        str: Decoded lines.

    Examples:
        >>> from evtag.utils import decode_utf8_lines
        >>> list(decode_utf8_lines([b"casa\\n", b"citt\\xc3\\xa0\\n"], "f.txt", ValueError))
        ['casa\\n', 'città\\n']
        >>> list(decode_utf8_lines([b"ok\\n", b"citt\\xe0\\n"], "f.txt", ValueError))
        Traceback (most recent call last):
        ...
        ValueError: ('f.txt: invalid UTF-8 byte 0xe0', 2)
    """
    for line_no, raw in enumerate(lines, start=1):
        try:
            yield raw.decode("utf-8")
        except UnicodeDecodeError as e:
            raise error(f"{path}: invalid UTF-8 byte 0x{raw[e.start]:02x}", line_no) from None


def write_text_atomic(path: str | Path, text: str) -> None:
    """Write text to a file through a temporary file and a rename.

    The destination is either left untouched or fully written.

    Args:
        path (str | Path): Destination file.
        text (str): UTF-8 text to write.
    """
    write_bytes_atomic(path, text.encode("utf-8"))


def write_bytes_atomic(path: str | Path, data: bytes) -> None:
    """Write bytes to a file through a temporary file and a rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".evtag-", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise
