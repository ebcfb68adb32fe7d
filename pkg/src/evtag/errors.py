"""
Exception classes raised by evtag.

Every exception derives from :class:`EvtagError` and from the builtin exception that best
describes it, so callers can catch either.
"""

from __future__ import annotations

__all__ = [
    "EvtagError",
    "InvalidAnnotationError",
    "InvalidLabelError",
    "ColumnFormatError",
    "VectorFormatError",
    "AlignmentError",
    "ConfigError",
    "ModelFormatError",
    "ReportFormatError",
    "TrainingError",
]


class EvtagError(Exception):
    """Base class for all evtag errors."""


class InvalidAnnotationError(EvtagError, ValueError):
    """Event spans violate bounds or overlap within a sentence."""


class InvalidLabelError(EvtagError, ValueError):
    """Label (or label index) is not part of the label alphabet."""


class ColumnFormatError(EvtagError, ValueError):
    """Malformed line in a column-format corpus file.

    Args:
        message (str): Description of the problem.
        line_no (int): 1-based line number of the offending line.
    """

    def __init__(self, message: str, line_no: int) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no: int = line_no


class VectorFormatError(EvtagError, ValueError):
    """Malformed word-vector file.

    Args:
        message (str): Description of the problem.
        line_no (int | None, optional): 1-based line number, if the problem is tied to a line.
    """

    def __init__(self, message: str, line_no: int | None = None) -> None:
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no: int | None = line_no


class AlignmentError(EvtagError, ValueError):
    """Two corpora do not contain the same token sequences.

    Args:
        message (str): Description of the problem.
        sentence_index (int): 0-based index of the first divergent sentence.
    """

    def __init__(self, message: str, sentence_index: int) -> None:
        super().__init__(f"sentence {sentence_index}: {message}")
        self.sentence_index: int = sentence_index


class ConfigError(EvtagError, ValueError):
    """Invalid configuration value, key or file line.

    Args:
        message (str): Description of the problem.
        line_no (int | None, optional): 1-based line number in the configuration file.
        key (str | None, optional): Offending key.
    """

    def __init__(
        self,
        message: str,
        line_no: int | None = None,
        key: str | None = None,
    ) -> None:
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no: int | None = line_no
        self.key: str | None = key


class ModelFormatError(EvtagError, ValueError):
    """Serialized model file is malformed or incompatible."""


class ReportFormatError(EvtagError, ValueError):
    """Machine-readable score report is malformed."""


class TrainingError(EvtagError, RuntimeError):
    """Training cannot proceed or violated one of its invariants."""
