"""Binary model container.

Layout, all integers unsigned 32-bit little-endian and all strings length-prefixed UTF-8::

    magic (8 bytes) | format version
    n config entries, then (key, value) string pairs
    n labels, then label strings
    n char vocabulary entries, then entry strings (reserved entries included)
    n tensors, then for each: name, ndim, dims, row-major little-endian float64 data

Tensors are written in :func:`~evtag.network.model.param_shapes` order, so saving a loaded
model reproduces the original bytes.
"""

from __future__ import annotations

import io
import logging
import struct
from typing import TYPE_CHECKING, BinaryIO

import numpy as np

from evtag.constants import MODEL_FORMAT_VERSION, MODEL_MAGIC
from evtag.corpus.bio import label_alphabet
from evtag.embeddings.chars import CharVocab
from evtag.embeddings.table import load_vectors
from evtag.errors import ConfigError, ModelFormatError
from evtag.network.config import config_from_items, config_to_items
from evtag.network.model import TaggerModel

if TYPE_CHECKING:
    from pathlib import Path

    from evtag.embeddings.table import EmbeddingTable

__all__ = [
    "VECTORS_PATH_KEY",
    "save_model",
    "load_model",
    "model_to_bytes",
    "model_from_bytes",
    "read_model_file",
]

logger: logging.Logger = logging.getLogger(__name__)

VECTORS_PATH_KEY: str = "vectors_path"

_U32 = struct.Struct("<I")


def _write_u32(stream: BinaryIO, value: int) -> None:
    stream.write(_U32.pack(value))


def _write_str(stream: BinaryIO, value: str) -> None:
    data = value.encode("utf-8")
    _write_u32(stream, len(data))
    stream.write(data)


def _read_exact(stream: BinaryIO, n_bytes: int) -> bytes:
    data = stream.read(n_bytes)
    if len(data) != n_bytes:
        raise ModelFormatError(
            f"Truncated model file: expected {n_bytes} bytes, got {len(data)}"
        )
    return data


def _read_u32(stream: BinaryIO) -> int:
    return _U32.unpack(_read_exact(stream, _U32.size))[0]


def _read_str(stream: BinaryIO) -> str:
    data = _read_exact(stream, _read_u32(stream))
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ModelFormatError(f"Invalid UTF-8 string in model file: {e}") from None


def save_model(model: TaggerModel, stream: BinaryIO) -> None:
    """Write a model to a binary stream.

    Args:
        model (TaggerModel): Model to save. The word vectors themselves are not stored, only
            ``model.vectors_path``.
        stream (BinaryIO): Destination.
    """
    stream.write(MODEL_MAGIC)
    _write_u32(stream, MODEL_FORMAT_VERSION)
    items = config_to_items(model.config)
    if model.vectors_path is not None:
        items.append((VECTORS_PATH_KEY, model.vectors_path))
    _write_u32(stream, len(items))
    for key, value in items:
        _write_str(stream, key)
        _write_str(stream, value)
    _write_u32(stream, len(model.labels))
    for label in model.labels:
        _write_str(stream, label)
    entries = model.char_vocab.entries
    _write_u32(stream, len(entries))
    for entry in entries:
        _write_str(stream, entry)
    _write_u32(stream, len(model.shapes))
    for name, shape in model.shapes.items():
        _write_str(stream, name)
        _write_u32(stream, len(shape))
        for dim in shape:
            _write_u32(stream, dim)
        stream.write(np.ascontiguousarray(model.params[name], dtype="<f8").tobytes(order="C"))


def load_model(stream: BinaryIO, embeddings: EmbeddingTable | None = None) -> TaggerModel:
    """Read a model written by :func:`save_model`.

    Args:
        stream (BinaryIO): Source.
        embeddings (EmbeddingTable | None, optional): Word vectors. When None, they are loaded
            from the ``vectors_path`` recorded in the file.

    Returns:
        TaggerModel: The model, bit-identical to the saved one.

    Raises:
        ModelFormatError: Bad magic, unsupported version, truncated or inconsistent content,
            labels other than the event label alphabet, missing ``vectors_path`` or embedding
            size mismatch.
    """
    magic = _read_exact(stream, len(MODEL_MAGIC))
    if magic != MODEL_MAGIC:
        raise ModelFormatError(f"Not a model file (magic {magic!r})")
    version = _read_u32(stream)
    if version != MODEL_FORMAT_VERSION:
        raise ModelFormatError(f"Unsupported model format version: {version}")
    items = [(_read_str(stream), _read_str(stream)) for _ in range(_read_u32(stream))]
    settings = dict(items)
    vectors_path = settings.pop(VECTORS_PATH_KEY, None)
    try:
        config = config_from_items(settings.items())
    except ConfigError as e:
        raise ModelFormatError(f"Invalid model configuration: {e}") from None
    labels = tuple(_read_str(stream) for _ in range(_read_u32(stream)))
    if list(labels) != label_alphabet():
        raise ModelFormatError(f"Labels differ from the event label alphabet: {list(labels)}")
    entries = [_read_str(stream) for _ in range(_read_u32(stream))]
    try:
        char_vocab = CharVocab.from_entries(entries)
    except ValueError as e:
        raise ModelFormatError(f"Invalid character vocabulary: {e}") from None
    params = {}
    for _ in range(_read_u32(stream)):
        name = _read_str(stream)
        shape = tuple(_read_u32(stream) for _ in range(_read_u32(stream)))
        n_values = int(np.prod(shape))
        data = _read_exact(stream, 8 * n_values)
        params[name] = np.frombuffer(data, dtype="<f8").astype(np.float64).reshape(shape)
    if stream.read(1):
        raise ModelFormatError("Trailing data after the last tensor")

    if embeddings is None:
        if vectors_path is None:
            raise ModelFormatError(
                "Model records no vectors_path; pass the embedding table explicitly"
            )
        logger.info("Loading word vectors from %s", vectors_path)
        embeddings = load_vectors(vectors_path)
    if config.word_dim != embeddings.dim:
        raise ModelFormatError(
            f"Model expects {config.word_dim}-dim word vectors, got {embeddings.dim}"
        )
    try:
        return TaggerModel(config, params, embeddings, char_vocab, labels, vectors_path)
    except ValueError as e:
        raise ModelFormatError(f"Inconsistent model file: {e}") from None


def model_to_bytes(model: TaggerModel) -> bytes:
    """Serialized bytes of a model."""
    buffer = io.BytesIO()
    save_model(model, buffer)
    return buffer.getvalue()


def model_from_bytes(data: bytes, embeddings: EmbeddingTable | None = None) -> TaggerModel:
    """Inverse of :func:`model_to_bytes`."""
    return load_model(io.BytesIO(data), embeddings)


def read_model_file(path: str | Path, embeddings: EmbeddingTable | None = None) -> TaggerModel:
    """Load a model from a file path."""
    with open(path, "rb") as f:
        return load_model(f, embeddings)
