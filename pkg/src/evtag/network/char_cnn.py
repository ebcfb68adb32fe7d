"""Character-level CNN word features.

Characters are embedded, padded with the PAD embedding so that every window position is valid,
convolved with ``tanh`` activation and max-pooled over positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from evtag.embeddings.chars import PAD_INDEX

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import NDArray

__all__ = [
    "CharCnnParams",
    "CharCnnCache",
    "char_cnn_forward",
    "char_cnn_forward_cached",
    "char_cnn_backward",
]


@dataclass(frozen=True, slots=True, eq=False)
class CharCnnParams:
    """Character CNN parameters.

    Attributes:
        char_embeddings: Matrix ``|CharVocab| x char_emb_dim``.
        filters: Tensor ``char_filters x char_filter_width x char_emb_dim``.
        filter_bias: Vector ``char_filters``.
    """

    char_embeddings: NDArray[np.float64]
    filters: NDArray[np.float64]
    filter_bias: NDArray[np.float64]

    def __post_init__(self) -> None:
        n_filters, _, emb_dim = self.filters.shape
        if self.char_embeddings.shape[1] != emb_dim:
            raise ValueError(
                f"char_embeddings dim {self.char_embeddings.shape[1]} "
                f"!= filter depth {emb_dim}"
            )
        if self.filter_bias.shape != (n_filters,):
            raise ValueError(
                f"filter_bias must have shape ({n_filters},), got {self.filter_bias.shape}"
            )


@dataclass(frozen=True, slots=True, eq=False)
class CharCnnCache:
    """Intermediate values of one word, kept for the backward pass."""

    padded_ids: NDArray[np.int64]
    windows: NDArray[np.float64]
    pooled: NDArray[np.float64]
    argmax: NDArray[np.int64]


def char_cnn_forward_cached(
    word_chars: Sequence[int] | NDArray[np.int64],
    params: CharCnnParams,
) -> tuple[NDArray[np.float64], CharCnnCache]:
    """Compute character features of one word and keep the backward-pass cache.

    Raises:
        ValueError: Empty word.
    """
    ids = np.asarray(word_chars, dtype=np.int64)
    if ids.size == 0:
        raise ValueError("Word must have at least one character")
    n_filters, width, emb_dim = params.filters.shape
    pad = (width - 1) // 2
    padded_ids = np.concatenate(
        [np.full(pad, PAD_INDEX, dtype=np.int64), ids, np.full(pad, PAD_INDEX, dtype=np.int64)]
    )
    embedded = params.char_embeddings[padded_ids]
    # one flattened window per character position
    windows = np.lib.stride_tricks.sliding_window_view(embedded, (width, emb_dim))[:, 0]
    windows = windows.reshape(ids.size, width * emb_dim)
    flat_filters = params.filters.reshape(n_filters, -1)
    activations = np.tanh(windows @ flat_filters.T + params.filter_bias)
    argmax = activations.argmax(axis=0)
    pooled = activations[argmax, np.arange(n_filters)]
    return pooled, CharCnnCache(padded_ids, windows, pooled, argmax)


def char_cnn_forward(
    word_chars: Sequence[int] | NDArray[np.int64],
    params: CharCnnParams,
) -> NDArray[np.float64]:
    """Compute the character features of one word.

    Args:
        word_chars (Sequence[int] | NDArray[np.int64]): Character indices of the word.
        params (CharCnnParams): CNN parameters.

    Returns:
        NDArray[np.float64]: Vector of length ``char_filters``.

    Raises:
        ValueError: Empty word.

    Examples:
        >>> import numpy as np
        >>> from evtag.network import CharCnnParams, char_cnn_forward
        >>> params = CharCnnParams(np.eye(3), np.ones((2, 3, 3)), np.zeros(2))
        >>> char_cnn_forward([2], params).shape
        (2,)
    """
    pooled, _ = char_cnn_forward_cached(word_chars, params)
    return pooled


def char_cnn_backward(
    d_pooled: NDArray[np.float64],
    cache: CharCnnCache,
    params: CharCnnParams,
    d_char_embeddings: NDArray[np.float64],
    d_filters: NDArray[np.float64],
    d_filter_bias: NDArray[np.float64],
) -> None:
    """Accumulate parameter gradients of one word in place.

    Args:
        d_pooled (NDArray[np.float64]): Gradient with respect to the pooled features.
        cache (CharCnnCache): Cache from :func:`char_cnn_forward_cached`.
        params (CharCnnParams): CNN parameters.
        d_char_embeddings (NDArray[np.float64]): Accumulator for the embedding gradient.
        d_filters (NDArray[np.float64]): Accumulator for the filter gradient.
        d_filter_bias (NDArray[np.float64]): Accumulator for the bias gradient.
    """
    n_filters, width, emb_dim = params.filters.shape
    d_pre = d_pooled * (1.0 - cache.pooled**2)
    d_filter_bias += d_pre
    shape = (n_filters, width, emb_dim)
    d_filters += (d_pre[:, None] * cache.windows[cache.argmax]).reshape(shape)
    d_windows = (d_pre[:, None] * params.filters.reshape(n_filters, -1)).reshape(shape)
    rows = cache.padded_ids[cache.argmax[:, None] + np.arange(width)[None, :]]
    np.add.at(d_char_embeddings, rows, d_windows)
