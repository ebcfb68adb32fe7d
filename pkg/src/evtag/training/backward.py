"""Analytic gradients of the mean CRF negative log-likelihood of a batch."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from evtag.network.char_cnn import char_cnn_backward
from evtag.network.crf import crf_nll, crf_nll_gradients
from evtag.network.lstm import DIRECTIONS, lstm_direction_backward
from evtag.network.model import EncodedSentence, encode_sentence, forward_with_cache

if TYPE_CHECKING:
    from collections.abc import Sequence

    from evtag.corpus.types import Sentence
    from evtag.network.lstm import DropoutMasks
    from evtag.network.model import TaggerModel
    from evtag.training.optimizer import Gradients

__all__ = [
    "loss_and_gradients",
    "backward",
    "batch_loss",
]


def _encoded(item: EncodedSentence | Sentence, model: TaggerModel) -> EncodedSentence:
    encoded = item if isinstance(item, EncodedSentence) else encode_sentence(item, model)
    if encoded.gold is None:
        raise ValueError("Training sentences need gold labels")
    if len(encoded) == 0:
        raise ValueError("Training sentences need at least one token")
    return encoded


def loss_and_gradients(
    model: TaggerModel,
    batch: Sequence[EncodedSentence | Sentence],
    masks: Sequence[DropoutMasks] | None = None,
) -> tuple[float, Gradients]:
    """Mean negative log-likelihood of a batch and its gradient for every parameter.

    Word vectors are inputs, not parameters, and get no gradient.

    Args:
        model (TaggerModel): Model to differentiate.
        batch (Sequence[EncodedSentence | Sentence]): Annotated sentences, non-empty.
        masks (Sequence[DropoutMasks] | None, optional): One dropout mask set per sentence,
            or None for eval mode.

    Returns:
        tuple[float, Gradients]: Mean loss and gradients keyed like ``model.params``.

    Raises:
        ValueError: Empty batch, unannotated or empty sentence, or mask count mismatch.
    """
    if len(batch) == 0:
        raise ValueError("Batch must not be empty")
    if (masks is not None) and (len(masks) != len(batch)):
        raise ValueError(f"Got {len(masks)} mask sets for {len(batch)} sentences")
    grads: Gradients = {name: np.zeros_like(p) for name, p in model.params.items()}
    cnn = model.char_cnn
    layers = model.lstm_layers
    units = model.config.lstm_units
    word_dim = model.embeddings.dim
    total = 0.0
    for i, item in enumerate(batch):
        encoded = _encoded(item, model)
        scores, cache = forward_with_cache(encoded, model, None if masks is None else masks[i])
        gold = encoded.gold
        crf_grads = crf_nll_gradients(scores, model.crf, gold)  # type: ignore[arg-type]
        total += crf_grads.nll
        grads["crf.transitions"] += crf_grads.transitions
        grads["crf.start"] += crf_grads.start_scores
        grads["crf.end"] += crf_grads.end_scores
        grads["emission.W"] += crf_grads.emissions.T @ cache.top
        grads["emission.b"] += crf_grads.emissions.sum(axis=0)
        d_out = crf_grads.emissions @ model.emission_weights
        for layer in range(len(layers) - 1, -1, -1):
            d_in = None
            for k, direction in enumerate(DIRECTIONS):
                prefix = f"lstm{layer}.{direction}"
                d_x = lstm_direction_backward(
                    d_out[:, k * units : (k + 1) * units],
                    cache.lstm_caches[layer][direction],
                    layers[layer].direction(direction),
                    grads[f"{prefix}.W"],
                    grads[f"{prefix}.U"],
                    grads[f"{prefix}.b"],
                )
                d_in = d_x if d_in is None else d_in + d_x
            d_out = d_in
        for t, char_cache in enumerate(cache.char_caches):
            char_cnn_backward(
                d_out[t, word_dim:],
                char_cache,
                cnn,
                grads["char_embeddings"],
                grads["char_filters"],
                grads["char_bias"],
            )
    n = len(batch)
    return total / n, {name: g / n for name, g in grads.items()}


def backward(
    model: TaggerModel,
    batch: Sequence[EncodedSentence | Sentence],
    masks: Sequence[DropoutMasks] | None = None,
) -> Gradients:
    """Gradients of the mean batch negative log-likelihood; see :func:`loss_and_gradients`."""
    _, grads = loss_and_gradients(model, batch, masks)
    return grads


def batch_loss(
    model: TaggerModel,
    batch: Sequence[EncodedSentence | Sentence],
    masks: Sequence[DropoutMasks] | None = None,
) -> float:
    """Mean negative log-likelihood of a batch, eval mode unless ``masks`` are given."""
    if len(batch) == 0:
        raise ValueError("Batch must not be empty")
    total = 0.0
    for i, item in enumerate(batch):
        encoded = _encoded(item, model)
        scores, _ = forward_with_cache(encoded, model, None if masks is None else masks[i])
        total += crf_nll(scores, model.crf, encoded.gold)  # type: ignore[arg-type]
    return total / len(batch)
