"""Finite-difference verification of :func:`~evtag.training.backward.backward`."""

from __future__ import annotations

import logging

import numpy as np

from evtag.corpus.types import Sentence
from evtag.embeddings.chars import CharVocab
from evtag.embeddings.table import random_vectors
from evtag.network.config import NetworkConfig
from evtag.network.lstm import sample_dropout_masks
from evtag.network.model import EncodedSentence, TaggerModel, encode_sentence, init_model
from evtag.training.backward import batch_loss, loss_and_gradients

__all__ = [
    "TINY_WORDS",
    "tiny_config",
    "tiny_model",
    "param_errors",
    "grad_check",
]

logger: logging.Logger = logging.getLogger(__name__)

TINY_WORDS: tuple[str, ...] = ("ab", "cde", "a", "edc", "bb")


def tiny_config() -> NetworkConfig:
    """A network small enough for per-parameter finite differences, under 1,000 weights."""
    return NetworkConfig(
        lstm_units=3,
        lstm_layers=2,
        char_emb_dim=3,
        char_filters=2,
        char_filter_width=3,
        word_dim=3,
    )


def tiny_model(
    config: NetworkConfig | None = None, seed: int = 0
) -> tuple[TaggerModel, list[EncodedSentence]]:
    """Random model with every parameter perturbed, and a batch of two short sentences."""
    config = tiny_config() if config is None else config
    rng = np.random.default_rng(seed)
    embeddings = random_vectors(TINY_WORDS, config.word_dim or 3, seed)
    model = init_model(config, embeddings, CharVocab(tuple("abcde")), rng)
    model = model.with_params(
        {name: p + rng.normal(0.0, 0.5, size=p.shape) for name, p in model.params.items()}
    )
    batch = []
    for length in (3, 2):
        words = [TINY_WORDS[i] for i in rng.integers(0, len(TINY_WORDS), size=length)]
        encoded = encode_sentence(Sentence.from_surfaces(words), model, with_gold=False)
        gold = tuple(int(i) for i in rng.integers(0, config.n_labels, size=length))
        batch.append(EncodedSentence(encoded.word_vectors, encoded.char_ids, gold))
    return model, batch


def param_errors(
    config: NetworkConfig | None = None,
    seed: int = 0,
    h: float = 1e-5,
    train_mode: bool = True,
) -> dict[str, float]:
    """Maximum relative error between analytic and central-difference gradients, per tensor.

    The relative error of one entry is ``|a - n| / max(|a|, |n|, 1e-5)``. In train mode the
    same dropout masks are used for every loss evaluation.
    """
    model, batch = tiny_model(config, seed)
    masks = None
    if train_mode:
        mask_rng = np.random.default_rng(seed + 1)
        masks = [sample_dropout_masks(model.config, mask_rng) for _ in batch]
    _, analytic = loss_and_gradients(model, batch, masks)
    errors: dict[str, float] = {}
    for name, tensor in model.params.items():
        worst = 0.0
        for index in np.ndindex(tensor.shape):
            shifted = {}
            for sign in (1.0, -1.0):
                values = tensor.copy()
                values[index] += sign * h
                perturbed = model.with_params({**model.params, name: values})
                shifted[sign] = batch_loss(perturbed, batch, masks)
            numeric = (shifted[1.0] - shifted[-1.0]) / (2.0 * h)
            a = float(analytic[name][index])
            worst = max(worst, abs(a - numeric) / max(abs(a), abs(numeric), 1e-5))
        errors[name] = worst
        logger.debug("%s: max relative error %.3e", name, worst)
    return errors


def grad_check(
    config: NetworkConfig | None = None,
    seed: int = 0,
    h: float = 1e-5,
    train_mode: bool = True,
) -> float:
    """Compare :func:`backward` with central differences on a random tiny model and batch.

    Args:
        config (NetworkConfig | None, optional): Small network. Defaults to
            :func:`tiny_config`.
        seed (int, optional): Seed of the model, batch and dropout masks. Defaults to 0.
        h (float, optional): Finite-difference step. Defaults to 1e-5.
        train_mode (bool, optional): Include fixed dropout masks. Defaults to True.

    Returns:
        float: Maximum relative error over every parameter entry.
    """
    return max(param_errors(config, seed, h, train_mode).values())
