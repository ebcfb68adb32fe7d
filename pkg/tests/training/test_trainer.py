import logging
from dataclasses import replace

import numpy as np
import pytest

from evtag.corpus import generate_synthetic_splits, synthetic_vocabulary
from evtag.embeddings import EmbeddingTable, build_char_vocab, oov_rate, random_vectors
from evtag.errors import TrainingError
from evtag.evaluation import score
from evtag.network import (
    NetworkConfig,
    emissions,
    encode_sentence,
    init_model,
    model_to_bytes,
    predict_corpus,
    sample_dropout_masks,
)
from evtag.training import (
    HISTORY_HEADER,
    EarlyStopping,
    EpochRecord,
    OptimizerState,
    TrainConfig,
    TrainHistory,
    batch_loss,
    clip_global_norm,
    loss_and_gradients,
    nadam_step,
    train,
)

try:
    from .helpers import SMALL_CONFIG, corpus, fmt_result, sentence
except ImportError:
    import sys
    from os import path

    sys.path.append(path.dirname(path.dirname(path.abspath(__file__))))
    from helpers import SMALL_CONFIG, corpus, fmt_result, sentence

QUICK = TrainConfig(batch_size=8, max_epochs=2, patience=2, seed=3)


@pytest.mark.parametrize(
    "test_case",
    [
        {
            "description": "Plateau from epoch 2",
            "patience": 2,
            "scores": [0.1, 0.5, 0.5, 0.4, 0.9],
            "stops_at": 4,
            "best_epoch": 2,
        },
        {
            "description": "Steady improvement",
            "patience": 2,
            "scores": [0.1, 0.2, 0.3, 0.4],
            "stops_at": None,
            "best_epoch": 4,
        },
        {
            "description": "Patience of one",
            "patience": 1,
            "scores": [0.3, 0.3],
            "stops_at": 2,
            "best_epoch": 1,
        },
        {
            "description": "Zero scores still count as first best",
            "patience": 3,
            "scores": [0.0, 0.0, 0.0, 0.0],
            "stops_at": 4,
            "best_epoch": 1,
        },
    ],
)
def test_early_stopping(test_case):
    stopper = EarlyStopping(test_case["patience"])
    stops_at = None
    for epoch, value in enumerate(test_case["scores"], start=1):
        if stopper.update(value):
            stops_at = epoch
            break
    actual = (stops_at, stopper.best_epoch)
    expected = (test_case["stops_at"], test_case["best_epoch"])
    assert actual == expected, "\n".join(
        (
            f"Description: {test_case['description']!r}",
            f"Expected: {fmt_result(expected)!s}",
            f"Actual: {fmt_result(actual)!s}",
        )
    )


def test_history_csv():
    history = TrainHistory((EpochRecord(1, 2.5, 0.5, 0.25), EpochRecord(2, 1.5, 0.75, 0.5)), 2, 1.0, False)
    assert history.best.epoch == 2
    assert history.to_csv().splitlines() == [HISTORY_HEADER, "1,2.5,0.5,0.25", "2,1.5,0.75,0.5"]


def test_empty_training_corpus(synthetic_vectors):
    with pytest.raises(TrainingError):
        train(corpus(), corpus(), synthetic_vectors, SMALL_CONFIG, QUICK)


def test_first_step_reduces_loss(synthetic_splits, synthetic_vectors):
    train_split, _, _ = synthetic_splits
    config = TrainConfig(learning_rate=1e-4)
    rng = np.random.default_rng(config.seed)
    model = init_model(SMALL_CONFIG, synthetic_vectors, build_char_vocab(train_split), rng)
    batch = [encode_sentence(s, model) for s in list(train_split)[: config.batch_size]]
    masks = [sample_dropout_masks(model.config, rng) for _ in batch]
    before, grads = loss_and_gradients(model, batch, masks)
    params, _ = nadam_step(model.params, clip_global_norm(grads, config.tau), OptimizerState.zeros_like(model.params), config)
    after = batch_loss(model.with_params(params), batch, masks)
    assert after < before


def test_train_is_deterministic(synthetic_splits, synthetic_vectors, caplog):
    train_split, dev, _ = synthetic_splits
    with caplog.at_level(logging.INFO, logger="evtag.training.trainer"):
        model_a, history_a = train(train_split, dev, synthetic_vectors, SMALL_CONFIG, QUICK)
    model_b, history_b = train(train_split, dev, synthetic_vectors, SMALL_CONFIG, QUICK)
    assert history_a == history_b
    assert model_to_bytes(model_a) == model_to_bytes(model_b)
    assert len(history_a.records) == 2
    assert [r.epoch for r in history_a.records] == [1, 2]
    assert 0.0 < history_a.max_clipped_norm <= QUICK.tau * (1 + 1e-9)
    assert history_a.records[1].mean_nll < history_a.records[0].mean_nll
    assert "1, " in caplog.text
    best_f1 = score(dev, predict_corpus(dev, model_a)).strict.f1
    assert best_f1 == history_a.best.dev_strict_f1


def test_seed_changes_run(synthetic_splits, synthetic_vectors):
    train_split, dev, _ = synthetic_splits
    config = replace(QUICK, max_epochs=1)
    model_a, _ = train(train_split, dev, synthetic_vectors, SMALL_CONFIG, config)
    model_b, _ = train(train_split, dev, synthetic_vectors, SMALL_CONFIG, replace(config, seed=4))
    assert model_to_bytes(model_a) != model_to_bytes(model_b)


def test_vectors_path_is_recorded(synthetic_splits, synthetic_vectors):
    train_split, dev, _ = synthetic_splits
    model, _ = train(
        train_split, dev, synthetic_vectors, SMALL_CONFIG, replace(QUICK, max_epochs=1), vectors_path="/data/vectors.txt"
    )
    assert model.vectors_path == "/data/vectors.txt"


def test_prediction_ignores_unk_vector_on_covered_corpus(synthetic_splits, synthetic_vectors):
    train_split, dev, test = synthetic_splits
    model, _ = train(train_split, dev, synthetic_vectors, SMALL_CONFIG, replace(QUICK, max_epochs=1))
    assert oov_rate(test, synthetic_vectors).n_oov_tokens == 0
    other_unk = EmbeddingTable(
        synthetic_vectors.words, synthetic_vectors.vectors, unk_vector=np.full(synthetic_vectors.dim, 3.0)
    )
    swapped = replace(model, embeddings=other_unk)
    for s in test:
        np.testing.assert_array_equal(emissions(s, swapped), emissions(s, model))
    assert [s.events for s in predict_corpus(test, swapped)] == [s.events for s in predict_corpus(test, model)]

    unseen = sentence("qwzx arriva .")
    assert not np.array_equal(emissions(unseen, swapped), emissions(unseen, model))


@pytest.fixture(scope="module")
def acceptance_data():
    train_split, dev, test = generate_synthetic_splits(seed=1, sizes=(2000, 200, 200))
    return train_split, dev, test, random_vectors(synthetic_vocabulary(), dim=50, seed=1)


@pytest.mark.slow
def test_synthetic_end_to_end_default_network(acceptance_data):
    train_split, dev, test, vectors = acceptance_data
    model, history = train(train_split, dev, vectors, NetworkConfig(), TrainConfig())
    assert model.config == NetworkConfig(word_dim=50)
    assert history.best.dev_strict_f1 >= 0.95
    assert score(test, predict_corpus(test, model)).strict.f1 >= 0.90


@pytest.mark.slow
def test_synthetic_end_to_end_compact_network(acceptance_data):
    train_split, dev, test, vectors = acceptance_data
    net_config = replace(SMALL_CONFIG, lstm_units=32, char_emb_dim=10, char_filters=10)
    config = TrainConfig(max_epochs=30, seed=1)
    model, history = train(train_split, dev, vectors, net_config, config)
    assert history.best.dev_strict_f1 >= 0.95
    assert score(test, predict_corpus(test, model)).strict.f1 >= 0.90
    again, _ = train(train_split, dev, vectors, net_config, config)
    assert model_to_bytes(again) == model_to_bytes(model)
