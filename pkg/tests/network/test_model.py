import numpy as np
import pytest

from evtag.corpus import decode_bio, label_alphabet
from evtag.network import (
    NetworkConfig,
    emissions,
    encode_sentence,
    init_model,
    param_shapes,
    predict,
    predict_corpus,
    predict_tags,
    viterbi_decode,
)

try:
    from .helpers import corpus, sentence
except ImportError:
    import sys
    from os import path

    sys.path.append(path.dirname(path.dirname(path.abspath(__file__))))
    from helpers import corpus, sentence


def test_param_shapes_order():
    shapes = param_shapes(NetworkConfig(lstm_units=4, lstm_layers=2, word_dim=6, char_filters=3), n_chars=10)
    assert list(shapes)[:5] == ["char_embeddings", "char_filters", "char_bias", "lstm0.forward.W", "lstm0.forward.U"]
    assert shapes["lstm0.forward.W"] == (16, 9)
    assert shapes["lstm1.backward.W"] == (16, 8)
    assert shapes["emission.W"] == (15, 8)
    assert len(shapes) == 3 + 2 * 2 * 3 + 2 + 3


def test_init_model(small_model):
    assert small_model.config.word_dim == 6
    assert small_model.labels == tuple(label_alphabet())
    for layer in small_model.lstm_layers:
        for direction in (layer.forward, layer.backward):
            np.testing.assert_array_equal(direction.b[4:8], 1.0)
            np.testing.assert_array_equal(np.delete(direction.b, np.s_[4:8]), 0.0)
    np.testing.assert_array_equal(small_model.crf.transitions, 0.0)
    limit = np.sqrt(6.0 / (9 + 16))
    assert np.all(np.abs(small_model.params["lstm0.forward.W"]) <= limit)
    assert small_model.n_params == sum(v.size for v in small_model.params.values())


def test_init_model_is_seeded(small_model):
    again = init_model(small_model.config, small_model.embeddings, small_model.char_vocab, np.random.default_rng(0))
    for name, value in small_model.params.items():
        np.testing.assert_array_equal(again.params[name], value)


@pytest.mark.parametrize(
    "test_case",
    [
        {
            "description": "Missing tensor",
            "update": lambda params: params.pop("crf.end"),
        },
        {
            "description": "Wrong shape",
            "update": lambda params: params.update({"crf.end": np.zeros(3)}),
        },
        {
            "description": "Non-finite value",
            "update": lambda params: params.update({"emission.b": np.full(15, np.nan)}),
        },
    ],
)
def test_model_validation(test_case, small_model):
    params = dict(small_model.params)
    test_case["update"](params)
    with pytest.raises(ValueError):
        small_model.with_params(params)


def test_encode_sentence(small_model):
    s = sentence("Marco andò a Roma", (1, 1, "OCCURRENCE"))
    encoded = encode_sentence(s, small_model)
    assert len(encoded) == 4
    assert encoded.word_vectors.shape == (4, 6)
    assert encoded.gold == (0, 1, 0, 0)
    assert encode_sentence(s, small_model, with_gold=False).gold is None


def test_predict_composes_decoding(small_model, synthetic_splits):
    _, dev, _ = synthetic_splits
    for s in list(dev)[:5]:
        tags = predict_tags(s, small_model)
        indices = viterbi_decode(emissions(s, small_model), small_model.crf)
        assert tags == tuple(label_alphabet()[i] for i in indices)
        assert predict(s, small_model) == decode_bio(tags)


def test_predict_empty_sentence(small_model):
    assert predict_tags(sentence([]), small_model) == ()
    assert predict(sentence([]), small_model) == []


def test_predict_corpus_keeps_tokens(small_model, synthetic_splits):
    _, dev, _ = synthetic_splits
    predicted = predict_corpus(dev, small_model)
    assert len(predicted) == len(dev)
    assert [s.surfaces for s in predicted] == [s.surfaces for s in dev]
    assert predict_corpus(corpus(), small_model).n_events == 0
