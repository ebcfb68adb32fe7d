import numpy as np
import pytest

from evtag.network import crf_marginals, emissions, encode_sentence, sample_dropout_masks
from evtag.training import (
    backward,
    batch_loss,
    grad_check,
    loss_and_gradients,
    param_errors,
    tiny_config,
    tiny_model,
)

try:
    from .helpers import sentence
except ImportError:
    import sys
    from os import path

    sys.path.append(path.dirname(path.dirname(path.abspath(__file__))))
    from helpers import sentence


def test_gradients_cover_every_parameter(small_model, synthetic_splits):
    train, _, _ = synthetic_splits
    loss, grads = loss_and_gradients(small_model, list(train)[:3])
    assert loss > 0.0
    assert list(grads) == list(small_model.params)
    for name, value in grads.items():
        assert value.shape == small_model.params[name].shape, name
        assert np.all(np.isfinite(value)), name


def test_duplicate_sentence_batch(small_model, synthetic_splits):
    train, _, _ = synthetic_splits
    s = train[0]
    masks = sample_dropout_masks(small_model.config, np.random.default_rng(3))
    for batch_masks in (None, [masks]):
        double_masks = None if batch_masks is None else batch_masks * 2
        single_loss, single = loss_and_gradients(small_model, [s], batch_masks)
        double_loss, double = loss_and_gradients(small_model, [s, s], double_masks)
        assert double_loss == pytest.approx(single_loss, rel=1e-12)
        for name in single:
            np.testing.assert_allclose(double[name], single[name], rtol=1e-10, atol=1e-14, err_msg=name)


def test_loss_matches_batch_loss(small_model, synthetic_splits):
    train, _, _ = synthetic_splits
    batch = list(train)[:4]
    loss, _ = loss_and_gradients(small_model, batch)
    assert loss == pytest.approx(batch_loss(small_model, batch), rel=1e-12)


def test_emission_bias_gradient_is_marginal_minus_gold(small_model):
    s = sentence("Marco andò a Roma", (1, 1, "OCCURRENCE"))
    grads = backward(small_model, [s])
    _, unary, _ = crf_marginals(emissions(s, small_model), small_model.crf)
    onehot = np.eye(15)[list(encode_sentence(s, small_model).gold)]
    np.testing.assert_allclose(grads["emission.b"], (unary - onehot).sum(axis=0), atol=1e-12)


@pytest.mark.parametrize(
    "test_case",
    [
        {
            "description": "Empty batch",
            "batch": [],
            "masks": None,
        },
        {
            "description": "Empty sentence",
            "batch": [sentence([])],
            "masks": None,
        },
        {
            "description": "Mask count mismatch",
            "batch": [sentence("a b"), sentence("c")],
            "masks": [{}],
        },
    ],
)
def test_loss_and_gradients_errors(test_case, small_model):
    with pytest.raises(ValueError):
        loss_and_gradients(small_model, test_case["batch"], test_case["masks"])


def test_tiny_model_size():
    model, batch = tiny_model()
    assert model.n_params <= 2000
    assert [len(s) for s in batch] == [3, 2]
    assert model.config == tiny_config()


@pytest.mark.parametrize("train_mode", [True, False])
def test_grad_check(train_mode):
    errors = param_errors(seed=0, train_mode=train_mode)
    worst = max(errors.values())
    assert worst <= 1e-4, {name: error for name, error in errors.items() if error > 1e-4}


def test_grad_check_is_deterministic():
    assert grad_check(seed=3) == grad_check(seed=3)


def test_grad_check_step_size_sanity():
    small = grad_check(seed=1, h=1e-5)
    large = grad_check(seed=1, h=2e-5)
    assert large <= 1e-4
    assert large <= max(16.0 * small, 1e-7)
