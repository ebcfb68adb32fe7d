import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import logsumexp

from evtag.errors import InvalidLabelError
from evtag.network import (
    CrfParams,
    crf_log_partition,
    crf_marginals,
    crf_nll,
    crf_nll_gradients,
    sequence_score,
    viterbi_decode,
)

try:
    from .helpers import brute_force_scores, fmt_result, random_crf_instance
except ImportError:
    import sys
    from os import path

    sys.path.append(path.dirname(path.dirname(path.abspath(__file__))))
    from helpers import brute_force_scores, fmt_result, random_crf_instance


def instances(n_instances=200, max_steps=4, max_labels=3, seed=2018):
    rng = np.random.default_rng(seed)
    for _ in range(n_instances):
        n_steps = int(rng.integers(1, max_steps + 1))
        n_labels = int(rng.integers(1, max_labels + 1))
        yield random_crf_instance(rng, n_steps, n_labels)


def test_partition_matches_enumeration():
    for scores, crf in instances():
        brute = logsumexp(list(brute_force_scores(scores, crf).values()))
        assert abs(crf_log_partition(scores, crf) - brute) <= 1e-9


def test_nll_matches_enumeration():
    rng = np.random.default_rng(0)
    for scores, crf in instances():
        paths = brute_force_scores(scores, crf)
        gold = list(rng.integers(0, crf.n_labels, size=scores.shape[0]))
        expected = logsumexp(list(paths.values())) - paths[tuple(gold)]
        assert abs(crf_nll(scores, crf, gold) - expected) <= 1e-9
        assert crf_nll(scores, crf, gold) >= 0.0


def test_viterbi_matches_enumeration():
    for scores, crf in instances():
        paths = brute_force_scores(scores, crf)
        best = max(paths.values())
        decoded = viterbi_decode(scores, crf)
        assert abs(paths[tuple(decoded)] - best) <= 1e-9, "\n".join(
            (
                f"Decoded: {fmt_result(decoded)!s}",
                f"Scores: {fmt_result(paths)!s}",
            )
        )


def test_marginals_by_enumeration():
    for scores, crf in instances(n_instances=50):
        paths = brute_force_scores(scores, crf)
        log_z = logsumexp(list(paths.values()))
        expected = np.zeros_like(scores)
        for path, value in paths.items():
            expected[np.arange(len(path)), list(path)] += np.exp(value - log_z)
        _, unary, pairwise = crf_marginals(scores, crf)
        np.testing.assert_allclose(unary, expected, atol=1e-9)
        np.testing.assert_allclose(unary.sum(axis=1), 1.0, atol=1e-9)
        if scores.shape[0] > 1:
            np.testing.assert_allclose(pairwise.sum(axis=(1, 2)), 1.0, atol=1e-9)
            np.testing.assert_allclose(pairwise.sum(axis=2), unary[:-1], atol=1e-9)


def test_gradients_are_marginals_minus_gold():
    rng = np.random.default_rng(1)
    for scores, crf in instances(n_instances=50):
        gold = list(rng.integers(0, crf.n_labels, size=scores.shape[0]))
        grads = crf_nll_gradients(scores, crf, gold)
        _, unary, pairwise = crf_marginals(scores, crf)
        onehot = np.eye(crf.n_labels)[gold]
        np.testing.assert_allclose(grads.emissions, unary - onehot, atol=1e-12)
        np.testing.assert_allclose(grads.start_scores, unary[0] - onehot[0], atol=1e-12)
        np.testing.assert_allclose(grads.end_scores, unary[-1] - onehot[-1], atol=1e-12)
        counts = np.zeros((crf.n_labels, crf.n_labels))
        for a, b in zip(gold, gold[1:]):
            counts[a, b] += 1
        np.testing.assert_allclose(grads.transitions, pairwise.sum(axis=0) - counts, atol=1e-12)
        assert grads.nll == pytest.approx(crf_nll(scores, crf, gold), abs=1e-12)


def test_gradients_by_finite_differences():
    rng = np.random.default_rng(4)
    scores, crf = random_crf_instance(rng, 4, 3, scale=1.0)
    gold = [0, 2, 2, 1]
    grads = crf_nll_gradients(scores, crf, gold)
    h = 1e-6
    for index in np.ndindex(crf.transitions.shape):
        shifted = crf.transitions.copy()
        shifted[index] += h
        plus = crf_nll(scores, CrfParams(shifted, crf.start_scores, crf.end_scores), gold)
        shifted[index] -= 2 * h
        minus = crf_nll(scores, CrfParams(shifted, crf.start_scores, crf.end_scores), gold)
        assert grads.transitions[index] == pytest.approx((plus - minus) / (2 * h), abs=1e-6)


def test_single_token_closed_form():
    scores = np.array([[0.3, -1.0, 2.0]])
    crf = CrfParams(np.full((3, 3), 9.0), np.array([0.1, 0.2, 0.0]), np.array([0.0, 0.5, -0.5]))
    totals = crf.start_scores + scores[0] + crf.end_scores
    assert crf_log_partition(scores, crf) == pytest.approx(logsumexp(totals), abs=1e-12)
    assert viterbi_decode(scores, crf) == [int(np.argmax(totals))]


def test_partition_shift_invariance():
    rng = np.random.default_rng(5)
    scores, crf = random_crf_instance(rng, 5, 4)
    shifted = scores + np.array([[1.0], [-2.0], [0.5], [3.0], [0.0]])
    assert crf_log_partition(shifted, crf) == pytest.approx(crf_log_partition(scores, crf) + 2.5, abs=1e-9)
    gold = [1, 0, 3, 3, 2]
    assert crf_nll(shifted, crf, gold) == pytest.approx(crf_nll(scores, crf, gold), abs=1e-9)
    assert viterbi_decode(shifted, crf) == viterbi_decode(scores, crf)


def test_large_scores_stay_finite():
    scores = np.array([[1000.0, -1000.0], [-1000.0, 1000.0]])
    crf = CrfParams.zeros(2)
    assert np.isfinite(crf_log_partition(scores, crf))
    assert crf_nll(scores, crf, [0, 1]) == pytest.approx(0.0, abs=1e-9)
    assert viterbi_decode(scores, crf) == [0, 1]


def test_viterbi_ties_pick_lowest_index():
    crf = CrfParams.zeros(4)
    assert viterbi_decode(np.zeros((5, 4)), crf) == [0, 0, 0, 0, 0]
    scores = np.array([[0.0, 1.0, 1.0], [2.0, 2.0, 0.0]])
    assert viterbi_decode(scores, CrfParams.zeros(3)) == [1, 0]


@given(
    st.integers(min_value=1, max_value=6),
    st.integers(min_value=1, max_value=5),
    st.integers(min_value=0, max_value=2**32 - 1),
)
@settings(max_examples=50, deadline=None)
def test_viterbi_path_scores_at_least_any_path(n_steps, n_labels, seed):
    rng = np.random.default_rng(seed)
    scores, crf = random_crf_instance(rng, n_steps, n_labels)
    decoded = viterbi_decode(scores, crf)
    other = list(rng.integers(0, n_labels, size=n_steps))
    assert sequence_score(scores, crf, decoded) >= sequence_score(scores, crf, other) - 1e-9
    assert sequence_score(scores, crf, decoded) <= crf_log_partition(scores, crf) + 1e-9


@pytest.mark.parametrize(
    "test_case",
    [
        {
            "description": "Gold too short",
            "gold": [0, 1],
            "exception": ValueError,
        },
        {
            "description": "Label index out of range",
            "gold": [0, 1, 3],
            "exception": InvalidLabelError,
        },
        {
            "description": "Negative label index",
            "gold": [0, -1, 2],
            "exception": InvalidLabelError,
        },
    ],
)
def test_gold_validation(test_case):
    scores = np.zeros((3, 3))
    with pytest.raises(test_case["exception"]):
        crf_nll(scores, CrfParams.zeros(3), test_case["gold"])


def test_shape_validation():
    with pytest.raises(ValueError):
        CrfParams(np.zeros((2, 3)), np.zeros(2), np.zeros(2))
    with pytest.raises(ValueError):
        crf_log_partition(np.zeros((0, 2)), CrfParams.zeros(2))
    with pytest.raises(ValueError):
        viterbi_decode(np.zeros((2, 3)), CrfParams.zeros(2))
