"""Linear-chain CRF over label indices.

The score of a label path ``y`` is::

    start[y_0] + sum_t emissions[t, y_t] + sum_t transitions[y_t, y_t+1] + end[y_T-1]

All recursions run in log space with :func:`scipy.special.logsumexp`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy.special import logsumexp

from evtag.errors import InvalidLabelError

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import NDArray

__all__ = [
    "CrfParams",
    "CrfGradients",
    "sequence_score",
    "crf_forward",
    "crf_log_partition",
    "crf_marginals",
    "crf_nll",
    "crf_nll_gradients",
    "viterbi_decode",
]


@dataclass(frozen=True, slots=True, eq=False)
class CrfParams:
    """CRF scores.

    Attributes:
        transitions: Matrix ``L x L``; ``transitions[i, j]`` scores label ``j`` following
            label ``i``.
        start_scores: Vector ``L`` for the first label.
        end_scores: Vector ``L`` for the last label.
    """

    transitions: NDArray[np.float64]
    start_scores: NDArray[np.float64]
    end_scores: NDArray[np.float64]

    def __post_init__(self) -> None:
        n_labels = self.start_scores.shape[0]
        if (self.transitions.shape != (n_labels, n_labels)) or (
            self.end_scores.shape != (n_labels,)
        ):
            raise ValueError(
                f"Inconsistent CRF shapes: {self.transitions.shape}, "
                f"{self.start_scores.shape}, {self.end_scores.shape}"
            )

    @property
    def n_labels(self) -> int:
        return int(self.start_scores.shape[0])

    @classmethod
    def zeros(cls, n_labels: int) -> CrfParams:
        return cls(np.zeros((n_labels, n_labels)), np.zeros(n_labels), np.zeros(n_labels))


@dataclass(frozen=True, slots=True, eq=False)
class CrfGradients:
    """Gradients of the negative log-likelihood of one sentence."""

    nll: float
    emissions: NDArray[np.float64]
    transitions: NDArray[np.float64]
    start_scores: NDArray[np.float64]
    end_scores: NDArray[np.float64]


def _check_emissions(emissions: NDArray[np.float64], crf: CrfParams) -> None:
    if emissions.ndim != 2 or emissions.shape[0] < 1:
        raise ValueError(
            f"Emissions must be a non-empty T x L matrix, got shape {emissions.shape}"
        )
    if emissions.shape[1] != crf.n_labels:
        raise ValueError(f"Emissions have {emissions.shape[1]} labels, CRF has {crf.n_labels}")


def _check_gold(gold: Sequence[int], n_steps: int, n_labels: int) -> NDArray[np.int64]:
    if len(gold) != n_steps:
        raise ValueError(f"Gold sequence has {len(gold)} labels for {n_steps} tokens")
    indices = np.asarray(gold, dtype=np.int64)
    bad = [int(i) for i in indices if not 0 <= i < n_labels]
    if bad:
        raise InvalidLabelError(f"Label index outside the alphabet: {bad[0]}")
    return indices


def sequence_score(
    emissions: NDArray[np.float64], crf: CrfParams, labels: Sequence[int]
) -> float:
    """Score one label path.

    Args:
        emissions (NDArray[np.float64]): Emission matrix ``T x L``.
        crf (CrfParams): CRF scores.
        labels (Sequence[int]): Label indices, one per token.

    Returns:
        float: Unnormalized path score.

    Raises:
        ValueError: Length mismatch.
        InvalidLabelError: Label index outside the alphabet.

    Examples:
        >>> import numpy as np
        >>> from evtag.network import CrfParams, sequence_score
        >>> transitions = np.array([[0.0, 1.0], [2.0, 0.0]])
        >>> crf = CrfParams(transitions, np.array([0.5, 0.0]), np.zeros(2))
        >>> sequence_score(np.zeros((2, 2)), crf, [0, 1])
        1.5
    """
    _check_emissions(emissions, crf)
    y = _check_gold(labels, emissions.shape[0], crf.n_labels)
    score = crf.start_scores[y[0]] + crf.end_scores[y[-1]]
    score += emissions[np.arange(y.size), y].sum()
    score += crf.transitions[y[:-1], y[1:]].sum()
    return float(score)


def crf_forward(emissions: NDArray[np.float64], crf: CrfParams) -> NDArray[np.float64]:
    """Forward log-scores ``alpha[t, j]`` of all prefixes ending in label ``j`` at ``t``.

    End scores are not included.
    """
    _check_emissions(emissions, crf)
    n_steps = emissions.shape[0]
    alpha = np.empty_like(emissions, dtype=np.float64)
    alpha[0] = crf.start_scores + emissions[0]
    for t in range(1, n_steps):
        alpha[t] = logsumexp(alpha[t - 1][:, None] + crf.transitions, axis=0) + emissions[t]
    return alpha


def _crf_backward(emissions: NDArray[np.float64], crf: CrfParams) -> NDArray[np.float64]:
    n_steps = emissions.shape[0]
    beta = np.empty_like(emissions, dtype=np.float64)
    beta[-1] = crf.end_scores
    for t in range(n_steps - 2, -1, -1):
        ahead = emissions[t + 1] + beta[t + 1]
        beta[t] = logsumexp(crf.transitions + ahead[None, :], axis=1)
    return beta


def crf_log_partition(emissions: NDArray[np.float64], crf: CrfParams) -> float:
    """Log of the summed exponentiated scores of every label path.

    Args:
        emissions (NDArray[np.float64]): Emission matrix ``T x L``, ``T >= 1``.
        crf (CrfParams): CRF scores.

    Returns:
        float: ``log Z``.

    Examples:
        >>> import numpy as np
        >>> from evtag.network import CrfParams, crf_log_partition
        >>> value = crf_log_partition(np.zeros((2, 15)), CrfParams.zeros(15))
        >>> bool(np.isclose(value, 2 * np.log(15)))
        True
    """
    alpha = crf_forward(emissions, crf)
    return float(logsumexp(alpha[-1] + crf.end_scores))


def crf_marginals(
    emissions: NDArray[np.float64], crf: CrfParams
) -> tuple[float, NDArray[np.float64], NDArray[np.float64]]:
    """Posterior marginals by forward-backward.

    Returns:
        tuple[float, NDArray[np.float64], NDArray[np.float64]]: ``log Z``, unary marginals
        ``T x L`` and pairwise marginals ``(T - 1) x L x L``.
    """
    alpha = crf_forward(emissions, crf)
    beta = _crf_backward(emissions, crf)
    log_z = float(logsumexp(alpha[-1] + crf.end_scores))
    unary = np.exp(alpha + beta - log_z)
    pairwise = np.exp(
        alpha[:-1, :, None]
        + crf.transitions[None, :, :]
        + (emissions[1:] + beta[1:])[:, None, :]
        - log_z
    )
    return log_z, unary, pairwise


def crf_nll(emissions: NDArray[np.float64], crf: CrfParams, gold: Sequence[int]) -> float:
    """Negative log-likelihood of the gold path.

    Args:
        emissions (NDArray[np.float64]): Emission matrix ``T x L``.
        crf (CrfParams): CRF scores.
        gold (Sequence[int]): Gold label indices.

    Returns:
        float: ``log Z - score(gold)``, never negative.

    Raises:
        ValueError: Length mismatch.
        InvalidLabelError: Label index outside the alphabet.
    """
    score = sequence_score(emissions, crf, gold)
    return max(crf_log_partition(emissions, crf) - score, 0.0)


def crf_nll_gradients(
    emissions: NDArray[np.float64], crf: CrfParams, gold: Sequence[int]
) -> CrfGradients:
    """Negative log-likelihood and its gradients.

    Emission gradients are the unary marginals minus the gold one-hot rows. Transition
    gradients are the pairwise marginals summed over positions minus the gold transition
    counts.

    Raises:
        ValueError: Length mismatch.
        InvalidLabelError: Label index outside the alphabet.
    """
    score = sequence_score(emissions, crf, gold)
    y = np.asarray(gold, dtype=np.int64)
    log_z, unary, pairwise = crf_marginals(emissions, crf)
    d_emissions = unary.copy()
    d_emissions[np.arange(y.size), y] -= 1.0
    d_transitions = pairwise.sum(axis=0)
    np.add.at(d_transitions, (y[:-1], y[1:]), -1.0)
    d_start = unary[0].copy()
    d_start[y[0]] -= 1.0
    d_end = unary[-1].copy()
    d_end[y[-1]] -= 1.0
    return CrfGradients(max(log_z - score, 0.0), d_emissions, d_transitions, d_start, d_end)


def viterbi_decode(emissions: NDArray[np.float64], crf: CrfParams) -> list[int]:
    """Highest-scoring label path.

    Ties go to the lowest label index at every backtracking decision.

    Args:
        emissions (NDArray[np.float64]): Emission matrix ``T x L``, ``T >= 1``.
        crf (CrfParams): CRF scores.

    Returns:
        list[int]: Label indices, one per token.

    Examples:
        >>> import numpy as np
        >>> from evtag.network import CrfParams, viterbi_decode
        >>> viterbi_decode(np.zeros((3, 15)), CrfParams.zeros(15))
        [0, 0, 0]
    """
    _check_emissions(emissions, crf)
    n_steps, n_labels = emissions.shape
    delta = crf.start_scores + emissions[0]
    backpointers = np.empty((n_steps, n_labels), dtype=np.int64)
    for t in range(1, n_steps):
        candidates = delta[:, None] + crf.transitions
        # argmax returns the first maximum
        backpointers[t] = candidates.argmax(axis=0)
        delta = candidates[backpointers[t], np.arange(n_labels)] + emissions[t]
    best = int((delta + crf.end_scores).argmax())
    path = [best]
    for t in range(n_steps - 1, 0, -1):
        best = int(backpointers[t, best])
        path.append(best)
    path.reverse()
    return path
