"""Global-norm gradient clipping and the Nadam update.

With step counter ``t`` (incremented before the update), gradient ``g`` and decay rates
``b1``/``b2``::

    m = b1 * m + (1 - b1) * g
    v = b2 * v + (1 - b2) * g**2
    m_hat = m / (1 - b1**t)
    v_hat = v / (1 - b2**t)
    m_bar = b1 * m_hat + (1 - b1) * g / (1 - b1**t)
    theta = theta - learning_rate * m_bar / (sqrt(v_hat) + epsilon)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from collections.abc import Mapping

    from numpy.typing import NDArray

    from evtag.training.config import TrainConfig

__all__ = [
    "Gradients",
    "OptimizerState",
    "global_norm",
    "clip_global_norm",
    "nadam_step",
]

Gradients = dict[str, "NDArray[np.float64]"]


def global_norm(gradients: Mapping[str, NDArray[np.float64]]) -> float:
    """L2 norm of all gradients concatenated."""
    return float(np.sqrt(sum(float(np.sum(g * g)) for g in gradients.values())))


def clip_global_norm(gradients: Mapping[str, NDArray[np.float64]], tau: float) -> Gradients:
    """Rescale gradients so that their global norm is at most ``tau``.

    Args:
        gradients (Mapping[str, NDArray[np.float64]]): Gradients by parameter name.
        tau (float): Maximum norm, positive.

    Returns:
        Gradients: Scaled copies when the norm exceeds ``tau``, unchanged copies otherwise.

    Raises:
        ValueError: ``tau`` is not positive.

    Examples:
        >>> import numpy as np
        >>> from evtag.training import clip_global_norm, global_norm
        >>> clipped = clip_global_norm({"w": np.array([2.0, 0.0])}, tau=1.0)
        >>> clipped["w"].tolist(), global_norm(clipped)
        ([1.0, 0.0], 1.0)
    """
    if not tau > 0.0:
        raise ValueError(f"tau must be positive: {tau}")
    norm = global_norm(gradients)
    scale = tau / norm if norm > tau else 1.0
    return {name: g * scale for name, g in gradients.items()}


@dataclass(frozen=True, slots=True, eq=False)
class OptimizerState:
    """Nadam moment accumulators and step counter.

    Attributes:
        m: First moments by parameter name.
        v: Second moments by parameter name.
        step: Number of updates applied so far.
    """

    m: dict[str, NDArray[np.float64]]
    v: dict[str, NDArray[np.float64]]
    step: int = 0

    def __post_init__(self) -> None:
        if self.step < 0:
            raise ValueError(f"step must not be negative: {self.step}")
        if set(self.m) != set(self.v):
            raise ValueError("First and second moments must cover the same parameters")

    @classmethod
    def zeros_like(cls, params: Mapping[str, NDArray[np.float64]]) -> OptimizerState:
        """Fresh state with zero moments shaped like ``params``."""
        return cls(
            {name: np.zeros_like(p) for name, p in params.items()},
            {name: np.zeros_like(p) for name, p in params.items()},
        )


def nadam_step(
    params: Mapping[str, NDArray[np.float64]],
    gradients: Mapping[str, NDArray[np.float64]],
    state: OptimizerState,
    config: TrainConfig,
) -> tuple[dict[str, NDArray[np.float64]], OptimizerState]:
    """Apply one Nadam update.

    Inputs are not modified.

    Args:
        params (Mapping[str, NDArray[np.float64]]): Current parameters.
        gradients (Mapping[str, NDArray[np.float64]]): Gradients, same names and shapes.
        state (OptimizerState): Current optimizer state.
        config (TrainConfig): Learning rate, decay rates and epsilon.

    Returns:
        tuple[dict[str, NDArray[np.float64]], OptimizerState]: Updated parameters and state.

    Raises:
        ValueError: Parameter names or shapes differ.

    Examples:
        >>> import numpy as np
        >>> from evtag.training import OptimizerState, TrainConfig, nadam_step
        >>> params = {"w": np.array([0.0])}
        >>> grads, state = {"w": np.array([1.0])}, OptimizerState.zeros_like(params)
        >>> new, state = nadam_step(params, grads, state, TrainConfig())
        >>> state.step, bool(np.isclose(new["w"][0], -0.002 * 1.9 / (1 + 1e-8)))
        (1, True)
    """
    if set(params) != set(gradients) or set(params) != set(state.m):
        raise ValueError("params, gradients and optimizer state must cover the same names")
    b1, b2 = config.beta1, config.beta2
    t = state.step + 1
    correction1 = 1.0 - b1**t
    correction2 = 1.0 - b2**t
    new_params = {}
    new_m = {}
    new_v = {}
    for name, theta in params.items():
        g = gradients[name]
        if g.shape != theta.shape:
            raise ValueError(
                f"{name}: gradient shape {g.shape} != parameter shape {theta.shape}"
            )
        m = b1 * state.m[name] + (1.0 - b1) * g
        v = b2 * state.v[name] + (1.0 - b2) * g * g
        m_bar = b1 * (m / correction1) + (1.0 - b1) * g / correction1
        denominator = np.sqrt(v / correction2) + config.epsilon
        new_params[name] = theta - config.learning_rate * m_bar / denominator
        new_m[name] = m
        new_v[name] = v
    return new_params, OptimizerState(new_m, new_v, t)
