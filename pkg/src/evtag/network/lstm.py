"""Bidirectional LSTM layers with variational dropout.

Gate order inside the stacked ``4H`` weight rows is fixed as ``[input, forget, cell, output]``.
The initial hidden and cell states are zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Literal

import numpy as np
from scipy.special import expit

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from evtag.network.config import NetworkConfig

__all__ = [
    "Direction",
    "DIRECTIONS",
    "DropoutMasks",
    "LstmDirectionParams",
    "LstmLayerParams",
    "LstmCache",
    "lstm_direction_forward",
    "lstm_direction_forward_cached",
    "lstm_direction_backward",
    "sample_dropout_masks",
]

Direction = Literal["forward", "backward"]
DIRECTIONS: tuple[Direction, Direction] = ("forward", "backward")

DropoutMasks = dict[tuple[int, str], tuple["NDArray[np.float64]", "NDArray[np.float64]"]]
"""``(layer, direction) -> (input_mask, recurrent_mask)``, one pair per sequence."""


@dataclass(frozen=True, slots=True, eq=False)
class LstmDirectionParams:
    """Weights of one LSTM direction.

    Attributes:
        W: Input weights ``4H x input_dim``.
        U: Recurrent weights ``4H x H``.
        b: Bias ``4H``.
    """

    W: NDArray[np.float64]
    U: NDArray[np.float64]
    b: NDArray[np.float64]

    def __post_init__(self) -> None:
        four_h, units = self.U.shape
        if four_h != 4 * units:
            raise ValueError(f"U must have shape (4H, H), got {self.U.shape}")
        if self.W.shape[0] != four_h or self.b.shape != (four_h,):
            raise ValueError(
                f"W/b do not match U: {self.W.shape}, {self.b.shape}, {self.U.shape}"
            )

    @property
    def units(self) -> int:
        return int(self.U.shape[1])


@dataclass(frozen=True, slots=True, eq=False)
class LstmLayerParams:
    """Weights of one bidirectional layer."""

    forward: LstmDirectionParams
    backward: LstmDirectionParams

    def direction(self, direction: Direction) -> LstmDirectionParams:
        return self.forward if direction == "forward" else self.backward


@dataclass(frozen=True, slots=True, eq=False)
class LstmCache:
    """Per-timestep values of one direction, in processing order."""

    direction: Direction
    inputs: NDArray[np.float64]
    h_prev: NDArray[np.float64]
    c_prev: NDArray[np.float64]
    gates: NDArray[np.float64]
    tanh_c: NDArray[np.float64]
    input_mask: NDArray[np.float64] | None
    recurrent_mask: NDArray[np.float64] | None


def lstm_direction_forward_cached(
    inputs: NDArray[np.float64],
    params: LstmDirectionParams,
    direction: Direction,
    input_mask: NDArray[np.float64] | None = None,
    recurrent_mask: NDArray[np.float64] | None = None,
) -> tuple[NDArray[np.float64], LstmCache]:
    """Run one direction and keep the backward-pass cache.

    ``gates`` holds the activated gate values ``[i, f, g, o]`` per step.
    """
    x = inputs[::-1] if direction == "backward" else inputs
    if input_mask is not None:
        x = x * input_mask
    n_steps = x.shape[0]
    units = params.units
    pre_x = x @ params.W.T + params.b
    h = np.zeros(units)
    c = np.zeros(units)
    hs = np.empty((n_steps, units))
    h_prev = np.empty((n_steps, units))
    c_prev = np.empty((n_steps, units))
    gates = np.empty((n_steps, 4 * units))
    tanh_c = np.empty((n_steps, units))
    for t in range(n_steps):
        h_in = h if recurrent_mask is None else h * recurrent_mask
        z = pre_x[t] + params.U @ h_in
        gate = np.empty(4 * units)
        gate[: 2 * units] = expit(z[: 2 * units])
        gate[2 * units : 3 * units] = np.tanh(z[2 * units : 3 * units])
        gate[3 * units :] = expit(z[3 * units :])
        i, f, g, o = np.split(gate, 4)
        h_prev[t] = h_in
        c_prev[t] = c
        c = f * c + i * g
        tanh_c[t] = np.tanh(c)
        h = o * tanh_c[t]
        hs[t] = h
        gates[t] = gate
    out = hs[::-1].copy() if direction == "backward" else hs
    cache = LstmCache(direction, x, h_prev, c_prev, gates, tanh_c, input_mask, recurrent_mask)
    return out, cache


def lstm_direction_forward(
    inputs: NDArray[np.float64],
    params: LstmDirectionParams,
    direction: Direction,
    input_mask: NDArray[np.float64] | None = None,
    recurrent_mask: NDArray[np.float64] | None = None,
) -> NDArray[np.float64]:
    """Run one LSTM direction over a sequence.

    The backward direction processes the reversed sequence and re-reverses its outputs, so
    output ``t`` always belongs to input ``t``.

    Args:
        inputs (NDArray[np.float64]): Sequence ``T x input_dim``, ``T >= 1``.
        params (LstmDirectionParams): Weights of the direction.
        direction (Direction): ``"forward"`` or ``"backward"``.
        input_mask (NDArray[np.float64] | None, optional): Dropout mask on inputs, shared
            across timesteps.
        recurrent_mask (NDArray[np.float64] | None, optional): Dropout mask on the previous
            hidden state, shared across timesteps.

    Returns:
        NDArray[np.float64]: Hidden states ``T x H``.

    Examples:
        >>> import numpy as np
        >>> from evtag.network import LstmDirectionParams, lstm_direction_forward
        >>> params = LstmDirectionParams(np.zeros((8, 3)), np.zeros((8, 2)), np.zeros(8))
        >>> lstm_direction_forward(np.ones((4, 3)), params, "forward")
        array([[0., 0.],
               [0., 0.],
               [0., 0.],
               [0., 0.]])
    """
    out, _ = lstm_direction_forward_cached(
        inputs, params, direction, input_mask, recurrent_mask
    )
    return out


def lstm_direction_backward(
    d_out: NDArray[np.float64],
    cache: LstmCache,
    params: LstmDirectionParams,
    d_W: NDArray[np.float64],
    d_U: NDArray[np.float64],
    d_b: NDArray[np.float64],
) -> NDArray[np.float64]:
    """Backpropagate through one direction.

    Parameter gradients are accumulated in place.

    Args:
        d_out (NDArray[np.float64]): Gradient with respect to the outputs ``T x H``, in input
            order.
        cache (LstmCache): Cache from :func:`lstm_direction_forward_cached`.
        params (LstmDirectionParams): Weights of the direction.
        d_W (NDArray[np.float64]): Accumulator for the input weights.
        d_U (NDArray[np.float64]): Accumulator for the recurrent weights.
        d_b (NDArray[np.float64]): Accumulator for the bias.

    Returns:
        NDArray[np.float64]: Gradient with respect to the inputs ``T x input_dim``, in input
        order.
    """
    d_h_seq = d_out[::-1] if cache.direction == "backward" else d_out
    n_steps = d_h_seq.shape[0]
    units = params.units
    d_z = np.empty((n_steps, 4 * units))
    d_h_next = np.zeros(units)
    d_c_next = np.zeros(units)
    for t in range(n_steps - 1, -1, -1):
        i, f, g, o = np.split(cache.gates[t], 4)
        tanh_c = cache.tanh_c[t]
        d_h = d_h_seq[t] + d_h_next
        d_c = d_h * o * (1.0 - tanh_c**2) + d_c_next
        d_z[t, :units] = d_c * g * i * (1.0 - i)
        d_z[t, units : 2 * units] = d_c * cache.c_prev[t] * f * (1.0 - f)
        d_z[t, 2 * units : 3 * units] = d_c * i * (1.0 - g**2)
        d_z[t, 3 * units :] = d_h * tanh_c * o * (1.0 - o)
        d_c_next = d_c * f
        d_h_next = params.U.T @ d_z[t]
        if cache.recurrent_mask is not None:
            d_h_next = d_h_next * cache.recurrent_mask
    d_W += d_z.T @ cache.inputs
    d_U += d_z.T @ cache.h_prev
    d_b += d_z.sum(axis=0)
    d_x = d_z @ params.W
    if cache.input_mask is not None:
        d_x = d_x * cache.input_mask
    return d_x[::-1].copy() if cache.direction == "backward" else d_x


def sample_dropout_masks(config: NetworkConfig, rng: np.random.Generator) -> DropoutMasks:
    """Draw one variational dropout mask pair per layer and direction.

    Kept entries are scaled by ``1 / (1 - rate)`` so that no rescaling is needed at inference.

    Args:
        config (NetworkConfig): Network configuration (``word_dim`` must be set).
        rng (np.random.Generator): Random generator.

    Returns:
        DropoutMasks: Masks keyed by ``(layer, direction)``.
    """

    def mask(rate: float, size: int) -> NDArray[np.float64]:
        if rate == 0.0:
            return np.ones(size)
        return rng.binomial(1, 1.0 - rate, size=size) / (1.0 - rate)

    masks: DropoutMasks = {}
    for layer in range(config.lstm_layers):
        for direction in DIRECTIONS:
            masks[(layer, direction)] = (
                mask(config.dropout_input, config.layer_input_dim(layer)),
                mask(config.dropout_recurrent, config.lstm_units),
            )
    return masks
