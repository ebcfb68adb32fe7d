"""Optimization settings and the training configuration file."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

from evtag.errors import ConfigError
from evtag.network.config import FIELD_TYPES as NETWORK_FIELD_TYPES
from evtag.network.config import NetworkConfig, parse_field
from evtag.utils import iter_key_values

if TYPE_CHECKING:
    from collections.abc import Iterable
    from pathlib import Path

__all__ = [
    "TrainConfig",
    "FIELD_TYPES",
    "parse_config",
    "load_config_file",
]

logger: logging.Logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class TrainConfig:
    """Optimization settings.

    Args:
        batch_size (int, optional): Sentences per minibatch. Defaults to 8.
        tau (float, optional): Maximum global gradient norm. Defaults to 1.0.
        learning_rate (float, optional): Nadam step size. Defaults to 0.002.
        beta1 (float, optional): First-moment decay. Defaults to 0.9.
        beta2 (float, optional): Second-moment decay. Defaults to 0.999.
        epsilon (float, optional): Denominator offset. Defaults to 1e-8.
        max_epochs (int, optional): Epoch limit. Defaults to 30.
        patience (int, optional): Epochs without dev F1 improvement before stopping.
            Defaults to 5.
        seed (int, optional): Seed of every random draw made by training. Defaults to 1.

    Raises:
        ConfigError: Value outside its valid range.
    """

    batch_size: int = 8
    tau: float = 1.0
    learning_rate: float = 0.002
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    max_epochs: int = 30
    patience: int = 5
    seed: int = 1

    def __post_init__(self) -> None:
        if self.batch_size < 1:
            raise ConfigError(
                f"batch_size must be positive: {self.batch_size}", key="batch_size"
            )
        if not self.tau > 0.0:
            raise ConfigError(f"tau must be positive: {self.tau}", key="tau")
        if self.learning_rate < 0.0:
            raise ConfigError(
                f"learning_rate must not be negative: {self.learning_rate}",
                key="learning_rate",
            )
        for name in ("beta1", "beta2"):
            value = getattr(self, name)
            if not 0.0 <= value < 1.0:
                raise ConfigError(f"{name} must be in [0, 1): {value}", key=name)
        if not self.epsilon > 0.0:
            raise ConfigError(f"epsilon must be positive: {self.epsilon}", key="epsilon")
        if self.max_epochs < 1:
            raise ConfigError(
                f"max_epochs must be positive: {self.max_epochs}", key="max_epochs"
            )
        if self.patience < 1:
            raise ConfigError(f"patience must be positive: {self.patience}", key="patience")


FIELD_TYPES: dict[str, type] = {
    "batch_size": int,
    "tau": float,
    "learning_rate": float,
    "beta1": float,
    "beta2": float,
    "epsilon": float,
    "max_epochs": int,
    "patience": int,
    "seed": int,
}
"""Value type of every :class:`TrainConfig` field."""


def parse_config(lines: Iterable[str]) -> tuple[NetworkConfig, TrainConfig]:
    """Parse a training configuration file.

    Keys are the field names of :class:`~evtag.network.NetworkConfig` and :class:`TrainConfig`;
    missing keys keep their defaults.

    Args:
        lines (Iterable[str]): ``key = value`` lines; ``#`` starts a comment.

    Returns:
        tuple[NetworkConfig, TrainConfig]: Parsed configurations.

    Raises:
        ConfigError: Malformed line, unknown or duplicate key, unparsable or out-of-range
            value.

    Examples:
        >>> from evtag.training import parse_config
        >>> net, train = parse_config(["lstm_units = 16", "batch_size = 4  # small"])
        >>> net.lstm_units, train.batch_size, train.tau
        (16, 4, 1.0)
    """
    types = NETWORK_FIELD_TYPES | FIELD_TYPES
    network: dict[str, int | float] = {}
    training: dict[str, int | float] = {}
    line_of: dict[str, int] = {}
    try:
        for line_no, key, value in iter_key_values(lines):
            if key in line_of:
                raise ConfigError(
                    f"duplicate key {key!r} (first on line {line_of[key]})",
                    line_no=line_no,
                    key=key,
                )
            line_of[key] = line_no
            target = network if key in NETWORK_FIELD_TYPES else training
            target[key] = parse_field(key, value, types, line_no=line_no)
    except ConfigError:
        raise
    except ValueError as e:
        raise ConfigError(str(e)) from None
    try:
        return NetworkConfig(**network), TrainConfig(**training)  # type: ignore[arg-type]
    except ConfigError as e:
        if e.key in line_of:
            raise ConfigError(str(e), line_no=line_of[e.key], key=e.key) from None
        raise


def load_config_file(path: str | Path) -> tuple[NetworkConfig, TrainConfig]:
    """Read and parse a training configuration file."""
    with open(path, encoding="utf-8") as f:
        net_config, train_config = parse_config(f)
    logger.info("Loaded configuration from %s", path)
    return net_config, train_config
