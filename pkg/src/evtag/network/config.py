"""Network hyperparameters."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import TYPE_CHECKING

from evtag.constants import N_LABELS
from evtag.errors import ConfigError

if TYPE_CHECKING:
    from collections.abc import Iterable

__all__ = [
    "NetworkConfig",
    "FIELD_TYPES",
    "parse_field",
    "config_to_items",
    "config_from_items",
]


@dataclass(frozen=True, slots=True)
class NetworkConfig:
    """Architecture of the tagger.

    Args:
        lstm_units (int, optional): Hidden units per LSTM direction. Defaults to 100.
        lstm_layers (int, optional): Stacked bidirectional layers. Defaults to 2.
        dropout_input (float, optional): Variational dropout rate on LSTM inputs.
            Defaults to 0.5.
        dropout_recurrent (float, optional): Variational dropout rate on recurrent connections.
            Defaults to 0.5.
        char_emb_dim (int, optional): Character embedding size. Defaults to 30.
        char_filters (int, optional): Number of character CNN filters. Defaults to 30.
        char_filter_width (int, optional): Character CNN window width, odd. Defaults to 3.
        n_labels (int, optional): Size of the label alphabet. Defaults to 15.
        word_dim (int | None, optional): Word vector size, taken from the embedding table when
            None.

    Raises:
        ConfigError: Non-positive dimension, even filter width or dropout rate outside
            ``[0, 1)``.
    """

    lstm_units: int = 100
    lstm_layers: int = 2
    dropout_input: float = 0.5
    dropout_recurrent: float = 0.5
    char_emb_dim: int = 30
    char_filters: int = 30
    char_filter_width: int = 3
    n_labels: int = N_LABELS
    word_dim: int | None = None

    def __post_init__(self) -> None:
        for name in (
            "lstm_units",
            "lstm_layers",
            "char_emb_dim",
            "char_filters",
            "char_filter_width",
            "n_labels",
        ):
            value = getattr(self, name)
            if value < 1:
                raise ConfigError(f"{name} must be positive: {value}", key=name)
        if (self.word_dim is not None) and (self.word_dim < 1):
            raise ConfigError(f"word_dim must be positive: {self.word_dim}", key="word_dim")
        if self.char_filter_width % 2 == 0:
            raise ConfigError(
                f"char_filter_width must be odd: {self.char_filter_width}",
                key="char_filter_width",
            )
        for name in ("dropout_input", "dropout_recurrent"):
            value = getattr(self, name)
            if not 0.0 <= value < 1.0:
                raise ConfigError(f"{name} must be in [0, 1): {value}", key=name)

    def with_word_dim(self, word_dim: int) -> NetworkConfig:
        """Return a copy with ``word_dim`` set.

        Raises:
            ConfigError: ``word_dim`` was already set to a different value.
        """
        if (self.word_dim is not None) and (self.word_dim != word_dim):
            raise ConfigError(
                f"word_dim {self.word_dim} does not match embedding dim {word_dim}",
                key="word_dim",
            )
        return replace(self, word_dim=word_dim)

    @property
    def input_dim(self) -> int:
        """Size of a word representation (word vector and character features)."""
        if self.word_dim is None:
            raise ConfigError("word_dim is not set", key="word_dim")
        return self.word_dim + self.char_filters

    def layer_input_dim(self, layer: int) -> int:
        """Input size of LSTM layer ``layer`` (0-based)."""
        return self.input_dim if layer == 0 else 2 * self.lstm_units


FIELD_TYPES: dict[str, type] = {
    "lstm_units": int,
    "lstm_layers": int,
    "dropout_input": float,
    "dropout_recurrent": float,
    "char_emb_dim": int,
    "char_filters": int,
    "char_filter_width": int,
    "n_labels": int,
    "word_dim": int,
}
"""Value type of every :class:`NetworkConfig` field, for text configuration."""


def parse_field(
    name: str, value: str, types: dict[str, type], line_no: int | None = None
) -> int | float:
    """Convert one textual configuration value.

    Raises:
        ConfigError: Unknown key or unparsable value.
    """
    if name not in types:
        raise ConfigError(f"unknown key {name!r}", line_no=line_no, key=name)
    try:
        return types[name](value)
    except ValueError:
        raise ConfigError(
            f"{name} expects {types[name].__name__}, got {value!r}", line_no=line_no, key=name
        ) from None


def config_to_items(config: NetworkConfig) -> list[tuple[str, str]]:
    """Textual ``(key, value)`` pairs of every set field, floats written exactly."""
    items = []
    for name in FIELD_TYPES:
        value = getattr(config, name)
        if value is not None:
            items.append((name, repr(value)))
    return items


def config_from_items(items: Iterable[tuple[str, str]]) -> NetworkConfig:
    """Inverse of :func:`config_to_items`.

    Examples:
        >>> from evtag.network import NetworkConfig, config_from_items, config_to_items
        >>> config = NetworkConfig(lstm_units=8, dropout_input=0.25, word_dim=5)
        >>> config_from_items(config_to_items(config)) == config
        True

    Raises:
        ConfigError: Unknown key or unparsable value.
    """
    values = {name: parse_field(name, value, FIELD_TYPES) for name, value in items}
    return NetworkConfig(**values)
