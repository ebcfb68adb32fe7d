"""The full tagger: word representations, BiLSTM stack, emission projection and CRF."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING

import numpy as np

from evtag.corpus.bio import decode_bio, encode_bio, label_alphabet, labels_to_indices
from evtag.network.char_cnn import CharCnnCache, CharCnnParams, char_cnn_forward_cached
from evtag.network.crf import CrfParams, viterbi_decode
from evtag.network.lstm import (
    DIRECTIONS,
    DropoutMasks,
    LstmCache,
    LstmDirectionParams,
    LstmLayerParams,
    lstm_direction_forward_cached,
)

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from evtag.corpus.bio import TagSequence
    from evtag.corpus.types import Corpus, EventSpan, Sentence
    from evtag.embeddings.chars import CharVocab
    from evtag.embeddings.table import EmbeddingTable
    from evtag.network.config import NetworkConfig

__all__ = [
    "Params",
    "TaggerModel",
    "EncodedSentence",
    "ForwardCache",
    "param_shapes",
    "init_model",
    "encode_sentence",
    "word_representations",
    "bilstm_stack_forward",
    "forward_with_cache",
    "emissions",
    "predict",
    "predict_tags",
    "predict_corpus",
]

logger: logging.Logger = logging.getLogger(__name__)

Params = dict[str, "NDArray[np.float64]"]
"""Named parameter tensors, in :func:`param_shapes` order."""


def param_shapes(config: NetworkConfig, n_chars: int) -> dict[str, tuple[int, ...]]:
    """Names and shapes of every trainable tensor, in canonical order.

    Args:
        config (NetworkConfig): Network configuration (``word_dim`` must be set).
        n_chars (int): Size of the character vocabulary.

    Returns:
        dict[str, tuple[int, ...]]: Tensor name to shape.

    Examples:
        >>> from evtag.network import NetworkConfig, param_shapes
        >>> shapes = param_shapes(NetworkConfig(lstm_layers=1, word_dim=50), n_chars=40)
        >>> shapes["lstm0.forward.W"]
        (400, 80)
        >>> list(shapes)[-3:]
        ['crf.transitions', 'crf.start', 'crf.end']
    """
    units = config.lstm_units
    shapes: dict[str, tuple[int, ...]] = {
        "char_embeddings": (n_chars, config.char_emb_dim),
        "char_filters": (config.char_filters, config.char_filter_width, config.char_emb_dim),
        "char_bias": (config.char_filters,),
    }
    for layer in range(config.lstm_layers):
        for direction in DIRECTIONS:
            prefix = f"lstm{layer}.{direction}"
            shapes[f"{prefix}.W"] = (4 * units, config.layer_input_dim(layer))
            shapes[f"{prefix}.U"] = (4 * units, units)
            shapes[f"{prefix}.b"] = (4 * units,)
    shapes["emission.W"] = (config.n_labels, 2 * units)
    shapes["emission.b"] = (config.n_labels,)
    shapes["crf.transitions"] = (config.n_labels, config.n_labels)
    shapes["crf.start"] = (config.n_labels,)
    shapes["crf.end"] = (config.n_labels,)
    return shapes


@dataclass(frozen=True, slots=True, eq=False)
class TaggerModel:
    """Immutable trained (or initialized) tagger.

    Args:
        config (NetworkConfig): Architecture, with ``word_dim`` set.
        params (Params): Every tensor named by :func:`param_shapes`.
        embeddings (EmbeddingTable): Word vectors, kept frozen.
        char_vocab (CharVocab): Character vocabulary.
        labels (tuple[str, ...]): Label alphabet; must equal
            :func:`evtag.corpus.label_alphabet`.
        vectors_path (str | None, optional): Where the word vectors were loaded from.

    Raises:
        ValueError: Missing tensor, wrong shape, non-finite value or labels other than the
            event label alphabet.
    """

    config: NetworkConfig
    params: Params
    embeddings: EmbeddingTable
    char_vocab: CharVocab
    labels: tuple[str, ...]
    vectors_path: str | None = None
    shapes: dict[str, tuple[int, ...]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.config.word_dim != self.embeddings.dim:
            raise ValueError(
                f"word_dim {self.config.word_dim} != embedding dim {self.embeddings.dim}"
            )
        labels = tuple(self.labels)
        if len(labels) != self.config.n_labels:
            raise ValueError(f"Expected {self.config.n_labels} labels, got {len(labels)}")
        if list(labels) != label_alphabet():
            raise ValueError(f"Labels differ from the event label alphabet: {list(labels)}")
        shapes = param_shapes(self.config, len(self.char_vocab))
        if set(self.params) != set(shapes):
            missing = sorted(set(shapes) - set(self.params))
            extra = sorted(set(self.params) - set(shapes))
            raise ValueError(f"Parameter names differ: missing {missing}, unexpected {extra}")
        params: Params = {}
        for name, shape in shapes.items():
            tensor = np.asarray(self.params[name], dtype=np.float64)
            if tensor.shape != shape:
                raise ValueError(f"{name}: expected shape {shape}, got {tensor.shape}")
            if not np.all(np.isfinite(tensor)):
                raise ValueError(f"{name}: non-finite values")
            params[name] = tensor
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "shapes", shapes)

    @property
    def char_cnn(self) -> CharCnnParams:
        p = self.params
        return CharCnnParams(p["char_embeddings"], p["char_filters"], p["char_bias"])

    @property
    def lstm_layers(self) -> tuple[LstmLayerParams, ...]:
        layers = []
        for layer in range(self.config.lstm_layers):
            directions = [
                LstmDirectionParams(
                    *(self.params[f"lstm{layer}.{d}.{n}"] for n in ("W", "U", "b"))
                )
                for d in DIRECTIONS
            ]
            layers.append(LstmLayerParams(*directions))
        return tuple(layers)

    @property
    def emission_weights(self) -> NDArray[np.float64]:
        return self.params["emission.W"]

    @property
    def emission_bias(self) -> NDArray[np.float64]:
        return self.params["emission.b"]

    @property
    def crf(self) -> CrfParams:
        p = self.params
        return CrfParams(p["crf.transitions"], p["crf.start"], p["crf.end"])

    @property
    def n_params(self) -> int:
        return sum(int(np.prod(shape)) for shape in self.shapes.values())

    def with_params(self, params: Params) -> TaggerModel:
        """Return a model with the same vocabularies and different parameter values."""
        copied = {name: np.array(value, dtype=np.float64) for name, value in params.items()}
        return replace(self, params=copied)


def _glorot(
    rng: np.random.Generator, shape: tuple[int, ...], fan_in: int, fan_out: int
) -> NDArray[np.float64]:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape)


def init_model(
    config: NetworkConfig,
    embeddings: EmbeddingTable,
    char_vocab: CharVocab,
    rng: np.random.Generator,
    vectors_path: str | None = None,
) -> TaggerModel:
    """Initialize a tagger.

    Weight matrices are Glorot-uniform; biases are zero except the LSTM forget-gate bias,
    which is 1.0; CRF scores are zero.

    Args:
        config (NetworkConfig): Architecture; ``word_dim`` is filled from ``embeddings``.
        embeddings (EmbeddingTable): Word vectors.
        char_vocab (CharVocab): Character vocabulary.
        rng (np.random.Generator): Random generator.
        vectors_path (str | None, optional): Recorded path of the word vectors.

    Returns:
        TaggerModel: Fresh model.
    """
    config = config.with_word_dim(embeddings.dim)
    units = config.lstm_units
    params: Params = {}
    for name, shape in param_shapes(config, len(char_vocab)).items():
        if name == "char_embeddings":
            params[name] = _glorot(rng, shape, shape[0], shape[1])
        elif name == "char_filters":
            params[name] = _glorot(rng, shape, shape[1] * shape[2], shape[0])
        elif name.endswith((".W", ".U")):
            params[name] = _glorot(rng, shape, shape[1], shape[0])
        else:
            params[name] = np.zeros(shape)
        if name.startswith("lstm") and name.endswith(".b"):
            params[name][units : 2 * units] = 1.0
    model = TaggerModel(
        config,
        params,
        embeddings,
        char_vocab,
        tuple(label_alphabet()),
        vectors_path,
    )
    logger.debug("Initialized model with %d parameters", model.n_params)
    return model


@dataclass(frozen=True, slots=True, eq=False)
class EncodedSentence:
    """Network inputs of one sentence.

    Attributes:
        word_vectors: Matrix ``T x word_dim`` (frozen inputs).
        char_ids: Character indices per token.
        gold: Gold label indices, or None when unannotated.
    """

    word_vectors: NDArray[np.float64]
    char_ids: tuple[NDArray[np.int64], ...]
    gold: tuple[int, ...] | None = None

    def __len__(self) -> int:
        return len(self.char_ids)


def encode_sentence(
    sentence: Sentence, model: TaggerModel, with_gold: bool = True
) -> EncodedSentence:
    """Look up word vectors and character indices, and encode gold events as label indices."""
    surfaces = sentence.surfaces
    if surfaces:
        word_vectors = np.stack([model.embeddings.lookup(s) for s in surfaces])
    else:
        word_vectors = np.zeros((0, model.embeddings.dim))
    char_ids = tuple(model.char_vocab.encode(s) for s in surfaces)
    gold = tuple(labels_to_indices(encode_bio(sentence))) if with_gold else None
    return EncodedSentence(word_vectors, char_ids, gold)


@dataclass(slots=True)
class ForwardCache:
    """Intermediate values of one forward pass, kept for backpropagation."""

    char_caches: list[CharCnnCache]
    inputs: NDArray[np.float64]
    lstm_caches: list[dict[str, LstmCache]]
    top: NDArray[np.float64]


def word_representations(
    encoded: EncodedSentence, model: TaggerModel
) -> tuple[NDArray[np.float64], list[CharCnnCache]]:
    """Concatenate each word vector with its character CNN features.

    Returns:
        tuple[NDArray[np.float64], list[CharCnnCache]]: Matrix
        ``T x (word_dim + char_filters)`` and the per-token CNN caches.
    """
    cnn = model.char_cnn
    features = []
    caches = []
    for ids in encoded.char_ids:
        pooled, cache = char_cnn_forward_cached(ids, cnn)
        features.append(pooled)
        caches.append(cache)
    return np.hstack([encoded.word_vectors, np.stack(features)]), caches


def _bilstm_cached(
    inputs: NDArray[np.float64],
    layers: tuple[LstmLayerParams, ...],
    masks: DropoutMasks | None,
) -> tuple[NDArray[np.float64], list[dict[str, LstmCache]]]:
    caches: list[dict[str, LstmCache]] = []
    x = inputs
    for layer, params in enumerate(layers):
        outputs = []
        layer_caches: dict[str, LstmCache] = {}
        for direction in DIRECTIONS:
            if masks is None:
                input_mask, recurrent_mask = None, None
            else:
                input_mask, recurrent_mask = masks[(layer, direction)]
            out, cache = lstm_direction_forward_cached(
                x, params.direction(direction), direction, input_mask, recurrent_mask
            )
            outputs.append(out)
            layer_caches[direction] = cache
        x = np.hstack(outputs)
        caches.append(layer_caches)
    return x, caches


def bilstm_stack_forward(
    inputs: NDArray[np.float64],
    model: TaggerModel,
    train_mode: bool = False,
    dropout_masks: DropoutMasks | None = None,
) -> NDArray[np.float64]:
    """Run the stacked bidirectional LSTM.

    Each layer concatenates its forward and backward outputs, giving ``2H`` features per token.

    Args:
        inputs (NDArray[np.float64]): Word representations ``T x input_dim``.
        model (TaggerModel): Model holding the LSTM weights.
        train_mode (bool, optional): Apply ``dropout_masks``. Defaults to False.
        dropout_masks (DropoutMasks | None, optional): Masks from
            :func:`~evtag.network.lstm.sample_dropout_masks`; ignored in eval mode.

    Returns:
        NDArray[np.float64]: Matrix ``T x 2H``.

    Raises:
        ValueError: ``train_mode`` without masks.
    """
    if train_mode and dropout_masks is None:
        raise ValueError("train_mode requires dropout_masks")
    out, _ = _bilstm_cached(inputs, model.lstm_layers, dropout_masks if train_mode else None)
    return out


def forward_with_cache(
    encoded: EncodedSentence,
    model: TaggerModel,
    masks: DropoutMasks | None = None,
) -> tuple[NDArray[np.float64], ForwardCache]:
    """Emission scores of one encoded sentence, with the backpropagation cache.

    ``masks`` of None means eval mode.
    """
    inputs, char_caches = word_representations(encoded, model)
    top, lstm_caches = _bilstm_cached(inputs, model.lstm_layers, masks)
    scores = top @ model.emission_weights.T + model.emission_bias
    return scores, ForwardCache(char_caches, inputs, lstm_caches, top)


def emissions(
    sentence: Sentence,
    model: TaggerModel,
    train_mode: bool = False,
    masks: DropoutMasks | None = None,
) -> NDArray[np.float64]:
    """Unnormalized per-token label scores.

    Args:
        sentence (Sentence): Sentence with at least one token.
        model (TaggerModel): Tagger.
        train_mode (bool, optional): Apply dropout ``masks``. Defaults to False.
        masks (DropoutMasks | None, optional): Dropout masks for train mode.

    Returns:
        NDArray[np.float64]: Matrix ``T x n_labels``.

    Raises:
        ValueError: Empty sentence, or ``train_mode`` without masks.
    """
    if len(sentence) == 0:
        raise ValueError("Sentence must have at least one token")
    if train_mode and masks is None:
        raise ValueError("train_mode requires dropout masks")
    encoded = encode_sentence(sentence, model, with_gold=False)
    scores, _ = forward_with_cache(encoded, model, masks if train_mode else None)
    return scores


def predict_tags(sentence: Sentence, model: TaggerModel) -> TagSequence:
    """Viterbi label sequence of a sentence, in eval mode."""
    if len(sentence) == 0:
        return ()
    path = viterbi_decode(emissions(sentence, model), model.crf)
    return tuple(model.labels[index] for index in path)


def predict(sentence: Sentence, model: TaggerModel) -> list[EventSpan]:
    """Tag a sentence and decode its event spans.

    Args:
        sentence (Sentence): Sentence to tag; its own events are ignored.
        model (TaggerModel): Tagger.

    Returns:
        list[EventSpan]: Predicted spans, sorted by start.
    """
    return decode_bio(predict_tags(sentence, model))


def predict_corpus(corpus: Corpus, model: TaggerModel) -> Corpus:
    """Replace the events of every sentence with the model's predictions."""
    predicted = corpus.with_events(predict(sentence, model) for sentence in corpus)
    logger.info("Tagged %d sentences, %d predicted events", len(predicted), predicted.n_events)
    return predicted
