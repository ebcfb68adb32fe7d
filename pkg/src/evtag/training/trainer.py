"""Minibatch training loop with early stopping on development F1."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from evtag.embeddings.chars import build_char_vocab
from evtag.errors import TrainingError
from evtag.evaluation.scoring import score
from evtag.network.lstm import sample_dropout_masks
from evtag.network.model import encode_sentence, init_model, predict_corpus
from evtag.training.backward import loss_and_gradients
from evtag.training.config import TrainConfig
from evtag.training.optimizer import OptimizerState, clip_global_norm, global_norm, nadam_step

if TYPE_CHECKING:
    from evtag.corpus.types import Corpus
    from evtag.embeddings.chars import CharVocab
    from evtag.embeddings.table import EmbeddingTable
    from evtag.network.config import NetworkConfig
    from evtag.network.model import TaggerModel

__all__ = [
    "EarlyStopping",
    "EpochRecord",
    "TrainHistory",
    "HISTORY_HEADER",
    "train",
]

logger: logging.Logger = logging.getLogger(__name__)

HISTORY_HEADER: str = "epoch,mean_nll,dev_strict_f1,dev_f1_class"

# relative slack on the post-clip norm check, for rounding in the rescaling
_CLIP_SLACK: float = 1e-9


@dataclass(slots=True)
class EarlyStopping:
    """Patience rule on a score that should increase.

    Examples:
        >>> from evtag.training import EarlyStopping
        >>> stopper = EarlyStopping(patience=2)
        >>> [stopper.update(f1) for f1 in (0.5, 0.7, 0.7, 0.6)]
        [False, False, False, True]
        >>> stopper.best_epoch
        2
    """

    patience: int
    best_score: float = -1.0
    best_epoch: int = 0
    epoch: int = 0
    since_best: int = 0

    def update(self, value: float) -> bool:
        """Record the score of the next epoch; return True when training should stop."""
        self.epoch += 1
        if value > self.best_score:
            self.best_score, self.best_epoch, self.since_best = value, self.epoch, 0
            return False
        self.since_best += 1
        return self.since_best >= self.patience

    @property
    def improved(self) -> bool:
        """Whether the last recorded epoch is the best so far."""
        return self.best_epoch == self.epoch


@dataclass(frozen=True, slots=True)
class EpochRecord:
    """Summary of one completed epoch."""

    epoch: int
    mean_nll: float
    dev_strict_f1: float
    dev_f1_class: float

    def csv_row(self) -> str:
        return f"{self.epoch},{self.mean_nll!r},{self.dev_strict_f1!r},{self.dev_f1_class!r}"


@dataclass(frozen=True, slots=True)
class TrainHistory:
    """Per-epoch records of a training run.

    Attributes:
        records: One record per completed epoch, in order.
        best_epoch: Epoch (1-based) whose parameters were kept.
        max_clipped_norm: Largest global gradient norm after clipping, over all steps.
        stopped_early: Whether the patience rule ended training.
    """

    records: tuple[EpochRecord, ...]
    best_epoch: int
    max_clipped_norm: float
    stopped_early: bool

    @property
    def best(self) -> EpochRecord:
        return self.records[self.best_epoch - 1]

    def to_csv(self) -> str:
        """CSV text, one row per epoch."""
        return "\n".join([HISTORY_HEADER, *(r.csv_row() for r in self.records)]) + "\n"


def train(
    train: Corpus,
    dev: Corpus,
    embeddings: EmbeddingTable,
    net_config: NetworkConfig,
    train_config: TrainConfig | None = None,
    vectors_path: str | None = None,
    char_vocab: CharVocab | None = None,
) -> tuple[TaggerModel, TrainHistory]:
    """Train a tagger.

    Every epoch shuffles the training sentences with the seeded generator and walks them in
    batches of ``batch_size`` (the last one may be smaller). Each batch draws fresh dropout
    masks, computes gradients, clips them to global norm ``tau`` and takes a Nadam step. After
    each epoch the development set is tagged and scored; the parameters of the best strict-F1
    epoch are kept.
    Training stops after ``patience`` epochs without improvement or at ``max_epochs``.

    Args:
        train (Corpus): Training sentences, non-empty.
        dev (Corpus): Development sentences for model selection.
        embeddings (EmbeddingTable): Frozen word vectors.
        net_config (NetworkConfig): Architecture.
        train_config (TrainConfig | None, optional): Optimization settings. Defaults to
            :class:`TrainConfig` defaults.
        vectors_path (str | None, optional): Recorded in the model for later loading.
        char_vocab (CharVocab | None, optional): Character vocabulary. Defaults to the
            characters of ``train``.

    Returns:
        tuple[TaggerModel, TrainHistory]: Best model and the run history.

    Raises:
        TrainingError: No non-empty training sentence, or a clipped gradient norm above
            ``tau``.
    """
    config = TrainConfig() if train_config is None else train_config
    sentences = [s for s in train if len(s) > 0]
    if not sentences:
        raise TrainingError("Training corpus has no non-empty sentence")
    rng = np.random.default_rng(config.seed)
    if char_vocab is None:
        char_vocab = build_char_vocab(train)
    model = init_model(net_config, embeddings, char_vocab, rng, vectors_path=vectors_path)
    logger.info(
        "Training on %d sentences (%d dev), %d parameters, %d chars",
        len(sentences),
        len(dev),
        model.n_params,
        len(char_vocab),
    )
    encoded = [encode_sentence(s, model) for s in sentences]
    state = OptimizerState.zeros_like(model.params)

    records: list[EpochRecord] = []
    stopper = EarlyStopping(config.patience)
    best_params = model.params
    max_clipped = 0.0
    stopped_early = False
    for epoch in range(1, config.max_epochs + 1):
        order = rng.permutation(len(encoded))
        total_nll = 0.0
        for begin in range(0, len(order), config.batch_size):
            batch = [encoded[i] for i in order[begin : begin + config.batch_size]]
            masks = [sample_dropout_masks(model.config, rng) for _ in batch]
            loss, grads = loss_and_gradients(model, batch, masks)
            total_nll += loss * len(batch)
            raw_norm = global_norm(grads)
            clipped = clip_global_norm(grads, config.tau)
            norm = global_norm(clipped)
            logger.debug(
                "epoch %d step %d: grad norm %.6f -> %.6f",
                epoch,
                state.step + 1,
                raw_norm,
                norm,
            )
            if norm > config.tau * (1.0 + _CLIP_SLACK):
                raise TrainingError(f"clipped gradient norm {norm} exceeds tau {config.tau}")
            max_clipped = max(max_clipped, norm)
            params, state = nadam_step(model.params, clipped, state, config)
            model = model.with_params(params)

        report = score(dev, predict_corpus(dev, model))
        record = EpochRecord(
            epoch, total_nll / len(encoded), report.strict.f1, report.strict.f1_class
        )
        records.append(record)
        logger.info(
            "%d, %.6f, %.4f, %.4f",
            record.epoch,
            record.mean_nll,
            record.dev_strict_f1,
            record.dev_f1_class,
        )
        stop = stopper.update(record.dev_strict_f1)
        if stopper.improved:
            best_params = model.params
        if stop:
            stopped_early = True
            logger.info(
                "No dev F1 improvement for %d epochs, stopping after epoch %d",
                stopper.since_best,
                epoch,
            )
            break

    logger.info("Best epoch %d, dev strict F1 %.4f", stopper.best_epoch, stopper.best_score)
    history = TrainHistory(tuple(records), stopper.best_epoch, max_clipped, stopped_early)
    return model.with_params(best_params), history
