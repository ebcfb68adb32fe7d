"""
Optimization of the tagger: analytic gradients, global-norm clipping, Nadam updates, the
minibatch training loop with early stopping, and finite-difference gradient checks.
"""

from evtag.training.backward import backward, batch_loss, loss_and_gradients
from evtag.training.config import TrainConfig, load_config_file, parse_config
from evtag.training.gradcheck import (
    TINY_WORDS,
    grad_check,
    param_errors,
    tiny_config,
    tiny_model,
)
from evtag.training.optimizer import (
    Gradients,
    OptimizerState,
    clip_global_norm,
    global_norm,
    nadam_step,
)
from evtag.training.trainer import (
    HISTORY_HEADER,
    EarlyStopping,
    EpochRecord,
    TrainHistory,
    train,
)

__all__ = [
    "HISTORY_HEADER",
    "TINY_WORDS",
    "EarlyStopping",
    "EpochRecord",
    "Gradients",
    "OptimizerState",
    "TrainConfig",
    "TrainHistory",
    "backward",
    "batch_loss",
    "clip_global_norm",
    "global_norm",
    "grad_check",
    "load_config_file",
    "loss_and_gradients",
    "nadam_step",
    "param_errors",
    "parse_config",
    "tiny_config",
    "tiny_model",
    "train",
]
