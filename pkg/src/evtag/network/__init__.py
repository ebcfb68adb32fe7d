"""
Tagger forward computation and decoding: character CNN, bidirectional LSTM stack, emission
projection and linear-chain CRF, plus the model file format.
"""

from evtag.network.char_cnn import (
    CharCnnCache,
    CharCnnParams,
    char_cnn_backward,
    char_cnn_forward,
    char_cnn_forward_cached,
)
from evtag.network.config import (
    FIELD_TYPES,
    NetworkConfig,
    config_from_items,
    config_to_items,
    parse_field,
)
from evtag.network.crf import (
    CrfGradients,
    CrfParams,
    crf_forward,
    crf_log_partition,
    crf_marginals,
    crf_nll,
    crf_nll_gradients,
    sequence_score,
    viterbi_decode,
)
from evtag.network.lstm import (
    DIRECTIONS,
    Direction,
    DropoutMasks,
    LstmCache,
    LstmDirectionParams,
    LstmLayerParams,
    lstm_direction_backward,
    lstm_direction_forward,
    lstm_direction_forward_cached,
    sample_dropout_masks,
)
from evtag.network.model import (
    EncodedSentence,
    ForwardCache,
    Params,
    TaggerModel,
    bilstm_stack_forward,
    emissions,
    encode_sentence,
    forward_with_cache,
    init_model,
    param_shapes,
    predict,
    predict_corpus,
    predict_tags,
    word_representations,
)
from evtag.network.serialization import (
    VECTORS_PATH_KEY,
    load_model,
    model_from_bytes,
    model_to_bytes,
    read_model_file,
    save_model,
)

__all__ = [
    "DIRECTIONS",
    "FIELD_TYPES",
    "VECTORS_PATH_KEY",
    "CharCnnCache",
    "CharCnnParams",
    "CrfGradients",
    "CrfParams",
    "Direction",
    "DropoutMasks",
    "EncodedSentence",
    "ForwardCache",
    "LstmCache",
    "LstmDirectionParams",
    "LstmLayerParams",
    "NetworkConfig",
    "Params",
    "TaggerModel",
    "bilstm_stack_forward",
    "char_cnn_backward",
    "char_cnn_forward",
    "char_cnn_forward_cached",
    "config_from_items",
    "config_to_items",
    "crf_forward",
    "crf_log_partition",
    "crf_marginals",
    "crf_nll",
    "crf_nll_gradients",
    "emissions",
    "encode_sentence",
    "forward_with_cache",
    "init_model",
    "load_model",
    "lstm_direction_backward",
    "lstm_direction_forward",
    "lstm_direction_forward_cached",
    "model_from_bytes",
    "model_to_bytes",
    "param_shapes",
    "parse_field",
    "predict",
    "predict_corpus",
    "predict_tags",
    "read_model_file",
    "save_model",
    "sample_dropout_masks",
    "sequence_score",
    "viterbi_decode",
    "word_representations",
]
