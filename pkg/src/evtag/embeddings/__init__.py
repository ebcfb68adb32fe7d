"""
Pre-trained word vectors, lookup with fallback, character vocabularies and
out-of-vocabulary statistics.
"""

from evtag.embeddings.chars import PAD_INDEX, UNK_INDEX, CharVocab, build_char_vocab
from evtag.embeddings.oov import OovReport, oov_rate
from evtag.embeddings.table import (
    EmbeddingTable,
    default_unk_vector,
    load_text_vectors,
    load_vectors,
    lookup,
    lookup_key,
    random_vectors,
    sniff_vector_header,
    write_text_vectors,
)

__all__ = [
    "PAD_INDEX",
    "UNK_INDEX",
    "CharVocab",
    "EmbeddingTable",
    "OovReport",
    "build_char_vocab",
    "default_unk_vector",
    "load_text_vectors",
    "load_vectors",
    "lookup",
    "lookup_key",
    "oov_rate",
    "random_vectors",
    "sniff_vector_header",
    "write_text_vectors",
]
