"""
Data model for tokenized, event-annotated text: BIO encoding, column-format I/O, statistics
and synthetic corpora.
"""

from evtag.corpus.bio import (
    TagSequence,
    decode_bio,
    encode_bio,
    encode_spans,
    indices_to_labels,
    label_alphabet,
    labels_to_indices,
)
from evtag.corpus.column import (
    format_corpus,
    load_corpus,
    read_column_file,
    write_column_file,
)
from evtag.corpus.stats import CountsReport, corpus_stats
from evtag.corpus.synthetic import (
    generate_synthetic_corpus,
    generate_synthetic_splits,
    synthetic_vocabulary,
)
from evtag.corpus.types import (
    Corpus,
    EventClass,
    EventSpan,
    Sentence,
    Token,
    validate_spans,
)

__all__ = [
    "Corpus",
    "CountsReport",
    "EventClass",
    "EventSpan",
    "Sentence",
    "TagSequence",
    "Token",
    "corpus_stats",
    "decode_bio",
    "encode_bio",
    "encode_spans",
    "format_corpus",
    "generate_synthetic_corpus",
    "generate_synthetic_splits",
    "indices_to_labels",
    "label_alphabet",
    "labels_to_indices",
    "load_corpus",
    "read_column_file",
    "synthetic_vocabulary",
    "validate_spans",
    "write_column_file",
]
