import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evtag.corpus import (
    EventClass,
    EventSpan,
    Sentence,
    decode_bio,
    encode_bio,
    encode_spans,
    generate_synthetic_corpus,
    indices_to_labels,
    label_alphabet,
    labels_to_indices,
)
from evtag.errors import InvalidLabelError

try:
    from .helpers import fmt_result, sentence, spans
except ImportError:
    import sys
    from os import path

    sys.path.append(path.dirname(path.dirname(path.abspath(__file__))))
    from helpers import fmt_result, sentence, spans


def test_label_alphabet():
    labels = label_alphabet()
    assert len(labels) == 15
    assert labels[0] == "O"
    assert len(set(labels)) == 15
    for cls in EventClass:
        assert labels[1 + 2 * cls.index] == f"B-{cls.value}"
        assert labels[2 + 2 * cls.index] == f"I-{cls.value}"


@pytest.mark.parametrize(
    "test_case",
    [
        {
            "description": "Single-token events",
            "sentence": sentence("Marco pensa di andare a casa .", (1, 1, "I_STATE"), (3, 3, "OCCURRENCE")),
            "expected": ("O", "B-I_STATE", "O", "B-OCCURRENCE", "O", "O", "O"),
        },
        {
            "description": "Multi-token event",
            "sentence": sentence("è in grado di vincere", (1, 3, "STATE"), (4, 4, "OCCURRENCE")),
            "expected": ("O", "B-STATE", "I-STATE", "I-STATE", "B-OCCURRENCE"),
        },
        {
            "description": "Adjacent events of the same class",
            "sentence": sentence("a b", (0, 0, "STATE"), (1, 1, "STATE")),
            "expected": ("B-STATE", "B-STATE"),
        },
        {
            "description": "No events",
            "sentence": sentence("a b c"),
            "expected": ("O", "O", "O"),
        },
    ],
)
def test_encode_bio(test_case):
    actual = encode_bio(test_case["sentence"])
    assert actual == test_case["expected"], "\n".join(
        (
            f"Description: {test_case['description']!r}",
            f"Expected: {fmt_result(test_case['expected'])!s}",
            f"Actual: {fmt_result(actual)!s}",
        )
    )


@pytest.mark.parametrize(
    "test_case",
    [
        {
            "description": "Well-formed",
            "tags": ["B-STATE", "I-STATE", "O", "B-OCCURRENCE"],
            "expected": spans((0, 1, "STATE"), (3, 3, "OCCURRENCE")),
        },
        {
            "description": "Orphan I- at the start opens a span",
            "tags": ["I-STATE", "I-STATE", "O"],
            "expected": spans((0, 1, "STATE")),
        },
        {
            "description": "Orphan I- after O opens a span",
            "tags": ["O", "I-OCCURRENCE", "O"],
            "expected": spans((1, 1, "OCCURRENCE")),
        },
        {
            "description": "I- of another class starts a new span",
            "tags": ["B-STATE", "I-OCCURRENCE", "I-OCCURRENCE"],
            "expected": spans((0, 0, "STATE"), (1, 2, "OCCURRENCE")),
        },
        {
            "description": "B- closes the previous run",
            "tags": ["B-REPORTING", "B-REPORTING", "I-REPORTING"],
            "expected": spans((0, 0, "REPORTING"), (1, 2, "REPORTING")),
        },
        {
            "description": "Run reaching the end",
            "tags": ["O", "B-I_ACTION", "I-I_ACTION"],
            "expected": spans((1, 2, "I_ACTION")),
        },
        {
            "description": "Empty",
            "tags": [],
            "expected": [],
        },
    ],
)
def test_decode_bio(test_case):
    actual = decode_bio(test_case["tags"])
    assert actual == test_case["expected"], "\n".join(
        (
            f"Description: {test_case['description']!r}",
            f"Tags: {fmt_result(test_case['tags'])!s}",
            f"Expected: {fmt_result(test_case['expected'])!s}",
            f"Actual: {fmt_result(actual)!s}",
        )
    )


def test_decode_bio_unknown_label():
    with pytest.raises(InvalidLabelError):
        decode_bio(["O", "B-FOO"])


def test_label_index_round_trip():
    labels = tuple(label_alphabet())
    assert indices_to_labels(labels_to_indices(labels)) == labels
    with pytest.raises(InvalidLabelError):
        labels_to_indices(["X"])
    with pytest.raises(InvalidLabelError):
        indices_to_labels([15])


def test_bio_round_trip_on_synthetic_sentences():
    corpus = generate_synthetic_corpus(seed=11, n_sentences=1200)
    assert corpus.n_events > 1000
    for s in corpus:
        assert decode_bio(encode_bio(s)) == list(s.events)


@st.composite
def annotated_sentences(draw):
    n_tokens = draw(st.integers(min_value=1, max_value=12))
    cut_points = sorted(draw(st.sets(st.integers(min_value=0, max_value=n_tokens), max_size=8)) | {0, n_tokens})
    events = []
    for start, stop in zip(cut_points, cut_points[1:]):
        if draw(st.booleans()):
            events.append(EventSpan(start, stop - 1, draw(st.sampled_from(list(EventClass)))))
    return Sentence.from_surfaces([f"w{i}" for i in range(n_tokens)], events)


@settings(max_examples=300, deadline=None)
@given(annotated_sentences())
def test_bio_round_trip_property(s):
    tags = encode_bio(s)
    assert len(tags) == len(s)
    assert decode_bio(tags) == list(s.events)


@settings(max_examples=300, deadline=None)
@given(st.lists(st.sampled_from(label_alphabet()), max_size=15))
def test_decode_bio_total(tags):
    decoded = decode_bio(tags)
    assert encode_spans(len(tags), decoded) is not None
    assert decode_bio(encode_spans(len(tags), decoded)) == decoded
