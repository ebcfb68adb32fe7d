import io
import logging

import numpy as np
import pytest

from evtag.embeddings import (
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
from evtag.errors import VectorFormatError

try:
    from .helpers import fmt_result
except ImportError:
    import sys
    from os import path

    sys.path.append(path.dirname(path.dirname(path.abspath(__file__))))
    from helpers import fmt_result

BODY = "casa 0.1 0.2 0.3\nandare 1 2 3\n"


def test_load_without_header():
    table = load_text_vectors(io.StringIO(BODY), has_header=False)
    assert table.dim == 3
    assert table.words == ("casa", "andare")
    np.testing.assert_array_equal(table.vector("andare"), [1.0, 2.0, 3.0])


def test_header_gives_identical_table():
    plain = load_text_vectors(io.StringIO(BODY), has_header=False)
    with_header = load_text_vectors(io.StringIO("2 3\n" + BODY), has_header=True)
    assert plain.words == with_header.words
    np.testing.assert_array_equal(plain.vectors, with_header.vectors)
    np.testing.assert_array_equal(plain.unk_vector, with_header.unk_vector)


@pytest.mark.parametrize(
    "test_case",
    [
        {
            "description": "Trailing spaces",
            "text": "casa 0.1 0.2 0.3  \nandare 1 2 3\t\n",
        },
        {
            "description": "No final newline",
            "text": "casa 0.1 0.2 0.3\nandare 1 2 3",
        },
        {
            "description": "Blank lines",
            "text": "\ncasa 0.1 0.2 0.3\n\nandare 1 2 3\n\n",
        },
    ],
)
def test_load_whitespace_insensitive(test_case):
    table = load_text_vectors(io.StringIO(test_case["text"]), has_header=False)
    expected = load_text_vectors(io.StringIO(BODY), has_header=False)
    assert table.words == expected.words, "\n".join(
        (
            f"Description: {test_case['description']!r}",
            f"Expected: {fmt_result(expected.words)!s}",
            f"Actual: {fmt_result(table.words)!s}",
        )
    )
    np.testing.assert_array_equal(table.vectors, expected.vectors)


@pytest.mark.parametrize(
    "test_case",
    [
        {
            "description": "Ragged line",
            "text": "casa 0.1 0.2 0.3\nandare 1 2\n",
            "has_header": False,
            "line_no": 2,
        },
        {
            "description": "Header dim mismatch",
            "text": "2 4\n" + BODY,
            "has_header": True,
            "line_no": 2,
        },
        {
            "description": "Malformed header",
            "text": "two three\n" + BODY,
            "has_header": True,
            "line_no": 1,
        },
        {
            "description": "Non-numeric value",
            "text": "casa 0.1 x 0.3\n",
            "has_header": False,
            "line_no": 1,
        },
        {
            "description": "Empty file",
            "text": "",
            "has_header": False,
            "line_no": None,
        },
    ],
)
def test_load_errors(test_case):
    with pytest.raises(VectorFormatError) as exc_info:
        load_text_vectors(io.StringIO(test_case["text"]), has_header=test_case["has_header"])
    assert exc_info.value.line_no == test_case["line_no"], test_case["description"]


def test_duplicates_keep_first(caplog):
    text = "casa 1 1\ncasa 2 2\nandare 3 3\n"
    with caplog.at_level(logging.WARNING, logger="evtag.embeddings.table"):
        table = load_text_vectors(io.StringIO(text), has_header=False)
    assert len(table) == 2
    np.testing.assert_array_equal(table.vector("casa"), [1.0, 1.0])
    assert "1 duplicate" in caplog.text


def test_phrase_entries_load_as_keys():
    table = load_text_vectors(io.StringIO("in_grado_di 1 2\ngrado 3 4\n"), has_header=False)
    assert "in_grado_di" in table
    assert lookup_key(table, "grado") == "grado"
    assert lookup_key(table, "in") is None


@pytest.mark.parametrize(
    "test_case",
    [
        {
            "description": "Exact match",
            "token": "Casa",
            "expected": "Casa",
        },
        {
            "description": "Lowercase fallback",
            "token": "ANDARE",
            "expected": "andare",
        },
        {
            "description": "Digit normalization after lowercasing",
            "token": "Anno1999",
            "expected": "anno0000",
        },
        {
            "description": "Unknown",
            "token": "Roma",
            "expected": None,
        },
    ],
)
def test_lookup_key(test_case):
    table = EmbeddingTable(["Casa", "casa", "andare", "anno0000"], np.arange(8.0).reshape(4, 2))
    actual = lookup_key(table, test_case["token"])
    assert actual == test_case["expected"], "\n".join(
        (
            f"Description: {test_case['description']!r}",
            f"Expected: {fmt_result(test_case['expected'])!s}",
            f"Actual: {fmt_result(actual)!s}",
        )
    )


def test_lookup_values():
    table = EmbeddingTable(["casa"], np.array([[1.0, 2.0]]))
    np.testing.assert_array_equal(lookup(table, "Casa"), [1.0, 2.0])
    np.testing.assert_array_equal(table.lookup("Roma"), table.unk_vector)
    assert lookup(table, "").shape == (2,)


def test_unk_vector_policy():
    unk = default_unk_vector(50)
    assert unk.shape == (50,)
    assert np.all(np.abs(unk) <= 0.25)
    np.testing.assert_array_equal(unk, default_unk_vector(50))
    table = EmbeddingTable(["a"], np.zeros((1, 50)))
    np.testing.assert_array_equal(table.unk_vector, unk)


@pytest.mark.parametrize(
    "test_case",
    [
        {
            "description": "Row count mismatch",
            "words": ["a", "b"],
            "vectors": np.zeros((1, 2)),
        },
        {
            "description": "Duplicate words",
            "words": ["a", "a"],
            "vectors": np.zeros((2, 2)),
        },
        {
            "description": "Zero dim",
            "words": ["a"],
            "vectors": np.zeros((1, 0)),
        },
    ],
)
def test_table_invariants(test_case):
    with pytest.raises(ValueError):
        EmbeddingTable(test_case["words"], test_case["vectors"])


def test_table_is_read_only():
    table = EmbeddingTable(["a"], np.zeros((1, 2)))
    with pytest.raises(ValueError):
        table.vectors[0, 0] = 1.0


def test_write_and_sniff(tmp_path):
    table = random_vectors(["x", "y", "z"], dim=4, seed=3)
    for header in (False, True):
        buffer = io.StringIO()
        write_text_vectors(table, buffer, header=header)
        file = tmp_path / f"vectors-{header}.txt"
        file.write_text(buffer.getvalue(), encoding="utf-8")
        assert sniff_vector_header(file) is header
        loaded = load_vectors(file)
        assert loaded.words == table.words
        np.testing.assert_array_equal(loaded.vectors, table.vectors)


@pytest.mark.parametrize("header", [False, True])
def test_load_vectors_rejects_invalid_utf8(tmp_path, header):
    file = tmp_path / "latin1.vec"
    lines = ([b"2 2"] if header else []) + [b"casa 0.1 0.2", b"citt\xe0 0.3 0.4"]
    file.write_bytes(b"\n".join(lines) + b"\n")
    with pytest.raises(VectorFormatError) as exc_info:
        load_vectors(file)
    assert exc_info.value.line_no == len(lines)
    assert "invalid UTF-8 byte 0xe0" in str(exc_info.value)


def test_random_vectors():
    table = random_vectors(["b", "a", "b"], dim=3, seed=1)
    assert table.words == ("b", "a")
    assert np.all(np.abs(table.vectors) <= 0.5)
    np.testing.assert_array_equal(table.vectors, random_vectors(["b", "a"], dim=3, seed=1).vectors)
