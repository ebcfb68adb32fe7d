import xml.etree.ElementTree as ET

import pytest

from evtag.errors import ReportFormatError
from evtag.evaluation import (
    PLOT_HEIGHT,
    REPORT_FORMATS,
    ModeScores,
    ScoreCounts,
    ScoreReport,
    format_report,
    parse_kv_report,
    render_f1_svg,
)

try:
    from .helpers import fmt_result
except ImportError:
    import sys
    from os import path

    sys.path.append(path.dirname(path.dirname(path.abspath(__file__))))
    from helpers import fmt_result

SVG_NS = "{http://www.w3.org/2000/svg}"


def make_report(strict_f1=0.5, relaxed_f1=1.0, f1_class=0.25):
    return ScoreReport(
        ModeScores(strict_f1, strict_f1, strict_f1, min(f1_class, strict_f1)),
        ModeScores(relaxed_f1, relaxed_f1, relaxed_f1, min(f1_class, relaxed_f1)),
        ScoreCounts(4, 4, 2, 4, 1, 1),
    )


def test_formats_registered():
    assert sorted(REPORT_FORMATS) == ["kv", "table"]


def test_table_format():
    text = format_report(make_report(), "table", title="bilstm")
    lines = text.splitlines()
    assert "Strict Evaluation" in lines[0] and "Relaxed Evaluation" in lines[0]
    assert lines[1].split() == ["R", "P", "F1", "F1-class"] * 2
    assert lines[2].split() == ["bilstm", "0.500", "0.500", "0.500", "0.250", "1.000", "1.000", "1.000", "0.250"]
    assert lines[3].startswith("gold=4 system=4")


def test_kv_round_trip():
    report = make_report(strict_f1=1 / 3, relaxed_f1=2 / 3)
    text = format_report(report, "kv", title="run 1")
    assert text.startswith("# run 1\n")
    assert parse_kv_report(text) == report
    assert parse_kv_report(text.splitlines()) == report


def test_unknown_format():
    with pytest.raises(ValueError):
        format_report(make_report(), "json")


@pytest.mark.parametrize(
    "test_case",
    [
        {
            "description": "Missing metric",
            "update": lambda lines: [line for line in lines if not line.startswith("relaxed.f1 ")],
        },
        {
            "description": "Non-numeric value",
            "update": lambda lines: [line.replace("0.5", "half") for line in lines],
        },
        {
            "description": "Rate above one",
            "update": lambda lines: [line.replace("strict.recall = 0.5", "strict.recall = 1.5") for line in lines],
        },
        {
            "description": "Malformed line",
            "update": lambda lines: lines + ["strict.precision"],
        },
        {
            "description": "Non-integer count",
            "update": lambda lines: [line.replace("counts.gold = 4", "counts.gold = 4.5") for line in lines],
        },
    ],
)
def test_kv_parse_errors(test_case):
    lines = format_report(make_report(), "kv").splitlines()
    with pytest.raises(ReportFormatError):
        parse_kv_report(test_case["update"](lines))


def bars(svg):
    root = ET.fromstring(svg)
    return [
        (rect.get("data-system"), rect.get("data-metric"), float(rect.get("data-value")), float(rect.get("height")))
        for rect in root.iter(f"{SVG_NS}rect")
        if rect.get("class") == "bar"
    ]


def test_svg_bars():
    reports = [make_report(0.5, 1.0, 0.25), make_report(0.8, 0.9, 0.4)]
    found = bars(render_f1_svg(reports, ["glove", "fasttext"]))
    assert len(found) == 2 * 2 * 2
    expected_values = [0.5, 0.25, 0.8, 0.4, 1.0, 0.25, 0.9, 0.4]
    actual_values = [value for _, _, value, _ in found]
    assert actual_values == pytest.approx(expected_values), "\n".join(
        (
            f"Expected: {fmt_result(expected_values)!s}",
            f"Actual: {fmt_result(actual_values)!s}",
        )
    )
    for _, _, value, height in found:
        assert height == pytest.approx(value * PLOT_HEIGHT, abs=0.01)
    assert [system for system, _, _, _ in found[:4]] == ["glove", "glove", "fasttext", "fasttext"]
    assert [metric for _, metric, _, _ in found[:2]] == ["f1", "f1_class"]


def test_svg_is_deterministic_and_escaped():
    reports = [make_report()]
    svg = render_f1_svg(reports, ['a<b & "c"'])
    assert svg == render_f1_svg(reports, ['a<b & "c"'])
    assert bars(svg)[0][0] == 'a<b & "c"'


@pytest.mark.parametrize(
    "test_case",
    [
        {
            "description": "No reports",
            "reports": [],
            "labels": [],
        },
        {
            "description": "Label count mismatch",
            "reports": [make_report()],
            "labels": ["a", "b"],
        },
    ],
)
def test_svg_errors(test_case):
    with pytest.raises(ValueError):
        render_f1_svg(test_case["reports"], test_case["labels"])
