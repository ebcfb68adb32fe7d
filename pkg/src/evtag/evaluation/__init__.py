"""
Span scoring under strict and relaxed matching, error diagnostics, significance testing and
report rendering.
"""

from evtag.evaluation.diagnostics import (
    ConfusionMatrix,
    PosBreakdown,
    PosRow,
    class_confusion,
    pos_breakdown,
)
from evtag.evaluation.matching import MatchMode, match_spans
from evtag.evaluation.plot import PLOT_HEIGHT, render_f1_svg
from evtag.evaluation.report import (
    REPORT_FORMATS,
    KeyValueFormatter,
    ReportFormatter,
    TableFormatter,
    format_report,
    parse_kv_report,
)
from evtag.evaluation.scoring import (
    COUNT_NAMES,
    METRIC_NAMES,
    ModeScores,
    ScoreCounts,
    ScoreReport,
    check_alignment,
    score,
)
from evtag.evaluation.significance import (
    McNemarResult,
    event_correctness,
    mcnemar,
    mcnemar_statistic,
)

__all__ = [
    "COUNT_NAMES",
    "METRIC_NAMES",
    "PLOT_HEIGHT",
    "REPORT_FORMATS",
    "ConfusionMatrix",
    "KeyValueFormatter",
    "MatchMode",
    "McNemarResult",
    "ModeScores",
    "PosBreakdown",
    "PosRow",
    "ReportFormatter",
    "ScoreCounts",
    "ScoreReport",
    "TableFormatter",
    "check_alignment",
    "class_confusion",
    "event_correctness",
    "format_report",
    "match_spans",
    "mcnemar",
    "mcnemar_statistic",
    "parse_kv_report",
    "pos_breakdown",
    "render_f1_svg",
    "score",
]
