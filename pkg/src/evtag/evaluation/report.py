"""Score report rendering and parsing."""

from __future__ import annotations

import sys
from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, ClassVar

from evtag.errors import ReportFormatError
from evtag.evaluation.scoring import METRIC_NAMES, ScoreReport
from evtag.utils import iter_key_values

if sys.version_info >= (3, 12):  # pragma: no cover
    from typing import override
else:  # pragma: no cover
    from typing_extensions import override

if TYPE_CHECKING:
    from collections.abc import Iterable

__all__ = [
    "REPORT_FORMATS",
    "ReportFormatter",
    "TableFormatter",
    "KeyValueFormatter",
    "format_report",
    "parse_kv_report",
]


class ReportFormatter(ABC):
    """Render a :class:`ScoreReport` as text."""

    name: ClassVar[str]

    @abstractmethod
    def render(self, report: ScoreReport, title: str = "") -> str:
        """Render the report.

        Args:
            report (ScoreReport): Report to render.
            title (str, optional): System name shown by formats that have one.

        Returns:
            str: Text ending with a newline.
        """


class TableFormatter(ReportFormatter):
    """Human-readable table: R, P, F1 and F1-class under strict and relaxed evaluation."""

    name = "table"
    _COLUMNS: ClassVar[tuple[tuple[str, str], ...]] = (
        ("R", "recall"),
        ("P", "precision"),
        ("F1", "f1"),
        ("F1-class", "f1_class"),
    )

    @override
    def render(self, report: ScoreReport, title: str = "") -> str:
        label_width = max(len(title), 6) + 2
        group_width = 10 * len(self._COLUMNS)
        header = (
            " " * label_width
            + "Strict Evaluation".center(group_width)
            + "Relaxed Evaluation".center(group_width)
        )
        columns = " " * label_width + "".join(f"{name:>10}" for name, _ in self._COLUMNS) * 2
        values = []
        for scores in (report.strict, report.relaxed):
            values.extend(f"{getattr(scores, field):>10.3f}" for _, field in self._COLUMNS)
        row = (title or "system").ljust(label_width) + "".join(values)
        counts = report.counts
        footer = (
            f"gold={counts.gold} system={counts.system} "
            f"strict_tp={counts.strict_tp} relaxed_tp={counts.relaxed_tp} "
            f"strict_tp_class={counts.strict_tp_class} "
            f"relaxed_tp_class={counts.relaxed_tp_class}"
        )
        return "\n".join([header.rstrip(), columns, row, footer]) + "\n"


class KeyValueFormatter(ReportFormatter):
    """One ``key = value`` line per metric, floats written exactly."""

    name = "kv"

    @override
    def render(self, report: ScoreReport, title: str = "") -> str:
        lines = [f"# {title}"] if title else []
        for key, value in report.as_dict().items():
            lines.append(f"{key} = {value!r}")
        return "\n".join(lines) + "\n"


REPORT_FORMATS: dict[str, ReportFormatter] = {
    f.name: f for f in (TableFormatter(), KeyValueFormatter())
}


def format_report(report: ScoreReport, fmt: str = "table", title: str = "") -> str:
    """Render a report in a named format.

    Args:
        report (ScoreReport): Report to render.
        fmt (str, optional): ``"table"`` or ``"kv"``. Defaults to ``"table"``.
        title (str, optional): System name.

    Returns:
        str: Rendered report.

    Raises:
        ValueError: Unknown format.
    """
    try:
        formatter = REPORT_FORMATS[fmt]
    except KeyError:
        raise ValueError(
            f"Unknown report format {fmt!r}; expected one of {sorted(REPORT_FORMATS)}"
        ) from None
    return formatter.render(report, title)


def parse_kv_report(lines: str | Iterable[str]) -> ScoreReport:
    """Parse the ``kv`` format back into a report.

    Examples:
        >>> from evtag.evaluation import parse_kv_report
        >>> text = "\\n".join(
        ...     [f"{mode}.{m} = 0.5" for mode in ("strict", "relaxed") for m in
        ...      ("precision", "recall", "f1", "f1_class")]
        ...     + [f"counts.{c} = 2" for c in ("gold", "system", "strict_tp", "relaxed_tp",
        ...        "strict_tp_class", "relaxed_tp_class")]
        ... )
        >>> parse_kv_report(text).strict.f1
        0.5

    Raises:
        ReportFormatError: Malformed line, unparsable value or missing metric.
    """
    if isinstance(lines, str):
        lines = lines.splitlines()
    values: dict[str, float | int] = {}
    try:
        for line_no, key, value in iter_key_values(lines):
            if key.startswith("counts."):
                values[key] = int(value)
            else:
                values[key] = float(value)
                if key.rpartition(".")[2] in METRIC_NAMES and not 0.0 <= values[key] <= 1.0:
                    raise ReportFormatError(f"line {line_no}: {key} outside [0, 1]: {value}")
    except ValueError as e:
        if isinstance(e, ReportFormatError):
            raise
        raise ReportFormatError(str(e)) from None
    try:
        return ScoreReport.from_dict(values)
    except KeyError as e:
        raise ReportFormatError(f"missing metric {e.args[0]!r}") from None
