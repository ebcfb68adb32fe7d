"""Grouped bar chart of F1 scores as a self-contained SVG document.

One panel per matching mode; inside a panel each system gets a group of two bars, F1 and
F1-class. Bar heights are ``value * PLOT_HEIGHT`` pixels.
"""

from __future__ import annotations

from typing import TYPE_CHECKING
from xml.sax.saxutils import escape, quoteattr

from evtag.evaluation.matching import MatchMode

if TYPE_CHECKING:
    from collections.abc import Sequence

    from evtag.evaluation.scoring import ScoreReport

__all__ = [
    "PLOT_HEIGHT",
    "render_f1_svg",
]

PLOT_HEIGHT: int = 200
BAR_WIDTH: int = 24
GROUP_GAP: int = 24
MARGIN_LEFT: int = 48
MARGIN_TOP: int = 40
MARGIN_BOTTOM: int = 60
PANEL_GAP: int = 40
METRICS: tuple[tuple[str, str, str], ...] = (
    ("f1", "F1", "#4c72b0"),
    ("f1_class", "F1-class", "#dd8452"),
)


def _num(value: float) -> str:
    return f"{value:.2f}"


def _panel(
    reports: Sequence[ScoreReport], labels: Sequence[str], mode: MatchMode, x0: float
) -> list[str]:
    group_width = BAR_WIDTH * len(METRICS) + GROUP_GAP
    baseline = MARGIN_TOP + PLOT_HEIGHT
    parts = [
        f'<g class="panel" data-mode="{mode.value}">',
        f'<text x="{_num(x0 + MARGIN_LEFT)}" y="{MARGIN_TOP - 16}" class="title">'
        f"{mode.value.capitalize()} evaluation</text>",
    ]
    for tick in range(6):
        value = tick / 5
        y = baseline - value * PLOT_HEIGHT
        parts.append(
            f'<line x1="{_num(x0 + MARGIN_LEFT - 4)}" y1="{_num(y)}" '
            f'x2="{_num(x0 + MARGIN_LEFT + group_width * len(reports))}" y2="{_num(y)}" '
            'class="grid"/>'
        )
        parts.append(
            f'<text x="{_num(x0 + MARGIN_LEFT - 8)}" y="{_num(y + 4)}" class="tick">'
            f"{value:.1f}</text>"
        )
    for g, (report, label) in enumerate(zip(reports, labels)):
        scores = report.mode(mode)
        group_x = x0 + MARGIN_LEFT + GROUP_GAP / 2 + g * group_width
        for k, (metric, _, color) in enumerate(METRICS):
            value = getattr(scores, metric)
            height = value * PLOT_HEIGHT
            x = group_x + k * BAR_WIDTH
            parts.append(
                f'<rect class="bar" data-system={quoteattr(label)} data-metric="{metric}" '
                f'data-value="{value:.6f}" x="{_num(x)}" y="{_num(baseline - height)}" '
                f'width="{BAR_WIDTH}" height="{_num(height)}" fill="{color}"/>'
            )
            parts.append(
                f'<text x="{_num(x + BAR_WIDTH / 2)}" y="{_num(baseline - height - 4)}" '
                f'class="value">{value:.3f}</text>'
            )
        parts.append(
            f'<text x="{_num(group_x + BAR_WIDTH * len(METRICS) / 2)}" y="{baseline + 18}" '
            f'class="label">{escape(label)}</text>'
        )
    parts.append("</g>")
    return parts


def render_f1_svg(reports: Sequence[ScoreReport], labels: Sequence[str]) -> str:
    """Render strict and relaxed F1 / F1-class of several systems.

    Args:
        reports (Sequence[ScoreReport]): One report per system, at least one.
        labels (Sequence[str]): System names, one per report.

    Returns:
        str: SVG document; identical inputs give identical text.

    Raises:
        ValueError: No report, or report and label counts differ.

    Examples:
        >>> from evtag.evaluation import ModeScores, ScoreCounts, ScoreReport, render_f1_svg
        >>> scores = ModeScores(0.5, 0.5, 0.5, 0.25)
        >>> report = ScoreReport(scores, scores, ScoreCounts(4, 4, 2, 2, 1, 1))
        >>> render_f1_svg([report], ["a"]).count('class="bar"')
        4
    """
    if not reports:
        raise ValueError("At least one report is required")
    if len(reports) != len(labels):
        raise ValueError(f"Got {len(labels)} labels for {len(reports)} reports")
    group_width = BAR_WIDTH * len(METRICS) + GROUP_GAP
    panel_width = MARGIN_LEFT + group_width * len(reports) + PANEL_GAP
    width = 2 * panel_width
    height = MARGIN_TOP + PLOT_HEIGHT + MARGIN_BOTTOM
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        "<style>"
        ".title{font:bold 14px sans-serif}"
        ".tick,.value,.label,.legend{font:11px sans-serif}"
        ".tick{text-anchor:end}.value,.label{text-anchor:middle}"
        ".grid{stroke:#dddddd;stroke-width:1}"
        "</style>",
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    for p, mode in enumerate(MatchMode.__members__.values()):
        parts.extend(_panel(reports, labels, mode, p * panel_width))
    legend_y = height - 16
    for k, (_, name, color) in enumerate(METRICS):
        x = MARGIN_LEFT + k * 90
        parts.append(
            f'<rect x="{x}" y="{legend_y - 10}" width="12" height="12" fill="{color}"/>'
        )
        parts.append(f'<text x="{x + 16}" y="{legend_y}" class="legend">{name}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
