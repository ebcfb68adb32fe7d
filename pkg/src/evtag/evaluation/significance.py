"""McNemar's test on paired per-event correctness of two systems."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from scipy import stats

from evtag.constants import CHI2_CRITICAL_005
from evtag.evaluation.matching import MatchMode, match_spans
from evtag.evaluation.scoring import check_alignment

if TYPE_CHECKING:
    from evtag.corpus.types import Corpus

__all__ = [
    "McNemarResult",
    "mcnemar_statistic",
    "event_correctness",
    "mcnemar",
]


@dataclass(frozen=True, slots=True)
class McNemarResult:
    """Outcome of McNemar's test.

    Attributes:
        b: Gold events only system A gets right.
        c: Gold events only system B gets right.
        chi2: Continuity-corrected statistic.
        p_value: Chi-squared survival with one degree of freedom, or the two-sided binomial
            p-value for the exact variant.
        significant_at_005: Significance at the 0.05 level.
        exact: Whether the exact binomial variant was used.
    """

    b: int
    c: int
    chi2: float
    p_value: float
    significant_at_005: bool
    exact: bool = False

    def format_line(self, name: str = "") -> str:
        prefix = f"{name}: " if name else ""
        verdict = "significant" if self.significant_at_005 else "not significant"
        return (
            f"{prefix}b={self.b} c={self.c} chi2={self.chi2:.4f} p={self.p_value:.4g} "
            f"({verdict} at 0.05)"
        )


def mcnemar_statistic(b: int, c: int) -> float:
    """Continuity-corrected McNemar statistic ``(|b - c| - 1)^2 / (b + c)``.

    The statistic is 0 when ``b + c = 0``.

    Examples:
        >>> from evtag.evaluation import mcnemar_statistic
        >>> mcnemar_statistic(10, 2) == 49 / 12
        True
        >>> mcnemar_statistic(0, 0)
        0.0
    """
    if b + c == 0:
        return 0.0
    return (abs(b - c) - 1) ** 2 / (b + c)


def event_correctness(
    gold: Corpus, system: Corpus, mode: MatchMode | str, attribute: bool = False
) -> list[bool]:
    """Whether each gold event, in corpus order, is matched by the system.

    With ``attribute`` the matched system span must also carry the gold class.
    """
    correct = []
    for g, s in zip(gold, system):
        hits = {
            i
            for i, j in match_spans(g.events, s.events, mode)
            if (not attribute) or (g.events[i].event_class is s.events[j].event_class)
        }
        correct.extend(i in hits for i in range(len(g.events)))
    return correct


def mcnemar(
    system_a: Corpus,
    system_b: Corpus,
    gold: Corpus,
    mode: MatchMode | str = MatchMode.STRICT,
    attribute: bool = False,
    exact: bool = False,
) -> McNemarResult:
    """Compare two systems on the same gold events.

    Args:
        system_a (Corpus): Output of the first system.
        system_b (Corpus): Output of the second system.
        gold (Corpus): Reference annotation.
        mode (MatchMode | str, optional): Extent matching mode. Defaults to strict.
        attribute (bool, optional): Require class agreement for correctness. Defaults to False.
        exact (bool, optional): Decide significance with the two-sided binomial test on ``b``
            out of ``b + c`` instead of the chi-squared threshold. Defaults to False.

    Returns:
        McNemarResult: Discordant counts, statistic and verdict.

    Raises:
        AlignmentError: The corpora are not aligned.
    """
    mode = MatchMode(mode)
    check_alignment(gold, system_a)
    check_alignment(gold, system_b)
    correct_a = event_correctness(gold, system_a, mode, attribute)
    correct_b = event_correctness(gold, system_b, mode, attribute)
    b = sum(a and not o for a, o in zip(correct_a, correct_b))
    c = sum(o and not a for a, o in zip(correct_a, correct_b))
    chi2 = mcnemar_statistic(b, c)
    if exact:
        p_value = 1.0 if b + c == 0 else float(stats.binomtest(b, b + c, 0.5).pvalue)
        significant = p_value < 0.05
    else:
        p_value = float(stats.chi2.sf(chi2, df=1))
        significant = chi2 > CHI2_CRITICAL_005
    return McNemarResult(b, c, chi2, p_value, significant, exact)
