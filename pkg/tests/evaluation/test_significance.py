import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evtag.constants import CHI2_CRITICAL_005
from evtag.corpus import Corpus
from evtag.evaluation import MatchMode, event_correctness, mcnemar, mcnemar_statistic

try:
    from .helpers import corpus, sentence
except ImportError:
    import sys
    from os import path

    sys.path.append(path.dirname(path.dirname(path.abspath(__file__))))
    from helpers import corpus, sentence


def one_event_corpus(flags, event_class="OCCURRENCE"):
    return Corpus([sentence("parte ora", *([(0, 0, event_class)] if flag else [])) for flag in flags])


@pytest.fixture
def ten_two():
    # 10 events only A finds, 2 only B finds, 3 both, 1 neither
    a_flags = [True] * 10 + [False] * 2 + [True] * 3 + [False]
    b_flags = [False] * 10 + [True] * 2 + [True] * 3 + [False]
    return one_event_corpus([True] * 16), one_event_corpus(a_flags), one_event_corpus(b_flags)


def test_statistic_fixture():
    assert mcnemar_statistic(10, 2) == pytest.approx(49 / 12, abs=1e-9)
    assert mcnemar_statistic(0, 0) == 0.0
    assert mcnemar_statistic(3, 2) == 0.0


def test_mcnemar_fixture(ten_two):
    gold, a, b = ten_two
    result = mcnemar(a, b, gold)
    assert (result.b, result.c) == (10, 2)
    assert result.chi2 == pytest.approx(49 / 12, abs=1e-9)
    assert result.chi2 > CHI2_CRITICAL_005
    assert result.significant_at_005
    assert 0.04 < result.p_value < 0.05
    assert "b=10 c=2" in result.format_line("strict")


def test_mcnemar_exact_variant(ten_two):
    gold, a, b = ten_two
    result = mcnemar(a, b, gold, exact=True)
    assert result.exact
    assert result.p_value == pytest.approx(0.0385742, abs=1e-6)
    assert result.significant_at_005


def test_identical_systems(ten_two):
    gold, a, _ = ten_two
    for exact in (False, True):
        result = mcnemar(a, a, gold, exact=exact)
        assert (result.b, result.c, result.chi2) == (0, 0, 0.0)
        assert not result.significant_at_005


def test_attribute_correctness():
    gold = corpus(sentence("parte ora", (0, 0, "OCCURRENCE")), sentence("dice ora", (0, 0, "REPORTING")))
    system = corpus(sentence("parte ora", (0, 0, "STATE")), sentence("dice ora", (0, 0, "REPORTING")))
    assert event_correctness(gold, system, MatchMode.STRICT) == [True, True]
    assert event_correctness(gold, system, MatchMode.STRICT, attribute=True) == [False, True]
    result = mcnemar(system, gold, gold, attribute=True)
    assert (result.b, result.c) == (0, 1)


def test_relaxed_mode():
    gold = corpus(sentence("è stato colpito", (0, 2, "OCCURRENCE")))
    a = corpus(sentence("è stato colpito", (2, 2, "OCCURRENCE")))
    b = corpus(sentence("è stato colpito"))
    assert mcnemar(a, b, gold, MatchMode.RELAXED).b == 1
    assert mcnemar(a, b, gold, MatchMode.STRICT).b == 0


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.booleans(), st.booleans()), max_size=30))
def test_mcnemar_symmetry(rows):
    gold = one_event_corpus([True] * len(rows))
    a = one_event_corpus([r[0] for r in rows])
    b = one_event_corpus([r[1] for r in rows])
    forward, backward = mcnemar(a, b, gold), mcnemar(b, a, gold)
    assert (forward.b, forward.c) == (backward.c, backward.b)
    assert forward.chi2 == backward.chi2
    assert forward.significant_at_005 == backward.significant_at_005
    assert forward.chi2 >= 0.0
