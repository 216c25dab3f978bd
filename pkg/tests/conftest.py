import random

import pytest
from hypothesis import strategies as st

from deficiency.presentation import parse_presentation
from deficiency.words import Word

signed_letters = st.lists(
    st.integers(min_value=-3, max_value=3).filter(bool), max_size=24)


@st.composite
def words(draw, ngens=3, max_size=24):
    letters = draw(st.lists(st.integers(-ngens, ngens).filter(bool), max_size=max_size))
    return Word.from_letters(letters)


def random_word(rng, ngens, length):
    return Word.from_letters([rng.choice([1, -1]) * rng.randint(1, ngens)
                              for _ in range(length)])


# Finite groups with (presentation, subgroup generators, expected index).
CORPUS = [
    ("< a | a^6 >", ["a^2"], 2),
    ("< a, b | a^2, b^3, (a*b)^2 >", ["a"], 3),
    ("< a, b | a^2, b^3, (a*b)^3 >", ["b"], 4),
    ("< a, b | a^2, b^3, (a*b)^5 >", ["b"], 20),
    ("< r, s | r^4, s^2, s*r*s^-1*r >", ["s"], 4),
    ("< x, y | x^5 = y^3 = (x*y)^2 >", [], 120),
]


@pytest.fixture
def rng():
    return random.Random(20261014)


@pytest.fixture(params=CORPUS, ids=lambda c: c[0])
def corpus_pair(request):
    text, subgroup, index = request.param
    P = parse_presentation(text)
    return P, [P.word(w) for w in subgroup], index


# acceptance reporting ---------------------------------------------------------

@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    results = item.config.stash.setdefault(_RESULTS, {})
    number, title = marker.args
    if report.when == "setup" and not report.passed:
        results[number] = (title, False)
    elif report.when == "call":
        results[number] = (title, report.passed)


_RESULTS = pytest.StashKey()


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_RESULTS, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, ok = results[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
