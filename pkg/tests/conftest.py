from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from togglekit import BIRATIONAL, PL, Labeling, RectShape
from togglekit.realm import to_rational

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    number, title = marker
    entry = _criteria.setdefault(number, {"title": title, "passed": True, "seen": False})
    if report.when == "call" or report.outcome != "passed":
        entry["seen"] = True
        entry["passed"] &= report.outcome == "passed"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        report.criterion = tuple(mark.args)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        status = "PASS" if entry["passed"] and entry["seen"] else "FAIL"
        terminalreporter.write_line(f"AC{number} {status}: {entry['title']}")


def rationals(realm):
    if realm is PL:
        return st.fractions(min_value=-5, max_value=5, max_denominator=4).map(to_rational)
    return st.fractions(min_value=Fraction(1, 4), max_value=5, max_denominator=4).filter(lambda q: q > 0).map(to_rational)


@st.composite
def labelings(draw, realm=None, max_side=3, min_side=1):
    realm = realm or draw(st.sampled_from([PL, BIRATIONAL]))
    r = draw(st.integers(min_side, max_side))
    s = draw(st.integers(min_side, max_side))
    vals = draw(st.lists(rationals(realm), min_size=r * s, max_size=r * s))
    return Labeling(RectShape(r, s), realm, [vals[k * s : (k + 1) * s] for k in range(r)])
