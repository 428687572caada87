import pytest
from hypothesis import strategies as st

from fixmodal.formula import And, AtomF, AtomT, Box, Not, Variable


def formulas(max_var: int = 2, max_leaves: int = 8):
    atom = st.builds(
        lambda pos, i: (AtomT if pos else AtomF)(Variable(i)),
        st.booleans(),
        st.integers(min_value=1, max_value=max_var),
    )
    return st.recursive(
        atom,
        lambda sub: st.one_of(
            st.builds(Not, sub),
            st.builds(And, sub, sub),
            st.builds(Box, sub),
        ),
        max_leaves=max_leaves,
    )


# -- acceptance criteria reporting ---------------------------------------------

_criteria: dict[int, tuple[str, str, float]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = "PASS" if report.outcome == "passed" else "FAIL"
        _criteria[number] = (title, status, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, status, duration = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}  ({duration:.2f}s)")
