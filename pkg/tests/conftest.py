import os

import pytest

_criteria: dict[int, tuple[str, str]] = {}


def pytest_collection_modifyitems(config, items):
    if os.environ.get("FOURSQ_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="extended sweep; set FOURSQ_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, text = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        status = "PASS" if rep.passed else "FAIL"
        if _criteria.get(n, ("", "PASS"))[1] == "PASS":
            _criteria[n] = (text, status)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        text, status = _criteria[n]
        terminalreporter.write_line(f"criterion {n}: {status}  {text}")
