import pytest

_CRITERIA = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line per test; the summary is printed at the end of the run."""
    entry = {"name": request.node.name, "label": request.node.get_closest_marker("criterion").args[0], "detail": ""}
    _CRITERIA.append(entry)

    def note(detail):
        entry["detail"] = detail

    yield note


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call":
        for entry in _CRITERIA:
            if entry["name"] == item.name:
                entry["passed"] = report.passed


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion reported in the summary")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for entry in _CRITERIA:
        status = "PASS" if entry.get("passed") else "FAIL"
        line = f"{status}  {entry['label']}"
        if entry["detail"]:
            line += f"  ({entry['detail']})"
        terminalreporter.write_line(line)
