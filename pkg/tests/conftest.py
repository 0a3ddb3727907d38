import pytest

_ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the test body calls ``criterion(label, detail)``."""
    key = request.node.name
    notes = {}

    def record(label, detail=""):
        notes["label"], notes["detail"] = label, detail

    yield record
    _ACCEPTANCE.setdefault(key, {}).update(notes)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call" and "criterion" in item.fixturenames:
        _ACCEPTANCE.setdefault(item.name, {})["passed"] = report.passed


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, notes in sorted(_ACCEPTANCE.items()):
        status = "PASS" if notes.get("passed") else "FAIL"
        label = notes.get("label", name)
        detail = notes.get("detail", "")
        terminalreporter.write_line(f"[{status}] {label}" + (f"  ({detail})" if detail else ""))
