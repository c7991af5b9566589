import pytest

RESULTS: dict[int, tuple[str, str, float, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): one acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    num, title = mark.args
    detail = dict(item.user_properties).get("detail", "")
    if rep.failed:
        msg = str(rep.longrepr.reprcrash.message) if hasattr(rep.longrepr, "reprcrash") else ""
        detail = (detail + " " + msg.splitlines()[0] if msg else detail).strip()
    RESULTS[num] = ("PASS" if rep.passed else "FAIL", title, rep.duration, detail)


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        status, title, secs, detail = RESULTS[num]
        line = f"{status} criterion {num}: {title} ({secs:.1f}s)"
        if detail:
            line += f" - {detail}"
        terminalreporter.write_line(line)
