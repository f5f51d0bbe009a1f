import pytest


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "acceptance(k, label): acceptance criterion; prints one PASS/FAIL line")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    k, label = mark.args
    verdict = "PASS" if report.passed else "FAIL"
    tr = item.config.pluginmanager.get_plugin("terminalreporter")
    if tr is not None:
        tr.write_line(f"ACCEPTANCE {k} ({label}): {verdict}")
