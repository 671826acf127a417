import pytest


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    """Emit one PASS/FAIL line per acceptance criterion."""
    outcome = yield
    report = outcome.get_result()
    if report.when != "call" or "test_acceptance" not in item.nodeid:
        return
    tr = item.config.pluginmanager.get_plugin("terminalreporter")
    if tr is None:
        return
    doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
    status = "PASS" if report.passed else "FAIL"
    tr.write_line(f"{doc} ... {status}")
