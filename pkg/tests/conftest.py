import pytest

from freegen.series import invariant_violations


def assert_sound(e, N):
    """Every expansion must satisfy leading-term and mass conservation."""
    assert invariant_violations(e, N) == []
    for length, c in e.items():
        assert c >= 0
        assert length % 2 == e.order % 2


@pytest.fixture
def sound():
    return assert_sound


_acceptance = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    name = report.nodeid.rsplit("::", 1)[-1].split("[", 1)[0]
    if "test_acceptance.py" in report.nodeid and name.startswith("test_criterion_"):
        # parametrized criteria pass only if every case passes
        if _acceptance.get(name, "passed") == "passed":
            _acceptance[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        status = "PASS" if _acceptance[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
