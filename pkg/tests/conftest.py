import pytest

from quatcusps.quaternion import QuaternionAlgebra

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    number = title = None
    for kw in report.user_properties:
        if kw[0] == "criterion":
            number, title = kw[1]
    if number is None:
        return
    prev = _CRITERIA.get(number, (title, "PASS"))[1]
    status = "PASS" if report.passed and prev == "PASS" else "FAIL"
    _CRITERIA[number] = (title, status)


@pytest.fixture(autouse=True)
def _record_criterion(request):
    marker = request.node.get_closest_marker("criterion")
    if marker is not None:
        request.node.user_properties.append(("criterion", marker.args))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, status = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}")


@pytest.fixture
def hamilton():
    return QuaternionAlgebra(-1, -1)
