import pytest

ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Record a PASS/FAIL line for an acceptance criterion; set ``.ok`` before returning."""

    class Line:
        def __init__(self):
            self.ok = False
            self.detail = ""

    line = Line()
    yield line
    num = request.node.get_closest_marker("criterion").args[0]
    ACCEPTANCE[num] = (line.ok, request.node.name, line.detail)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, name, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {num:>2}  {name}  {detail}")
