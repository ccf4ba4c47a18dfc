import pytest

from gewi.qsim import available_backends

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture(params=available_backends())
def backend(request):
    return request.param


@pytest.fixture
def record_criterion():
    """Record a pass/fail line for the acceptance summary."""

    def record(key, ok, detail=""):
        ACCEPTANCE[key] = (bool(ok), detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}  {detail}")
