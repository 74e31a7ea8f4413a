import contextlib

import pytest


class AcceptanceLog:
    """Collects one pass/fail line per acceptance criterion.

    The lines print as they happen (visible with -s) and repeat in a
    dedicated section of the terminal summary so a plain `pytest -v` run
    always shows them.
    """

    lines = []

    @contextlib.contextmanager
    def criterion(self, num, description):
        try:
            yield
        except BaseException:
            self._record(num, description, False)
            raise
        self._record(num, description, True)

    def _record(self, num, description, ok):
        line = "criterion %2d %s - %s" % (num, "PASS" if ok else "FAIL", description)
        type(self).lines.append(line)
        print(line)


@pytest.fixture
def acceptance():
    return AcceptanceLog()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if AcceptanceLog.lines:
        terminalreporter.section("acceptance criteria")
        for line in AcceptanceLog.lines:
            terminalreporter.line(line)
