from __future__ import annotations

import pytest

_LINES = pytest.StashKey[dict]()


@pytest.fixture(scope="session")
def acceptance_log(request) -> dict:
    """criterion number -> status line, printed in the terminal summary."""
    return request.config.stash.setdefault(_LINES, {})


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, {})
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(lines):
        terminalreporter.write_line(lines[n])
