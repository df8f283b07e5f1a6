from __future__ import annotations

import pytest

from gtopology import catalog


@pytest.fixture(scope="session")
def scenario():
    """Scenarios with their closures and subbases cached for the session."""
    cache: dict[str, catalog.Scenario] = {}

    def get(name: str) -> catalog.Scenario:
        if name not in cache:
            cache[name] = catalog.build_scenario(name)
        return cache[name]

    return get


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
