from __future__ import annotations

import pytest
from hypothesis import settings

from sinkwalk import graph as gr

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def p3():
    return gr.decorate(gr.path_graph(3), 0, 2)


@pytest.fixture
def record():
    """Collect one summary line per acceptance criterion."""

    def _record(criterion: str, passed: bool, detail: str) -> None:
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}")

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
