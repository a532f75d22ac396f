from pathlib import Path

import pytest

from aspu.answer_sets import format_literal_set
from aspu.syntax import parse_program

FIXTURES = Path(__file__).parent / "fixtures"


def load(name):
    return parse_program((FIXTURES / f"{name}.lp").read_text())


def family(sets):
    return [format_literal_set(s) for s in sets]


@pytest.fixture
def fixture_program():
    return load


def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when != "call" and outcome != "error":
                continue
            props = dict(rep.user_properties)
            if "criterion" in props:
                rows.append((props["criterion"], "PASS" if outcome == "passed" else "FAIL",
                             props.get("detail", "")))
    if rows:
        terminalreporter.section("acceptance criteria")
        for n, status, detail in sorted(rows):
            terminalreporter.write_line(f"criterion {n:>2}: {status}  {detail}")
