from fractions import Fraction

import pytest

# parameter samples used for "any alpha" checks
ALPHAS = [Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(7, 3)]


@pytest.fixture
def alphas():
    return list(ALPHAS)


# acceptance criteria record one line each; printed after the run
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, title, detail = ACCEPTANCE[number]
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
