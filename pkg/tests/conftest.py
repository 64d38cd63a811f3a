from fractions import Fraction

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")

_ACCEPTANCE: list[str] = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line, shown in the terminal summary."""

    def record(number: int, ok: bool, text: str) -> bool:
        _ACCEPTANCE.append(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {text}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)


def det_cofactor(m) -> Fraction:
    """Laplace expansion along the first row, memoised on the set of columns still in play."""
    n = len(m)
    memo = {}

    def rec(row: int, cols: int):
        if row == n:
            return 1
        if cols in memo:
            return memo[cols]
        total, sign = 0, 1
        for c in range(n):
            if cols >> c & 1:
                if m[row][c]:
                    total += sign * m[row][c] * rec(row + 1, cols & ~(1 << c))
                sign = -sign
        memo[cols] = total
        return total

    return rec(0, (1 << n) - 1)
