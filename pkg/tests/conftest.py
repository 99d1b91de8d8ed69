import mpmath
import pytest

from wzverify.bigreal import BigFloat


def rel_err(x, y) -> float:
    """|x - y| / |y| as a float, with both sides taken to mpmath at 400 bits."""
    with mpmath.workprec(400):
        xv = mpmath.mpf(x.to_decimal(120)) if isinstance(x, BigFloat) else mpmath.mpf(x)
        yv = mpmath.mpf(y.to_decimal(120)) if isinstance(y, BigFloat) else mpmath.mpf(y)
        return float(abs(xv - yv) / abs(yv))


@pytest.fixture
def mp400():
    with mpmath.workprec(400):
        yield mpmath.mp


_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    """Record one summary line per acceptance criterion; printed at the end of the run."""

    def record(number: int, title: str, ok: bool, detail: str) -> None:
        line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
