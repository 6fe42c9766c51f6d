from fractions import Fraction

import mpmath
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

mpmath.mp.dps = 60


def to_mpf(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def mp_contains(iv, value) -> bool:
    """Interval endpoints compared against an mpmath value (60 digits)."""
    return to_mpf(iv.lo) <= value <= to_mpf(iv.hi)


def mathieu_oracle(r: Fraction):
    """S(r) by mpmath's Euler-Maclaurin summation, independent of the package."""
    rr = to_mpf(r)
    return mpmath.nsum(lambda n: 2 * n / (n * n + rr * rr) ** 2, [1, mpmath.inf], method="e")


rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**6)
positive_r = st.fractions(min_value=Fraction(1, 1000), max_value=100, max_denominator=1000).filter(lambda q: q > 0)


@pytest.fixture(scope="session")
def oracle():
    return mathieu_oracle


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """Record one pass/fail line for an acceptance criterion; the line is also echoed in the terminal summary."""

    def record(number: int, title: str, passed: bool, detail: str = "") -> bool:
        line = f"criterion {number} [{'PASS' if passed else 'FAIL'}] {title}" + (f": {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
