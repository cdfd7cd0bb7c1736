from fractions import Fraction

import pytest
from hypothesis import strategies as st

from nag.exact import Matrix

rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 5))


@st.composite
def matrices(draw, min_dim=0, max_dim=4, rows=None, cols=None):
    n = rows if rows is not None else draw(st.integers(min_dim, max_dim))
    m = cols if cols is not None else draw(st.integers(min_dim, max_dim))
    entries = draw(st.lists(st.lists(rationals, min_size=m, max_size=m), min_size=n, max_size=n))
    return Matrix(n, m, entries)


def laplace_det(rows):
    """Cofactor expansion along the first row; exact and independent of elimination."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * laplace_det(minor)
    return total


@pytest.fixture
def rng():
    import random

    return random.Random(20240611)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
