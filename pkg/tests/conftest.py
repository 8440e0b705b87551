from fractions import Fraction

from hypothesis import strategies as st

small_fractions = st.fractions(
    min_value=-20, max_value=20, max_denominator=12
)


@st.composite
def polynomials(draw, max_degree=8):
    from hermquad.exact import Polynomial

    return Polynomial(draw(st.lists(small_fractions, max_size=max_degree + 1)))


@st.composite
def intervals(draw):
    a = draw(small_fractions)
    b = draw(small_fractions.filter(lambda v: v != a))
    return a, b


def frac(s: str) -> Fraction:
    return Fraction(s)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
