import sympy
import pytest
from hypothesis import settings

from nilcenter.cli import bundled
from nilcenter.sysio import format_coef, load_system

settings.register_profile("default", deadline=None)
settings.load_profile("default")


def to_sympy(c):
    """Independent reading of a coefficient through sympy's parser."""
    return sympy.sympify(format_coef(c).replace("^", "**"))


def is_zero(expr):
    return sympy.expand(sympy.numer(sympy.together(expr))) == 0


def sym_equal(c, text):
    return is_zero(to_sympy(c) - sympy.sympify(text.replace("^", "**")))


def reduces_to_zero(expr, ideal, gens):
    """Is expr in the ideal generated by ``ideal`` (polynomials in gens)?"""
    expr = sympy.sympify(expr)
    if not ideal:
        return sympy.expand(expr) == 0
    G = sympy.groebner(ideal, *gens, order="lex")
    return G.contains(expr)


@pytest.fixture
def system():
    return lambda name: load_system(bundled(name))


CRITERIA: list[str] = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line; failures still fail the test."""
    def report(k, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}"
        CRITERIA.append(line)
        print(line)
        assert ok, line
    return report


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance")
        for line in sorted(CRITERIA, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
