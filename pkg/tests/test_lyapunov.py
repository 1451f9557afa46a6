import itertools
import time

import pytest
import sympy

from nilcenter.algebra import CoefFrac, PhasePoly, linear_field
from nilcenter.lyapunov import (ExistentialError, build_family, eta_necessary_factors,
                                eta_quantities, lyapunov_residual, resonant_term)
from nilcenter.sysio import format_parampoly, parse_expression as E, parse_system

from conftest import sym_equal, to_sympy


def dense_eta1(P, Q, R, lam, complement):
    """eta_1 from one dense linear solve over all cubic and quartic monomials."""
    x, y, z, eps, eta = sympy.symbols("x y z eps eta")
    unknowns, H = [], eps * x**2 + y**2
    for n in (3, 4):
        for i, j in itertools.product(range(n + 1), repeat=2):
            if i + j <= n:
                c = sympy.Symbol(f"h{i}{j}{n - i - j}")
                unknowns.append(c)
                H += c * x**i * y**j * z**(n - i - j)
    res = (y + P) * sympy.diff(H, x) + (-eps * x + Q) * sympy.diff(H, y) \
        + (-lam * z + R) * sympy.diff(H, z)
    target = x**4 if complement == "xpow" else (x**2 + y**2)**2
    res = sympy.Poly(sympy.expand(res - eta * target), x, y, z)
    eqs = [c for m, c in res.terms() if sum(m) <= 4]
    sol = sympy.solve(eqs, unknowns + [eta], dict=True)
    assert len(sol) == 1
    return sympy.factor(sol[0][eta])


def test_family_unknowns(system):
    X = system("abd_family")
    fam = build_family(X, 2, "symbolic")
    assert set(fam.unknowns) == {"g1_20", "g1_11", "g2_20", "g2_11", "g2_02"}
    assert build_family(X, 1, "symbolic").unknowns == ()
    zero = build_family(X)
    assert zero.F1.is_zero() and zero.F2.is_zero() and zero.unknowns == ()
    with pytest.raises(ValueError):
        build_family(X, 2, "random")


def test_abd_family_eta1(system):
    t = time.perf_counter()
    res = eta_quantities(build_family(system("abd_family")), 1)
    assert time.perf_counter() - t < 10
    eta = res.eta(1)
    # the reference value up to a factor of -1
    assert sym_equal(eta, "4*eps^2*d*(a-b)/(12*eps+3)")
    assert eta.den == (4 * CoefFrac.symbol("eps") + 1).num
    assert res.residual_ok


def test_abd_family_circle_complement(system):
    eta = eta_quantities(build_family(system("abd_family")), 1, "circle").eta(1)
    assert sym_equal(eta, "4*eps^2*d*(a-b)/((4*eps+1)*(3*eps^2+2*eps+3))")


@pytest.mark.parametrize("complement", ["xpow", "circle"])
def test_eta1_matches_dense_oracle(system, complement):
    a, b, d = sympy.symbols("a b d")
    x, y, z = sympy.symbols("x y z")
    want = dense_eta1(-2 * x * y + a * x * z, -2 * x**3 + y**2 + b * y * z, d * x * y, 1, complement)
    got = eta_quantities(build_family(system("abd_family")), 1, complement).eta(1)
    assert sympy.simplify(to_sympy(got) - want) == 0


def test_planar_embedded_weak_focus():
    X = parse_system("lambda = 1\ndx = y\ndy = y^3\ndz = -z")
    x, y, z = sympy.symbols("x y z")
    want = dense_eta1(0, y**3, 0, 1, "xpow")
    got = eta_quantities(build_family(X), 1).eta(1)
    assert sympy.simplify(to_sympy(got) - want) == 0 and not got.is_zero()


def test_linear_field_has_no_etas():
    res = eta_quantities(build_family(linear_field(2)), 3)
    assert all(e.is_zero() for e in res.etas)
    assert res.H_jet == E("eps*x^2 + y^2").with_n(8)


@pytest.mark.parametrize("text", [
    # Hamiltonian in (x, y), z decoupled
    "lambda = 1\ndx = y - 2*x*y\ndy = -2*x^3 + y^2\ndz = -z",
    # reversible under (x, y, t) -> (x, -y, -t)
    "lambda = 3\ndx = y + x^2*y\ndy = x^3 + x*y^2 + x^2\ndz = -3*z + x*y",
])
def test_centers_have_vanishing_etas(text):
    res = eta_quantities(build_family(parse_system(text)), 2)
    assert all(e.is_zero() for e in res.etas)


def test_residual_self_check(system):
    fam = build_family(system("mu_system"))
    res = eta_quantities(fam, 2)
    assert res.residual_ok and lyapunov_residual(fam, res).is_zero()
    assert len(res.etas) == 2


def test_symbolic_mode_runs(system):
    fam = build_family(system("abd_family"), 2, "symbolic")
    res = eta_quantities(fam, 1)
    assert "g2_02" in res.eta(1).variables() or not res.eta(1).is_zero()
    with pytest.raises(ExistentialError, match="existential in g"):
        eta_necessary_factors(res)


def test_necessary_factors(system):
    res = eta_quantities(build_family(system("abd_family")), 1)
    assert [format_parampoly(f) for f in eta_necessary_factors(res)] == ["d", "a-b"]
    assert eta_necessary_factors([CoefFrac()]) == []


def test_resonant_terms():
    assert resonant_term(2) == E("x^4")
    assert resonant_term(2, "circle") == E("(x^2+y^2)^2")
    with pytest.raises(ValueError):
        resonant_term(2, "square")
