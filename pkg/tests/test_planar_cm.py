import pytest
from hypothesis import given, settings, strategies as st

from nilcenter.algebra import CoefFrac, PhasePoly, linear_field, substitute
from nilcenter.cmanifold import (ManifoldError, cm_jet, factor_restrict, formal_cm_check,
                                 invariance_defect, restrict)
from nilcenter.ijm import Seed, obstructions, solve_kernel_unknowns
from nilcenter.planar import (PlanarField, PlanarSeed, planar_obstructions, planar_self_check,
                              quasi_components, verify_iif)
from nilcenter.sysio import parse_assignments, parse_expression as E

from conftest import sym_equal
from test_ijm import cubic_fields

HAM = PlanarField(E("-2*x*y"), E("-2*x^3 + y^2"))
JERK_CENTER = parse_assignments("g030=g120-2*g300, g011=0, g210=3*g300")
JERK_V = ("1 + (g120-3*g300)*x^2 + 2*(g120-3*g300)*x*y"
          " + (g120-3*g300)*(g120-2*g300)*y^2/g300")


# -- planar ----------------------------------------------------------------------

def test_planar_field_validation():
    with pytest.raises(ValueError):
        PlanarField(E("x*z"), PhasePoly())
    with pytest.raises(ValueError):
        PlanarField(E("x"), PhasePoly())


def test_verify_iif_examples():
    assert verify_iif(HAM, E("1"), 10).is_zero()
    assert verify_iif(PlanarField(PhasePoly(), PhasePoly()), E("x"), 3) == E("y").with_n(3)


def test_planar_obstructions_examples(system):
    run = planar_obstructions(HAM, PlanarSeed.ONE, 10)
    assert planar_self_check(HAM, run)
    run = solve_kernel_unknowns(run)
    assert all(L.is_zero() for L in run.Lambda)
    assert planar_self_check(HAM, run)
    flat = PlanarField(PhasePoly(), PhasePoly())
    assert all(L.is_zero() for L in planar_obstructions(flat, "1", 8).Lambda)
    X = system("jerk")
    S = restrict(X, cm_jet(X, 6), 7)
    run = planar_obstructions(S, PlanarSeed.ONE, 6)
    first = run.Lambda[run.first_nonzero() - 1]
    assert sym_equal(first, "3*g300 - g210")
    assert planar_self_check(S, run)


def test_planar_seed_y2(system):
    S = restrict(system("abd_family"), cm_jet(system("abd_family"), 8), 9)
    for seed in PlanarSeed:
        run = planar_obstructions(S, seed, 8)
        assert planar_self_check(S, run)


def test_jerk_reference_factor_is_inverse_integrating_factor(system):
    X = system("jerk").substitute(JERK_CENTER)
    S = restrict(X, cm_jet(X, 8), 8)
    v = substitute(E(JERK_V), JERK_CENTER)
    assert verify_iif(S, v, 8).is_zero()


def test_quasi_components():
    d = quasi_components(E("y^2 + x^4"), 1, 2)
    assert list(d.components) == [4]
    assert list(quasi_components(E("y + x^2"), 1, 2).components) == [2]
    d = quasi_components(E("x^2 + y^2"), 1, 2)
    assert d.components == {2: E("x^2"), 4: E("y^2")}
    with pytest.raises(ValueError):
        quasi_components(E("x"), 0, 1)


@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5), st.integers(-3, 3)), max_size=8),
       st.integers(1, 4), st.integers(1, 4))
def test_quasi_recomposition(terms, t1, t2):
    p = PhasePoly({(i, j, 0): CoefFrac.const(c) for i, j, c in terms if c})
    d = quasi_components(p, t1, t2)
    assert d.recompose() == p
    for k, comp in d.components.items():
        assert all(t1 * i + t2 * j == k for i, j, _ in comp.terms)


# -- center manifold ----------------------------------------------------------------

def test_cm_jet_examples(system):
    X = system("abd_family")
    assert cm_jet(X, 2).h == E("d*x*y - d*y^2").with_n(2)
    assert cm_jet(X.substitute({"d": 0}), 8).h.is_zero()
    assert cm_jet(linear_field(3), 6).h.is_zero()


def test_restrict_examples(system):
    X = system("abd_family").substitute({"d": 0})
    S = restrict(X, cm_jet(X, 6), 6)
    assert (S.P, S.Q) == (E("-2*x*y"), E("-2*x^3 + y^2"))
    J = system("jerk").substitute({"g011": 0})
    S = restrict(J, cm_jet(J, 6), 6)
    assert S.Q == E("g300*x^3 + g210*x^2*y + g120*x*y^2 + g030*y^3")
    assert S.P == -S.Q
    L = restrict(linear_field(), cm_jet(linear_field(), 3), 4)
    assert L.P.is_zero() and L.Q.is_zero()


def test_restrict_needs_enough_jet(system):
    X = system("abd_family")
    with pytest.raises(ValueError):
        restrict(X, cm_jet(X, 2), 6)


def test_factor_restrict_examples(system):
    zero = PhasePoly()
    assert factor_restrict(E("z"), zero, 5) == E("1").with_n(4)
    assert factor_restrict(E("z*(1+y)"), zero, 5) == E("1+y").with_n(4)
    h = cm_jet(system("abd_family"), 6)
    hp = PhasePoly(h.h.terms)
    V = (E("z") - hp) * E("1+x")
    assert factor_restrict(V, h, 6) == E("1+x").with_n(5)
    with pytest.raises(ManifoldError, match="does not vanish"):
        factor_restrict(E("z + x^2"), zero, 4)


def test_formal_cm_check_examples(system):
    X = system("abd_family").substitute({"d": 0})
    r = formal_cm_check(X, E("z"), 6)
    assert r.ok and r.K == E("-1").with_n(5)
    Y = system("abd_family")
    h = cm_jet(Y, 8)
    assert formal_cm_check(Y, E("z") - PhasePoly(h.h.terms), 8).ok
    bad = formal_cm_check(Y, E("z"), 4)
    assert not bad.ok and bad.failed_degree == 2
    with pytest.raises(ManifoldError, match="gradient"):
        formal_cm_check(Y, E("x"), 4)


@settings(max_examples=20)
@given(cubic_fields())
def test_cm_jet_residual_vanishes(X):
    J = cm_jet(X, 8)
    defect = invariance_defect(X, J.h, 8)
    assert defect.is_zero()


@settings(max_examples=10)
@given(cubic_fields(), st.lists(st.integers(-2, 2), min_size=3, max_size=3))
def test_factor_restrict_round_trip(X, cs):
    J = cm_jet(X, 6)
    W = PhasePoly.const(1) + PhasePoly.monomial(1, 0, 0, cs[0]) + PhasePoly.monomial(0, 1, 0, cs[1]) \
        + PhasePoly.monomial(1, 1, 0, cs[2])
    V = (E("z") - PhasePoly(J.h.terms)) * W
    assert factor_restrict(V, J, 6) == W.with_n(5)


def test_3d_and_planar_obstructions_agree_when_decoupled(system):
    X = system("hamiltonian")
    run3 = solve_kernel_unknowns(obstructions(X, Seed.Z, 8))
    run2 = solve_kernel_unknowns(
        planar_obstructions(restrict(X, cm_jet(X, 8), 9), PlanarSeed.ONE, 8))
    assert all(L.is_zero() for L in run3.Lambda + run2.Lambda)
