import math

import pytest

from nilcenter.cli import bundled
from nilcenter.cmanifold import cm_jet, restrict
from nilcenter.numeric import (CENTER, INCONCLUSIVE, OK, STABLE, UNSTABLE, BindingError,
                               BoundPlanar, bind, classify, return_map)
from nilcenter.sysio import load_system, parse_assignments

X0S = (0.02, 0.04, 0.06)


def planar(name, degree=8):
    X = load_system(bundled(name))
    return restrict(X, cm_jet(X, degree - 1), degree)


def jerk(values):
    return bind(planar("jerk"), parse_assignments(values))


def test_bind_requires_every_parameter():
    with pytest.raises(BindingError, match="g011"):
        bind(planar("jerk"), parse_assignments("g300=-1,g210=0,g120=0,g030=0"))
    B = jerk("g300=-1,g210=0,g120=0,g030=0,g011=0")
    assert all(isinstance(c, float) for _, _, c in B.P + B.Q)


def test_hamiltonian_displacement_shrinks_with_tolerance():
    S = bind(planar("hamiltonian"))
    coarse = return_map(S, 0.05, tol=1e-9)
    fine = return_map(S, 0.05, tol=1e-12)
    assert coarse.status == fine.status == OK
    assert abs(fine.displacement) < 1e-8
    assert abs(fine.displacement) <= abs(coarse.displacement) + 1e-14


def test_linear_center():
    S = BoundPlanar((), ((1, 0, -1.0),), "rotation")
    r = return_map(S, 0.3)
    assert r.status == OK and abs(r.displacement) < 1e-10
    assert math.isclose(r.x_return, 0.3, abs_tol=1e-10)


def test_jerk_focus_keeps_its_sign():
    S = jerk("g300=-1,g210=0,g120=0,g030=0,g011=0")
    ds = [return_map(S, x0).displacement for x0 in X0S]
    assert all(d > 0 for d in ds) or all(d < 0 for d in ds)


@pytest.mark.parametrize("name", ["hamiltonian", "abd_family"])
def test_centers_classify_as_center(name):
    S = planar(name)
    params = "a=1,b=2,d=0" if name == "abd_family" else ""
    verdict, results = classify(bind(S, parse_assignments(params)), X0S)
    assert verdict == CENTER, results


def test_jerk_center_conditions_give_center():
    S = jerk("g300=-1,g210=-3,g120=0,g030=2,g011=0")
    assert classify(S, X0S)[0] == CENTER


def test_jerk_focus_classification_is_stable_under_x0_perturbation():
    S = jerk("g300=-1,g210=0,g120=0,g030=0,g011=0")
    base = classify(S, X0S)[0]
    assert base in (STABLE, UNSTABLE)
    for f in (0.9, 1.1):
        assert classify(S, [f * x for x in X0S])[0] == base


def test_mixed_signs_are_inconclusive():
    # a stable focus whose displacement is below the center threshold at one point
    S = BoundPlanar((), ((1, 0, -1.0), (2, 1, -1.0)))
    verdict, _ = classify(S, [1e-7, 0.1, 0.2], tol=1e-12)
    assert verdict == INCONCLUSIVE


def test_invalid_starting_points():
    S = bind(planar("hamiltonian"))
    with pytest.raises(ValueError):
        classify(S, [0.01, 0.02])
    with pytest.raises(ValueError):
        return_map(S, 1.5)
    with pytest.raises(ValueError):
        return_map(S, -0.1)
