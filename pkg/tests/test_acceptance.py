"""Acceptance criteria 1-10, each at its stated tolerance and time budget.

Every test records a ``PASS criterion k`` / ``FAIL criterion k`` line, shown in
the ``acceptance`` section of the pytest summary.
"""
import io
import time

import pytest
import sympy

from nilcenter.cli import main
from nilcenter.cmanifold import cm_jet, restrict
from nilcenter.ijm import Seed, obstructions, reduce_chain, self_check, solve_kernel_unknowns
from nilcenter.lyapunov import build_family, eta_quantities
from nilcenter.numeric import bind, return_map
from nilcenter.planar import verify_iif
from nilcenter.sysio import parse_assignments, parse_expression

import test_field_homological as homological_props
import test_ijm as ijm_props
import test_planar_cm as cm_props
import test_sysio as sysio_props
from conftest import reduces_to_zero, sym_equal, to_sympy

JERK_G = sympy.symbols("g300 g011 g120 g030")


class Clock:
    def __enter__(self):
        self.t = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t


def all_zero(run, upto):
    return all(L.is_zero() for L in run.Lambda[:upto])


def test_criterion_1_monodromy(criterion):
    out = io.StringIO()
    with Clock() as c:
        code = main(["check-monodromy", "@abd_family"], out, io.StringIO())
    ok = code == 0 and "verdict: monodromic, n=2, beta>n-1" in out.getvalue() and c.elapsed < 1
    criterion(1, ok, f"abd-family monodromic, n=2, beta>n-1 ({c.elapsed:.2f}s < 1s)")


def test_criterion_2_seed_z(criterion, system):
    X = system("abd_family")
    with Clock() as c:
        run = solve_kernel_unknowns(obstructions(X, Seed.Z, 6))
    ok = (all_zero(run, 4) and sym_equal(run.lam(5), "-4*d*(2*a-b)")
          and sym_equal(run.lam(6), "-a*d") and self_check(X, run) and c.elapsed < 10)
    criterion(2, ok, f"Lambda5 = -4d(2a-b), Lambda6 = -ad ({c.elapsed:.2f}s < 10s)")


def test_criterion_3_seed_zy2(criterion, system):
    X = system("abd_family")
    with Clock() as c:
        run = solve_kernel_unknowns(obstructions(X, Seed.ZY2, 10))
    ok = (all_zero(run, 8) and sym_equal(run.lam(9), "-12*d*(2*a-b)/5")
          and sym_equal(run.lam(10), "-2*d*(9*a-2*b)/15") and c.elapsed < 60)
    criterion(3, ok, f"Lambda9 = -12d(2a-b)/5, Lambda10 = -2d(9a-2b)/15 ({c.elapsed:.2f}s < 60s)")


def test_criterion_4_jerk(criterion, system):
    X = system("jerk")
    checks = []
    with Clock() as c:
        raw = obstructions(X, Seed.Z, 7)
        checks.append(sym_equal(raw.lam(3), "3*g300-g210"))
        run = reduce_chain(raw, ["g210", "v011"])
        checks.append(sym_equal(run.lam(5), "3*g300*(g030-g120+2*g300)"))
        ideal = [to_sympy(run.lam(5))]
        checks.append(reduces_to_zero(to_sympy(run.lam(6)) - sympy.sympify("g300*g011*(g120+3*g300)"),
                                      ideal, JERK_G))
        checks.append(reduces_to_zero(to_sympy(run.lam(7)) + sympy.sympify("4*g300**2*g011**2"),
                                      ideal, JERK_G))

        raw = obstructions(X, Seed.ZY2, 11)
        checks.append(all_zero(raw, 6) and sym_equal(raw.lam(7), "g300*(g210-3*g300)/6"))
        run = solve_kernel_unknowns(reduce_chain(raw, ["g210"]))
        checks.append(all_zero(run, 8))
        checks.append(sym_equal(run.lam(9), "-9*g300^2*(g030+2*g300-g120)/10"))
        checks.append(sym_equal(run.lam(10), "-g011*g300^2*(3*g300+g120)/3"))
        ideal = [to_sympy(run.lam(9)), to_sympy(run.lam(10))]
        checks.append(reduces_to_zero(to_sympy(run.lam(11)) - sympy.sympify("10*g011**2*g300**3/7"),
                                      ideal, JERK_G))
        checks.append(self_check(X, run))
    ok = all(checks) and c.elapsed < 120
    criterion(4, ok, f"jerk obstructions, both seeds, {sum(checks)}/{len(checks)} forms "
                     f"({c.elapsed:.2f}s < 120s)")


MU_L4 = "-2*mu^2*v011 - 2*mu*a101*c110 + 4*mu*a101*c200 - 4*a002*c200^2 - 2*v011"
MU_L5 = ("-1/3*c020*mu^2*a101 + 2*c110*mu^2*a101 - 24*c200*mu^2*a101 - 2*c110*a002*mu*c200"
         " - 2*c200*mu*a101*v011 - c110*c200*a101^2 - 8*a101*c110 + 16*a101*c200"
         " + 3*c200^2*a101^2 - 2*c020*a101")
MU_L8 = ("mu/3*(mu^2+5)*a101*c110 + 2*mu/3*(mu^2+1)*c200*a101 - 2/3*(mu^2+3)*a002*c200^2"
         " - 2/5*mu*a101^2*c200^2 - 1/3*(mu^4+10*mu^2+9)*v031")
MU_L9 = ("-(54*mu^4+222*mu^2+168)*a101*c110/35 + (48*mu^2+48)*c200*a101/5"
         " - (27*mu^4+129*mu^2+42)*a101*c020/35 + mu/35*(11*mu^2-29)*c200*a101*v031"
         " + 72*mu*(mu^2+1)*a002*c200^2/35 + 6*mu*(9*mu^2+29)*c200*a002*c110/35"
         " + (34*mu^2+35)*a101^2*c110*c200/35 + (57*mu^2-105)*a101^2*c200^2/35"
         " - 6*mu/5*a101*a002*c200^3")


def test_criterion_5_mu_system(criterion, system):
    X = system("mu_system")
    with Clock() as c:
        z = obstructions(X, Seed.Z, 10)
        zy2 = obstructions(X, Seed.ZY2, 15)
    checks = [
        z.lam(1).is_zero(),
        sym_equal(z.lam(2), "-4*mu"),
        sym_equal(z.lam(3), "-3*a101*c200"),
        sym_equal(z.lam(4), MU_L4),
        sym_equal(z.lam(5), MU_L5),
        all_zero(zy2, 6),
        sym_equal(zy2.lam(7), "-c200*a101*(mu^2+5)/5"),
        sym_equal(zy2.lam(8), MU_L8),
        sym_equal(zy2.lam(9), MU_L9),
        len(zy2.Lambda) == 15,
    ]
    ok = all(checks) and c.elapsed < 300
    criterion(5, ok, f"mu-system seed z Lambda2..5, seed zy2 Lambda7..9 at degree 15 "
                     f"({c.elapsed:.2f}s < 300s)")


REFERENCE_ETA1 = "-4*eps^2*d*(a-b)/(12*eps+3)"


def _eta1(system):
    with Clock() as c:
        eta = eta_quantities(build_family(system("abd_family")), 1).eta(1)
    return eta, c.elapsed


def test_criterion_6_eta1_up_to_scalar(criterion, system):
    # documented fallback: equality up to a nonzero rational scalar, here -1
    eta, elapsed = _eta1(system)
    ratio = sympy.cancel(to_sympy(eta) / sympy.sympify(REFERENCE_ETA1.replace("^", "**")))
    ok = ratio.is_Rational and ratio != 0 and elapsed < 10
    criterion(6, ok, f"eta1 = ({ratio}) * reference value, fallback match; exact sign "
                     f"differs, see xfail ({elapsed:.2f}s < 10s)")


@pytest.mark.xfail(strict=True, reason="the reference eta1 carries the opposite sign; an "
                   "independent dense solve confirms the computed sign")
def test_criterion_6_eta1_exact(system):
    eta, _ = _eta1(system)
    assert sym_equal(eta, REFERENCE_ETA1)


CENTER_CONDITIONS = [
    ("abd_family", "a=0,b=0", (Seed.Z, Seed.ZY2), 12),
    ("abd_family", "d=0", (Seed.Z, Seed.ZY2), 12),
    ("jerk", "g030=g120-2*g300,g011=0,g210=3*g300", (Seed.Z, Seed.ZY2), 12),
    ("mu_system", "a101=0,a002=0", (Seed.ZY2,), 11),
    ("mu_system", "c200=0,c110=0,c020=0", (Seed.ZY2,), 11),
    # seed z carries Lambda2 = -4*mu and needs mu = 0 as well
    ("mu_system", "mu=0,a101=0,a002=0", (Seed.Z, Seed.ZY2), 11),
    ("mu_system", "mu=0,c200=0,c110=0,c020=0", (Seed.Z, Seed.ZY2), 11),
]


def test_criterion_7_center_conditions(criterion, system):
    bad = []
    for name, cond, seeds, N in CENTER_CONDITIONS:
        X = system(name).substitute(parse_assignments(cond))
        for seed in seeds:
            run = solve_kernel_unknowns(obstructions(X, seed, N))
            if len(run.Lambda) != N or not all_zero(run, N) or not self_check(X, run):
                bad.append(f"{name}[{cond}] seed {seed.value}")
    criterion(7, not bad, "center conditions annihilate every Lambda through 12 (11 for mu)"
              + (f"; failing: {bad}" if bad else ""))


def test_criterion_8_planar_iif(criterion, system):
    X = system("jerk").substitute(cm_props.JERK_CENTER)
    S = restrict(X, cm_jet(X, 7), 8)
    r = verify_iif(S, parse_expression(cm_props.JERK_V), 8)
    criterion(8, r.is_zero(), "jerk v(x, y) is an inverse integrating factor through degree 8")


def test_criterion_9_property_suites(criterion):
    suites = {
        "homological identities, degrees 2..8": homological_props.test_solve_identity_and_linearity,
        "ijm self_check, 20 random cubics at degree 8": ijm_props.test_self_check_on_random_cubics,
        "cm_jet residual, same corpus": cm_props.test_cm_jet_residual_vanishes,
        "coefficient round trip, 500 values": sysio_props.test_coefficient_round_trip,
        "phase round trip, 500 values": sysio_props.test_phase_round_trip,
    }
    failed = []
    for label, prop in suites.items():
        try:
            prop()
        except Exception as exc:  # noqa: BLE001 - report and fail below
            failed.append(f"{label}: {type(exc).__name__}")
    criterion(9, not failed, "property suites green" + (f"; failing: {failed}" if failed else ""))


def _planar(system, name):
    X = system(name)
    return restrict(X, cm_jet(X, 7), 8)


def test_criterion_10_numeric(criterion, system):
    with Clock() as c:
        ham = return_map(bind(_planar(system, "hamiltonian")), 0.05, tol=1e-12)
        focus = bind(_planar(system, "jerk"),
                     parse_assignments("g300=-1,g210=0,g120=0,g030=0,g011=0"))
        ds = [return_map(focus, x0).displacement for x0 in (0.02, 0.04, 0.06)]
    sign_definite = all(d > 0 for d in ds) or all(d < 0 for d in ds)
    ok = abs(ham.displacement) < 1e-8 and sign_definite and c.elapsed < 30
    criterion(10, ok, f"hamiltonian |d| = {abs(ham.displacement):.1e} < 1e-8, jerk focus "
                      f"sign-definite ({c.elapsed:.2f}s < 30s)")
