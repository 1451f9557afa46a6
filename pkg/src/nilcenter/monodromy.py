"""Andreev data of planar nilpotent jets and the Andreev-number-2 test in 3D.

For ``x' = y + P``, ``y' = Q`` let ``y = F(x)`` solve ``y + P(x, y) = 0`` and
put ``f(x) = Q(x, F(x)) = a x^alpha + ...`` and
``Phi(x) = div(x, F(x)) = b x^beta + ...``.  The origin is monodromic exactly
when ``a < 0``, ``alpha = 2n - 1`` and either ``beta > n - 1`` (or Phi
vanishes identically) or ``beta = n - 1`` with ``b^2 + 4 a n < 0``.

For a 3D field the restriction to any center manifold has Andreev number 2
iff ``b200 = 0`` and ``b101 c200 / lam + (2 a200 - b110)^2 / 8 + b300 < 0``;
``2 a200 + b110`` is the coefficient b of Phi, so it separates the two
monodromy cases.

Applied to the jerk family (``b300 = g300``, the other named coefficients
zero) the inequality is ``g300 < 0``.  Some write-ups of that example state
``g300 > 0``; this module reports the inequality as derived and does not flip
the sign.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra.coeffrac import CoefFrac
from .algebra.field import VectorField3
from .algebra.phasepoly import PhasePoly
from .planar import PlanarField

MONODROMIC_I = "monodromic-(i)"
MONODROMIC_II = "monodromic-(ii)"
NOT_MONODROMIC = "not-monodromic"
UNDECIDED = "undecided-symbolic"


class InconclusiveError(ValueError):
    """The jet of f vanishes through the requested degree."""


def _x_only(p: PhasePoly) -> PhasePoly:
    return p.compose({"y": PhasePoly(), "z": PhasePoly()}, p.N)


def implicit_curve(planar: PlanarField, N: int) -> PhasePoly:
    """Jet of F with ``F + P(x, F) = O(x^(N+1))``, by iterating ``F <- -P(x, F)``."""
    if planar.N is not None and planar.N < N:
        raise ValueError(f"planar jet known to degree {planar.N}, {N} requested")
    P = planar.P.with_n(N) if planar.P.N is None else planar.P.truncate(N)
    x = PhasePoly.var("x")
    F = PhasePoly(None, N)
    # each pass fixes at least one more order since P has no linear terms
    for _ in range(N):
        new = (-P.compose({"x": x, "y": F}, N)).with_n(N)
        if new == F:
            break
        F = new
    return _x_only(F).with_n(N)


def _leading(p: PhasePoly) -> tuple[int, CoefFrac] | None:
    for (i, _, _), c in sorted(p.terms.items()):
        if c:
            return i, c
    return None


@dataclass(frozen=True)
class AndreevData:
    F_jet: PhasePoly
    f_jet: PhasePoly
    Phi_jet: PhasePoly
    a: CoefFrac
    alpha: int
    b: CoefFrac | None
    beta: int | None          # None: Phi vanishes through Phi_jet.N
    n: int | None
    verdict: str
    conditions: tuple[str, ...] = ()
    monodromic: bool | None = None   # known even when the case (i)/(ii) is not

    @property
    def beta_infinite(self) -> bool:
        return self.beta is None


def _sign(c: CoefFrac) -> int | None:
    if not c.is_constant():
        return None
    v = c.constant_value()
    return (v > 0) - (v < 0)


def andreev_data(planar: PlanarField, N: int) -> AndreevData:
    """Andreev data from jets through degree N (Phi is known through N-1)."""
    from .sysio import format_coef

    F = implicit_curve(planar, N)
    x = PhasePoly.var("x")
    on_curve = {"x": x, "y": F}
    Q = planar.Q.with_n(N) if planar.Q.N is None else planar.Q.truncate(N)
    f = Q.compose(on_curve, N).with_n(N)
    div = planar.divergence()
    Phi = div.with_n(N - 1).compose(on_curve, N - 1).with_n(N - 1)
    lead_f = _leading(f)
    if lead_f is None:
        raise InconclusiveError(f"inconclusive at this truncation: f vanishes through degree {N}")
    alpha, a = lead_f
    lead_phi = _leading(Phi)
    beta, b = (lead_phi if lead_phi is not None else (None, None))

    def done(verdict, conds=(), n=None, mono=None):
        return AndreevData(F, f, Phi, a, alpha, b, beta, n, verdict, tuple(conds), mono)

    if alpha % 2 == 0:
        return done(NOT_MONODROMIC, (f"alpha={alpha} is even",), mono=False)
    n = (alpha + 1) // 2
    sa = _sign(a)
    if sa is not None and sa > 0:
        return done(NOT_MONODROMIC, ("a > 0",), n, False)
    conds = [] if sa is not None else [f"{format_coef(a)} < 0"]

    if beta is None or beta > n - 1:
        # a vanishing symbolic b only moves beta up, which keeps case (i)
        if conds:
            return done(UNDECIDED, conds, n)
        return done(MONODROMIC_I, (), n, True)
    if beta < n - 1:
        if b.is_constant():
            return done(NOT_MONODROMIC, (f"beta={beta} < n-1",), n, False)
        return done(UNDECIDED, conds + [f"{format_coef(b)} = 0"], n)
    disc = b * b + a * 4 * n
    sd = _sign(disc)
    if sd is None:
        return done(UNDECIDED, conds + [f"{format_coef(disc)} < 0"], n)
    if sd < 0:
        if b.is_constant():
            return done(MONODROMIC_II if not conds else UNDECIDED, conds, n,
                        None if conds else True)
        # b = 0 lands in case (i), b != 0 in case (ii): monodromic either way
        note = f"case (i) iff {format_coef(b)} = 0, case (ii) otherwise"
        return done(UNDECIDED, conds + [note], n, None if conds else True)
    if b.is_constant():
        return done(NOT_MONODROMIC, ("b^2 + 4 a n >= 0",), n, False)
    return done(UNDECIDED, conds + [f"{format_coef(b)} = 0"], n)


BETA_EQ = "beta=n-1"
BETA_GT = "beta>n-1"
BETA_UNDECIDED = "undecided"


@dataclass(frozen=True)
class MonodromyCondition3D:
    b200: CoefFrac
    inequality: CoefFrac          # monodromic with n = 2 iff b200 = 0 and this is < 0
    beta_coefficient: CoefFrac    # 2 a200 + b110
    beta_case: str
    verdict: str                  # monodromic, not-andreev-2, undecided-symbolic

    @property
    def b200_zero(self) -> bool | None:
        if self.b200.is_zero():
            return True
        return False if self.b200.is_constant() else None


def andreev2_criterion_3d(X: VectorField3) -> MonodromyCondition3D:
    a = lambda i, j, k: X.coefficient("a", i, j, k)  # noqa: E731
    b = lambda i, j, k: X.coefficient("b", i, j, k)  # noqa: E731
    c = lambda i, j, k: X.coefficient("c", i, j, k)  # noqa: E731
    b200 = b(2, 0, 0)
    t = a(2, 0, 0) * 2 - b(1, 1, 0)
    ineq = b(1, 0, 1) * c(2, 0, 0) / X.lam + t * t / 8 + b(3, 0, 0)
    s = a(2, 0, 0) * 2 + b(1, 1, 0)
    if s.is_zero():
        beta_case = BETA_GT
    elif s.is_constant():
        beta_case = BETA_EQ
    else:
        beta_case = BETA_UNDECIDED
    if b200.is_constant() and not b200.is_zero():
        verdict = "not-andreev-2"
    elif not b200.is_constant():
        verdict = UNDECIDED
    else:
        si = _sign(ineq)
        if si is None:
            verdict = UNDECIDED
        elif si < 0:
            verdict = "monodromic"
        else:
            verdict = "not-andreev-2"
    return MonodromyCondition3D(b200, ineq, s, beta_case, verdict)


def seeds_for(beta_case: str) -> tuple[str, ...]:
    """Admissible multiplier seeds for a monodromy case."""
    if beta_case == BETA_EQ:
        return ("zy2",)
    return ("z", "zy2")
