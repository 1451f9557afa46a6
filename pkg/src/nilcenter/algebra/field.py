"""Three-dimensional polynomial vector fields with linear part (y, 0, -lambda z)."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import symbols as sy
from .coeffrac import CoefFrac
from .parampoly import ParamPoly
from .phasepoly import PhasePoly


class TruncationError(ValueError):
    """A jet is not known to the degree an operation needs."""


class SubstitutionError(ZeroDivisionError):
    """A substitution annihilated a stored denominator."""


@dataclass(frozen=True)
class VectorField3:
    """``x' = y + P, y' = Q, z' = -lam*z + R`` with P, Q, R of order >= 2."""

    P: PhasePoly
    Q: PhasePoly
    R: PhasePoly
    lam: CoefFrac
    params: tuple[str, ...] = ()
    name: str = ""
    _homog: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.lam.is_zero():
            raise ValueError("lambda must be nonzero")
        for label, p in (("P", self.P), ("Q", self.Q), ("R", self.R)):
            o = p.order()
            if o is not None and o < 2:
                raise ValueError(f"{label} has terms of degree < 2")

    @property
    def degree(self) -> int:
        return max(self.P.degree(), self.Q.degree(), self.R.degree(), 1)

    def components(self, n: int) -> tuple[PhasePoly, PhasePoly, PhasePoly]:
        """Homogeneous degree-n parts of (P, Q, R)."""
        key = ("pqr", n)
        if key not in self._homog:
            self._homog[key] = (self.P.homogeneous(n), self.Q.homogeneous(n),
                                self.R.homogeneous(n))
        return self._homog[key]

    def nonlinear_divergence(self) -> PhasePoly:
        key = "div"
        if key not in self._homog:
            self._homog[key] = self.P.diff("x") + self.Q.diff("y") + self.R.diff("z")
        return self._homog[key]

    def full(self) -> tuple[PhasePoly, PhasePoly, PhasePoly]:
        """Right-hand sides including the linear part."""
        return (PhasePoly.var("y") + self.P, self.Q,
                PhasePoly.monomial(0, 0, 1, -self.lam) + self.R)

    def coefficient(self, which: str, i: int, j: int, k: int) -> CoefFrac:
        """Coefficient ``a_ijk`` / ``b_ijk`` / ``c_ijk`` of the nonlinear parts."""
        p = {"a": self.P, "b": self.Q, "c": self.R}[which]
        return p.coeff(i, j, k)

    def slots(self) -> set[int]:
        out = self.P.coefficient_slots() | self.Q.coefficient_slots()
        out |= self.R.coefficient_slots() | self.lam.slots()
        return out

    def substitute(self, assignments: dict) -> "VectorField3":
        return VectorField3(substitute(self.P, assignments), substitute(self.Q, assignments),
                            substitute(self.R, assignments), substitute(self.lam, assignments),
                            self.params, self.name)

    def is_planar_decoupled(self) -> bool:
        """True when the first two components do not involve z."""
        return not self.P.depends_on("z") and not self.Q.depends_on("z")


def linear_field(lam=1) -> VectorField3:
    return VectorField3(PhasePoly(), PhasePoly(), PhasePoly(), CoefFrac.coerce(lam))


def _check_known(V: PhasePoly, N: int):
    if V.N is not None and V.N < N:
        raise TruncationError(f"jet known to degree {V.N}, {N} requested")


def lie_derivative(X: VectorField3, V: PhasePoly, N: int) -> PhasePoly:
    """``(y+P) V_x + Q V_y + (-lam z + R) V_z`` truncated at N."""
    _check_known(V, N)
    V = V.with_n(N)
    Vx, Vy, Vz = V.diff("x"), V.diff("y"), V.diff("z")
    # the linear part keeps degrees, the nonlinear part raises them by >= 1
    lin = PhasePoly.var("y").mul(Vx, N) + PhasePoly.monomial(0, 0, 1, -X.lam).mul(Vz, N)
    non = X.P.mul(Vx, N) + X.Q.mul(Vy, N) + X.R.mul(Vz, N)
    return (lin + non).with_n(N)


def divergence(X: VectorField3) -> PhasePoly:
    """``-lam + P_x + Q_y + R_z``, exact."""
    return PhasePoly.const(-X.lam) + X.nonlinear_divergence()


def ijm_residual(X: VectorField3, V: PhasePoly, N: int) -> PhasePoly:
    """``X V - V div X`` truncated at N."""
    _check_known(V, N)
    VN = V.with_n(N)
    return (lie_derivative(X, VN, N) - VN.mul(divergence(X), N)).with_n(N)


# -- substitution -----------------------------------------------------------

def _substitute_parampoly(p: ParamPoly, values: dict[int, CoefFrac]) -> CoefFrac:
    touched = set(values) & p.slots()
    if not touched:
        return CoefFrac(p)
    groups = p.split_by(touched)
    # common denominator: product of den_s^(max exponent of s)
    maxexp = {s: max(sy.exponent(m, s) for m in groups) for s in touched}
    den = ParamPoly.const(1)
    for s, e in maxexp.items():
        if not values[s].den.is_one():
            den = den * values[s].den ** e
    num_pows: dict[tuple[int, int], ParamPoly] = {}
    den_pows: dict[tuple[int, int], ParamPoly] = {}

    def npow(s, e):
        if (s, e) not in num_pows:
            num_pows[(s, e)] = values[s].num ** e
        return num_pows[(s, e)]

    def dpow(s, e):
        if (s, e) not in den_pows:
            den_pows[(s, e)] = values[s].den ** e
        return den_pows[(s, e)]

    num = ParamPoly()
    for mono, coeff in groups.items():
        term = coeff
        for s in touched:
            e = sy.exponent(mono, s)
            if e:
                term = term * npow(s, e)
            if not values[s].den.is_one() and maxexp[s] - e:
                term = term * dpow(s, maxexp[s] - e)
        num = num + term
    return CoefFrac(num, den)


def _resolve(assignments: dict) -> dict[int, CoefFrac]:
    out = {}
    for k, v in assignments.items():
        if k in sy.PHASE_NAMES:
            raise ValueError(f"cannot substitute phase variable {k!r}")
        out[sy.slot(k)] = CoefFrac.coerce(v)
    return out


def substitute_coef(c: CoefFrac, values: dict[int, CoefFrac]) -> CoefFrac:
    num = _substitute_parampoly(c.num, values)
    if c.den.is_one():
        return num
    den = _substitute_parampoly(c.den, values)
    if den.is_zero():
        from ..sysio import format_parampoly
        raise SubstitutionError(f"substitution annihilates denominator {format_parampoly(c.den)}")
    return num / den


def substitute(p, assignments: dict):
    """Substitute parameter symbols by coefficient-field values.

    Works on ParamPoly (returns CoefFrac), CoefFrac and PhasePoly.
    """
    values = _resolve(assignments)
    if isinstance(p, ParamPoly):
        return _substitute_parampoly(p, values)
    if isinstance(p, CoefFrac):
        return substitute_coef(p, values)
    if isinstance(p, PhasePoly):
        return PhasePoly({m: substitute_coef(c, values) for m, c in p.terms.items()}, p.N)
    if isinstance(p, VectorField3):
        return p.substitute(assignments)
    raise TypeError(f"cannot substitute into {type(p).__name__}")
