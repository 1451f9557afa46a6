"""Lyapunov quantities of the eps-perturbed family.

The nilpotent field is unfolded into

    x' = y + P + eps F1(x, y)
    y' = -eps x + Q + eps F2(x, y)
    z' = -lam z + R

whose linearization has a Hopf pair for eps > 0.  A formal
``H = eps x^2 + y^2 + H_3 + ...`` is built so that ``X_eps H`` only keeps
one resonant term per even degree.  The first possible such term has degree
4 (degree 2 is annihilated by the linear part), and ``eta[l]`` belongs to
degree ``2l + 2``.

The resonant term is a complement of the operator's range in the z-free
forms of that degree.  Two are offered: ``x^n`` (default) and
``(x^2 + y^2)^(n/2)``.  Both are transversal to the range, so the first
nonvanishing eta and the vanishing conditions agree; only the scalar
normalization of each eta differs.

At each homogeneous degree the linear part acts on ``x^j y^k z^l`` as
``j x^(j-1) y^(k+1) z^l - eps k x^(j+1) y^(k-1) z^l - lam l x^j y^k z^l``; the
system splits by the z-power l.  On the z-free block of even degree the
operator is singular (its kernel is a power of ``eps x^2 + y^2``); there the
``y^n`` coefficient of ``H_n`` is pinned to zero and the freed column carries
``eta``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .algebra import symbols as sy
from .algebra.coeffrac import CoefFrac
from .algebra.field import VectorField3
from .algebra.gcd import poly_gcd
from .algebra.parampoly import ParamPoly
from .algebra.phasepoly import PhasePoly

EPS = sy.EPSILON_NAME
COMPLEMENTS = ("xpow", "circle")


class SingularBlockError(ArithmeticError):
    """Elimination found no usable pivot in a degree block."""


class ExistentialError(ValueError):
    """A Lyapunov quantity still depends on perturbation unknowns."""


@dataclass(frozen=True)
class PerturbedFamily:
    base: VectorField3
    D: int
    mode: str
    F1: PhasePoly
    F2: PhasePoly
    unknowns: tuple[str, ...]

    @property
    def epsilon(self) -> CoefFrac:
        return CoefFrac.symbol(EPS)

    def nonlinear(self) -> tuple[PhasePoly, PhasePoly, PhasePoly]:
        e = self.epsilon
        return (self.base.P + self.F1.scale(e), self.base.Q + self.F2.scale(e), self.base.R)


def build_family(X: VectorField3, D: int = 2, mode: str = "zero") -> PerturbedFamily:
    """Attach ``eps F1`` to x' and ``-eps x + eps F2`` to y'.

    ``mode="zero"`` takes F1 = F2 = 0; ``mode="symbolic"`` uses unknowns
    ``gi_jk`` for ``2 <= j+k <= D``, without ``g1_02``.
    """
    if mode not in ("zero", "symbolic"):
        raise ValueError(f"unknown mode {mode!r} (use zero or symbolic)")
    sy.slot(EPS)
    F1: dict = {}
    F2: dict = {}
    names: list[str] = []
    if mode == "symbolic":
        if D > 9:
            raise ValueError("perturbation degree above 9 is not supported")
        for i, target in ((1, F1), (2, F2)):
            for d in range(2, D + 1):
                for j in range(d, -1, -1):
                    k = d - j
                    if i == 1 and (j, k) == (0, 2):
                        continue
                    name = sy.perturbation_symbol(i, j, k)
                    names.append(name)
                    target[(j, k, 0)] = CoefFrac.symbol(name)
    return PerturbedFamily(X, D, mode, PhasePoly(F1), PhasePoly(F2), tuple(names))


@dataclass(frozen=True)
class EtaList:
    etas: tuple[CoefFrac, ...]     # etas[l-1] sits in degree 2l+2
    H_jet: PhasePoly
    L: int
    residual_ok: bool
    complement: str = "xpow"

    def eta(self, l: int) -> CoefFrac:
        return self.etas[l - 1]


def resonant_term(m: int, complement: str = "xpow") -> PhasePoly:
    """The degree-2m form that carries eta."""
    if complement == "xpow":
        return PhasePoly.monomial(2 * m, 0, 0)
    if complement == "circle":
        return PhasePoly({(2 * i, 2 * (m - i), 0): comb(m, i) for i in range(m + 1)})
    raise ValueError(f"unknown complement {complement!r} (use xpow or circle)")


def _solve(rows: list[list[CoefFrac]], rhs: list[CoefFrac], degree: int) -> list[CoefFrac]:
    """Gaussian elimination over the coefficient field (square systems)."""
    n = len(rows)
    A = [r[:] + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not A[r][col].is_zero()), None)
        if piv is None:
            raise SingularBlockError(f"singular block at degree {degree}")
        A[col], A[piv] = A[piv], A[col]
        inv = A[col][col].inverse()
        pr = [c * inv if c else c for c in A[col]]
        A[col] = pr
        for r in range(n):
            if r != col and not A[r][col].is_zero():
                f = A[r][col]
                A[r] = [a - f * p if p else a for a, p in zip(A[r], pr)]
    return [A[r][n] for r in range(n)]


def _solve_stratum(F: PhasePoly, n: int, l: int, lam: CoefFrac, eps: CoefFrac,
                   complement: str):
    """Coefficients of ``H_n`` on z^l (and eta for the resonant block)."""
    d = n - l
    resonant = l == 0 and d % 2 == 0
    # unknown columns: h_j for x^j y^(d-j), j = 0..d; resonant block swaps h_0 for eta
    size = d + 1
    rows = [[CoefFrac() for _ in range(size)] for _ in range(size)]
    for j in range(size):
        if resonant and j == 0:
            continue
        k = d - j
        if j >= 1:
            rows[j - 1][j] = CoefFrac.const(j)
        if k >= 1:
            rows[j + 1][j] = -eps * k
        if l:
            rows[j][j] = rows[j][j] - lam * l
    if resonant:
        for (j, _, _), c in resonant_term(d // 2, complement).terms.items():
            rows[j][0] = -c
    rhs = [-F.coeff(j, d - j, l) for j in range(size)]
    if all(c.is_zero() for c in rhs):
        sol = [CoefFrac() for _ in range(size)]
    else:
        sol = _solve(rows, rhs, n)
    eta = None
    if resonant:
        eta, sol[0] = sol[0], CoefFrac()
    poly = PhasePoly({(j, d - j, l): c for j, c in enumerate(sol) if c})
    return poly, eta


def eta_quantities(fam: PerturbedFamily, L: int, complement: str = "xpow") -> EtaList:
    """``eta[1..L]`` together with the jet of H through degree 2L+2."""
    if L < 0:
        raise ValueError("order must be >= 0")
    if complement not in COMPLEMENTS:
        raise ValueError(f"unknown complement {complement!r} (use xpow or circle)")
    top = 2 * L + 2
    eps = fam.epsilon
    lam = fam.base.lam
    P, Q, R = (p.components() for p in fam.nonlinear())
    H: dict[int, PhasePoly] = {2: PhasePoly({(2, 0, 0): eps, (0, 2, 0): CoefFrac.const(1)})}
    dH = {2: (H[2].diff("x"), H[2].diff("y"), H[2].diff("z"))}
    etas: list[CoefFrac] = []
    for n in range(3, top + 1):
        F = PhasePoly()
        for k in range(2, n):
            m = n - k + 1
            Hx, Hy, Hz = dH[k]
            if m in P:
                F = F + P[m].mul(Hx)
            if m in Q:
                F = F + Q[m].mul(Hy)
            if m in R:
                F = F + R[m].mul(Hz)
        Hn = PhasePoly()
        for l in range(0, n + 1):
            part, eta = _solve_stratum(F, n, l, lam, eps, complement)
            Hn = Hn + part
            if eta is not None:
                etas.append(eta)
        H[n] = Hn
        dH[n] = (Hn.diff("x"), Hn.diff("y"), Hn.diff("z"))
    jet = PhasePoly()
    for p in H.values():
        jet = jet + p
    jet = jet.with_n(top)
    ok = _residual(fam, jet, etas, top, complement).is_zero()
    if not ok:
        raise AssertionError("Lyapunov residual self-check failed")
    return EtaList(tuple(etas), jet, L, ok, complement)


def _residual(fam: PerturbedFamily, H: PhasePoly, etas, N: int, complement: str) -> PhasePoly:
    eps = fam.epsilon
    P, Q, R = fam.nonlinear()
    x1 = PhasePoly.var("y") + P
    x2 = PhasePoly.monomial(1, 0, 0, -eps) + Q
    x3 = PhasePoly.monomial(0, 0, 1, -fam.base.lam) + R
    XH = x1.mul(H.diff("x"), N) + x2.mul(H.diff("y"), N) + x3.mul(H.diff("z"), N)
    for l, e in enumerate(etas, 1):
        XH = XH - resonant_term(l + 1, complement).scale(e)
    return XH.with_n(N)


def lyapunov_residual(fam: PerturbedFamily, result: EtaList) -> PhasePoly:
    """``X_eps H`` minus the resonant terms, through degree 2L+2."""
    return _residual(fam, result.H_jet, result.etas, 2 * result.L + 2, result.complement)


def _normalize_factor(p: ParamPoly) -> ParamPoly:
    p = p.scale(1 / p.content())
    _, c = p.leading()
    return -p if c < 0 else p


def eta_necessary_factors(etas: EtaList | list[CoefFrac]) -> list[ParamPoly]:
    """Factors of the eta numerators that do not involve eps.

    They must vanish if the family has a center for every eps > 0.  The
    monomial content is split into single symbols (lambda is dropped, it is
    nonzero by hypothesis); the rest is returned as one primitive factor.
    """
    values = etas.etas if isinstance(etas, EtaList) else list(etas)
    out: list[ParamPoly] = []
    for eta in values:
        if eta.is_zero():
            continue
        num = eta.num
        if any(sy.is_perturbation_symbol(v) for v in num.variables()):
            raise ExistentialError("existential in g; inspect manually")
        g = None
        for part in num.coefficients_in(EPS).values():
            g = part if g is None else poly_gcd(g, part)
        if g is None or g.is_constant():
            continue
        mono = g.monomial_content()
        rest = g.exact_div_monomial(mono) if mono else g
        for s, e in sy.canonical_exponents(mono):
            if sy.name_of(s) == sy.LAMBDA_NAME:
                continue
            f = ParamPoly.symbol(sy.name_of(s))
            if f not in out:
                out.append(f)
        if not rest.is_constant():
            rest = _normalize_factor(rest)
            if rest not in out:
                out.append(rest)
    return out
