"""Planar nilpotent fields ``x' = y + P(x, y)``, ``y' = Q(x, y)``.

Inverse integrating factors are checked with :func:`verify_iif` and searched
for degree by degree with :func:`planar_obstructions`.  On homogeneous
polynomials of degree n the linear part acts as ``y d/dx``; its kernel is
``y^n`` and ``x^n`` is the one direction it never reaches, so every degree
leaves one residue ``Lambda_n x^n`` and one free coefficient ``v0n0``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .algebra import symbols as sy
from .algebra.coeffrac import CoefFrac
from .algebra.field import substitute
from .algebra.phasepoly import PhasePoly, _min_n


@dataclass(frozen=True)
class PlanarField:
    P: PhasePoly
    Q: PhasePoly
    N: int | None = None
    name: str = ""

    def __post_init__(self):
        for label, p in (("P", self.P), ("Q", self.Q)):
            if p.depends_on("z"):
                raise ValueError(f"planar component {label} depends on z")
            low = [m for m in p.terms if sum(m) < 2]
            if low:
                raise ValueError(f"planar component {label} has terms of degree < 2")

    @classmethod
    def from_polys(cls, P: PhasePoly, Q: PhasePoly, N: int | None = None, name: str = ""):
        if N is None:
            N = _min_n(P.N, Q.N)
        if N is not None:
            P, Q = P.truncate(N), Q.truncate(N)
        return cls(P, Q, N, name)

    def full(self) -> tuple[PhasePoly, PhasePoly]:
        return PhasePoly.var("y") + self.P, self.Q

    def divergence(self) -> PhasePoly:
        return self.P.diff("x") + self.Q.diff("y")

    def substitute(self, assignments: dict) -> "PlanarField":
        return PlanarField(substitute(self.P, assignments), substitute(self.Q, assignments),
                           self.N, self.name)

    def slots(self) -> set[int]:
        return self.P.coefficient_slots() | self.Q.coefficient_slots()

    def degree(self) -> int:
        return max(self.P.degree(), self.Q.degree(), 1)


def verify_iif(S: PlanarField, v: PhasePoly, N: int) -> PhasePoly:
    """``S v - v div S`` truncated at N; zero certifies v through degree N."""
    if v.N is not None and v.N < N:
        raise ValueError(f"factor known to degree {v.N}, {N} requested")
    if S.N is not None and S.N < N:
        raise ValueError(f"field known to degree {S.N}, {N} requested")
    v = v.with_n(N)
    X1, X2 = S.full()
    out = X1.mul(v.diff("x"), N) + X2.mul(v.diff("y"), N) - v.mul(S.divergence(), N)
    return out.with_n(N)


class PlanarSeed(enum.Enum):
    ONE = "1"
    Y2 = "y2"

    @property
    def degree(self) -> int:
        return 0 if self is PlanarSeed.ONE else 2

    @property
    def monomial(self) -> tuple[int, int, int]:
        return (0, 0, 0) if self is PlanarSeed.ONE else (0, 2, 0)

    @classmethod
    def parse(cls, text: str) -> "PlanarSeed":
        key = str(text).strip().lower().replace("^", "")
        if key in ("1", "one"):
            return cls.ONE
        if key in ("y2", "yy"):
            return cls.Y2
        raise ValueError(f"unknown planar seed {text!r} (use 1 or y2)")


@dataclass(frozen=True)
class PlanarRun:
    seed: PlanarSeed
    N: int
    Lambda: tuple[CoefFrac, ...]          # Lambda[n-1] is the residue on x^n
    V_jet: PhasePoly
    kernel_unknowns: tuple[str, ...]
    forced_substitutions: tuple[tuple[str, CoefFrac, int], ...] = ()
    system: PlanarField | None = field(default=None, compare=False, repr=False)

    def lam(self, n: int) -> CoefFrac:
        return self.Lambda[n - 1]

    def first_nonzero(self) -> int | None:
        for n, L in enumerate(self.Lambda, 1):
            if not L.is_zero():
                return n
        return None

    def residue_polynomial(self) -> PhasePoly:
        return PhasePoly({(n, 0, 0): L for n, L in enumerate(self.Lambda, 1)}, self.N)


def planar_obstructions(S: PlanarField, seed: PlanarSeed | str, N: int) -> PlanarRun:
    """Build v with ``S v - v div S = sum Lambda_n x^n`` through degree N."""
    if not isinstance(seed, PlanarSeed):
        seed = PlanarSeed.parse(seed)
    need = N + 1 - seed.degree   # degree-n equations reach P, Q of degree n+1-s0
    if S.N is not None and S.N < need:
        raise ValueError(f"field known to degree {S.N}, need {need}")
    P = S.P.components()
    Q = S.Q.components()
    div = S.divergence().components()
    s0 = seed.degree
    V: dict[int, PhasePoly] = {}
    dV: dict[int, tuple[PhasePoly, PhasePoly]] = {}
    Lambdas: list[CoefFrac] = []
    unknowns: list[str] = []
    for n in range(0, N + 1):
        if n < s0:
            if n:
                Lambdas.append(CoefFrac())
            continue
        Fn = PhasePoly()
        for k in range(s0, n):
            Vk = V[k]
            if Vk.is_zero():
                continue
            m = n - k + 1
            Vx, Vy = dV[k]
            if m in P:
                Fn = Fn + P[m].mul(Vx)
            if m in Q:
                Fn = Fn + Q[m].mul(Vy)
            D = div.get(n - k)
            if D is not None:
                Fn = Fn - D.mul(Vk)
        # y d/dx maps x^(j+1) y^(n-j-1) onto (j+1) x^j y^(n-j)
        Vn: dict = {}
        for j in range(0, n):
            c = Fn.coeff(j, n - j, 0)
            if c:
                Vn[(j + 1, n - j - 1, 0)] = -c / (j + 1)
        if n == s0:
            Vn[seed.monomial] = CoefFrac.const(1)
        else:
            sym = sy.planar_kernel_symbol(n)
            unknowns.append(sym)
            Vn[(0, n, 0)] = CoefFrac.symbol(sym)
        Vn = PhasePoly(Vn)
        V[n] = Vn
        dV[n] = (Vn.diff("x"), Vn.diff("y"))
        if n:
            Lambdas.append(Fn.coeff(n, 0, 0))
    jet = PhasePoly()
    for Vn in V.values():
        jet = jet + Vn
    return PlanarRun(seed, N, tuple(Lambdas), jet.with_n(N), tuple(unknowns), (), S)


def planar_self_check(S: PlanarField, run: PlanarRun) -> bool:
    if run.forced_substitutions:
        S = S.substitute({s: v for s, v, _ in run.forced_substitutions})
    return verify_iif(S, run.V_jet, run.N) == run.residue_polynomial().with_n(run.N)


@dataclass(frozen=True)
class QuasiDecomposition:
    weights: tuple[int, int]
    components: dict[int, PhasePoly]

    def recompose(self) -> PhasePoly:
        out = PhasePoly()
        for p in self.components.values():
            out = out + p
        return out


def quasi_components(p: PhasePoly, t1: int, t2: int) -> QuasiDecomposition:
    """Split p by weighted degree ``t1*i + t2*j``."""
    if t1 <= 0 or t2 <= 0:
        raise ValueError("weights must be positive")
    if p.depends_on("z"):
        raise ValueError("quasi-homogeneous split is for polynomials in x, y")
    groups: dict[int, dict] = {}
    for (i, j, k), c in p.terms.items():
        groups.setdefault(t1 * i + t2 * j, {})[(i, j, k)] = c
    comps = {w: PhasePoly(t, p.N, _clean=False) for w, t in sorted(groups.items())}
    return QuasiDecomposition((t1, t2), comps)


__all__ = [
    "PlanarField",
    "PlanarRun",
    "PlanarSeed",
    "QuasiDecomposition",
    "planar_obstructions",
    "planar_self_check",
    "quasi_components",
    "verify_iif",
]
