"""Obstructions to a formal inverse Jacobi multiplier.

A multiplier jet ``V = sum V_n`` is built degree by degree so that

    X V - V div X = sum_n Lambda_n x^(n-1) z,

starting from one of the two admissible lowest jets, ``z`` or ``y^2 z``.  At
each degree the homogeneous part ``V_n`` solves the homological equation
modulo ``x^(n-1) z`` and its free kernel coefficient (of ``y^(n-1) z``) is
kept as a fresh unknown ``v0{n-1}1``.  Every nonzero ``Lambda_n`` obstructs
the existence of a multiplier with that lowest jet.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

from .algebra import symbols as sy
from .algebra.coeffrac import CoefFrac
from .algebra.field import VectorField3, ijm_residual, substitute
from .algebra.maps import Map3, compose_map, inverse_map, jacobian_det
from .algebra.phasepoly import PhasePoly
from .homological import solve_modulo_residue


class Seed(enum.Enum):
    Z = "z"
    ZY2 = "zy2"

    @property
    def degree(self) -> int:
        return 1 if self is Seed.Z else 3

    @property
    def monomial(self) -> tuple[int, int, int]:
        return (0, 0, 1) if self is Seed.Z else (0, 2, 1)

    @classmethod
    def parse(cls, text: str) -> "Seed":
        key = text.strip().lower().replace("^", "").replace("*", "")
        aliases = {"z": cls.Z, "zy2": cls.ZY2, "y2z": cls.ZY2}
        if key not in aliases:
            raise ValueError(f"unknown seed {text!r} (use z or zy2)")
        return aliases[key]


class ReductionError(ValueError):
    """A designated obstruction cannot be solved linearly for its symbol."""


@dataclass(frozen=True)
class ObstructionRun:
    seed: Seed
    N: int
    Lambda: tuple[CoefFrac, ...]          # Lambda[n-1] is the degree-n obstruction
    V_jet: PhasePoly
    kernel_unknowns: tuple[str, ...]
    forced_substitutions: tuple[tuple[str, CoefFrac, int], ...] = ()
    system: VectorField3 | None = field(default=None, compare=False, repr=False)

    def lam(self, n: int) -> CoefFrac:
        return self.Lambda[n - 1]

    def first_nonzero(self) -> int | None:
        for n, L in enumerate(self.Lambda, 1):
            if not L.is_zero():
                return n
        return None

    def residue_polynomial(self) -> PhasePoly:
        return PhasePoly({(n - 1, 0, 1): L for n, L in enumerate(self.Lambda, 1)}, self.N)


def obstructions(X: VectorField3, seed: Seed | str, N: int) -> ObstructionRun:
    """Compute Lambda_1..Lambda_N for the given lowest jet."""
    if isinstance(seed, str):
        seed = Seed.parse(seed)
    if N < seed.degree:
        raise ValueError(f"max degree {N} is below the seed degree {seed.degree}")
    lam = X.lam
    top = X.degree
    P = {m: X.components(m)[0] for m in range(2, top + 1)}
    Q = {m: X.components(m)[1] for m in range(2, top + 1)}
    R = {m: X.components(m)[2] for m in range(2, top + 1)}
    div = X.nonlinear_divergence().components()

    V: dict[int, PhasePoly] = {}
    dV: dict[int, tuple[PhasePoly, PhasePoly, PhasePoly]] = {}
    Lambdas: list[CoefFrac] = []
    unknowns: list[str] = []
    s0 = seed.degree
    for n in range(1, N + 1):
        if n < s0:
            V[n] = PhasePoly()
            dV[n] = (PhasePoly(), PhasePoly(), PhasePoly())
            Lambdas.append(CoefFrac())
            continue
        F = PhasePoly()
        for k in range(s0, n):
            Vk = V[k]
            if Vk.is_zero():
                continue
            m = n - k + 1
            Vx, Vy, Vz = dV[k]
            if m in P:
                F = F + P[m].mul(Vx) + Q[m].mul(Vy) + R[m].mul(Vz)
            D = div.get(n - k)
            if D is not None:
                F = F - D.mul(Vk)
        sol = solve_modulo_residue(F, lam, n)
        Vn = sol.particular
        if n == s0:
            Vn = Vn + PhasePoly.monomial(*seed.monomial)
        else:
            sym = sy.kernel_symbol(n - 1)
            unknowns.append(sym)
            Vn = Vn + PhasePoly.monomial(0, n - 1, 1, CoefFrac.symbol(sym))
        V[n] = Vn
        dV[n] = (Vn.diff("x"), Vn.diff("y"), Vn.diff("z"))
        Lambdas.append(sol.Lambda)
    jet = PhasePoly()
    for Vn in V.values():
        jet = jet + Vn
    return ObstructionRun(seed, N, tuple(Lambdas), jet.with_n(N), tuple(unknowns), (), X)


def self_check(X: VectorField3, run: ObstructionRun) -> bool:
    """Recompute ``X V - V div X`` and compare with the recorded obstructions."""
    if run.forced_substitutions:
        X = X.substitute({s: v for s, v, _ in run.forced_substitutions})
    res = ijm_residual(X, run.V_jet, run.N)
    return res == run.residue_polynomial().with_n(run.N)


def _linear_solve(L: CoefFrac, name: str) -> CoefFrac:
    """Solve ``L = 0`` for ``name`` when L is affine in it."""
    if name in L.den.variables():
        raise ReductionError(f"manual reduction required: {name} occurs in a denominator")
    parts = L.num.coefficients_in(name)
    if set(parts) - {0, 1}:
        raise ReductionError(
            f"manual reduction required: obstruction is not linear in {name}")
    A = parts.get(1)
    if A is None or A.is_zero():
        raise ReductionError(f"{name} does not occur in the designated obstruction")
    B = parts.get(0)
    return CoefFrac() if B is None else -CoefFrac(B) / CoefFrac(A)


def apply_substitution(run: ObstructionRun, name: str, value: CoefFrac,
                       source: int = 0) -> ObstructionRun:
    """Substitute ``name -> value`` into every obstruction, the jet and the field."""
    a = {name: value}
    return replace(
        run,
        Lambda=tuple(substitute(L, a) for L in run.Lambda),
        V_jet=substitute(run.V_jet, a),
        forced_substitutions=run.forced_substitutions + ((name, value, source),),
        system=run.system.substitute(a) if run.system is not None else None,
    )


def reduce_chain(run: ObstructionRun, solve_for: list[str] | tuple[str, ...]) -> ObstructionRun:
    """Solve successive obstructions for the given symbols and propagate.

    The i-th symbol is solved from the lowest-degree obstruction that is not
    yet used and in which the symbol occurs.
    """
    used: set[int] = set()
    for name in solve_for:
        target = None
        for n, L in enumerate(run.Lambda, 1):
            if n in used or L.is_zero():
                continue
            if name in L.variables():
                target = n
                break
        if target is None:
            raise ReductionError(f"no remaining obstruction involves {name}")
        value = _linear_solve(run.Lambda[target - 1], name)
        used.add(target)
        run = apply_substitution(run, name, value, target)
    return run


def solve_kernel_unknowns(run: ObstructionRun) -> ObstructionRun:
    """Use free kernel coefficients to annihilate obstructions where possible.

    Walks the obstructions by degree; each nonzero one that involves kernel
    unknowns is solved for the most recently introduced of them.
    """
    for n in range(1, run.N + 1):
        L = run.Lambda[n - 1]
        if L.is_zero():
            continue
        present = [v for v in L.variables() if sy.is_kernel_symbol(v)]
        if not present:
            continue
        name = max(present, key=lambda v: sy.rank(sy.slot(v)))
        try:
            value = _linear_solve(L, name)
        except ReductionError:
            continue
        run = apply_substitution(run, name, value, n)
    return run


def transform_multiplier(V: PhasePoly, phi: Map3, N: int) -> PhasePoly:
    """``(det(D phi) * V) o phi^{-1}`` through degree N."""
    psi = inverse_map(phi, N)
    det = jacobian_det(phi, N)
    Vn = V.with_n(N) if V.N is None else V.truncate(min(N, V.N))
    return compose_map(det.mul(Vn, N), psi, N)
