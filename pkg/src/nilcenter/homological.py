"""The operator ``p -> y p_x - lam z p_z + lam p`` on homogeneous cubics and beyond.

On a homogeneous space of degree n it preserves the z-exponent l.  On the
stratum l = 1 it reduces to the nilpotent shift ``y d/dx`` (kernel
``y^(n-1) z``, cokernel spanned by ``x^(n-1) z``); on every other stratum it
is triangular with the invertible diagonal ``lam (1 - l)``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra.coeffrac import CoefFrac
from .algebra.phasepoly import PhasePoly
from .algebra.symbols import kernel_symbol


@dataclass(frozen=True)
class SolveResult:
    particular: PhasePoly
    Lambda: CoefFrac
    kernel_coeff_symbol: str


def _homogeneous_degree(p: PhasePoly, n: int | None) -> int:
    degs = {sum(m) for m in p.terms}
    if len(degs) > 1:
        raise ValueError(f"polynomial is not homogeneous (degrees {sorted(degs)})")
    if n is not None:
        if degs and degs != {n}:
            raise ValueError(f"polynomial is not homogeneous of degree {n}")
        return n
    if not degs:
        raise ValueError("degree of the zero polynomial must be given")
    return degs.pop()


def apply_L(p: PhasePoly, lam, n: int | None = None) -> PhasePoly:
    """Apply the operator to a homogeneous polynomial."""
    _homogeneous_degree(p, n)
    lam = CoefFrac.coerce(lam)
    out: dict = {}
    for (j, k, l), c in p.terms.items():
        if j:
            m = (j - 1, k + 1, l)
            v = c * j
            out[m] = out[m] + v if m in out else v
        if l != 1:
            m = (j, k, l)
            v = c * (lam * (1 - l))
            out[m] = out[m] + v if m in out else v
    return PhasePoly(out)


def kernel_basis(n: int) -> tuple[int, int, int]:
    """Exponent of the kernel monomial ``y^(n-1) z``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return (0, n - 1, 1)


def solve_modulo_residue(q: PhasePoly, lam, n: int | None = None) -> SolveResult:
    """Find p with ``L(p) + q = Lambda * x^(n-1) z``.

    The coefficient of ``y^(n-1) z`` in p is left at zero; callers decide
    what to put in the kernel direction.
    """
    n = _homogeneous_degree(q, n)
    lam = CoefFrac.coerce(lam)
    p: dict = {}
    Lam = q.coeff(n - 1, 0, 1)
    # l = 1: each target x^j y^k z (k >= 1) has exactly one preimage x^(j+1) y^(k-1) z
    for k in range(n - 1, 0, -1):
        j = n - 1 - k
        c = q.coeff(j, k, 1)
        if c:
            p[(j + 1, k - 1, 1)] = -c / (j + 1)
    # l != 1: triangular sweep from the highest x-power down
    for l in range(0, n + 1):
        if l == 1:
            continue
        d = n - l
        inv_diag = (lam * (1 - l)).inverse()
        prev = None  # coefficient at (j+1, k-1, l)
        for j in range(d, -1, -1):
            k = d - j
            rhs = -q.coeff(j, k, l)
            if prev is not None and prev:
                rhs = rhs - prev * (j + 1)
            cur = rhs * inv_diag if rhs else CoefFrac()
            if cur:
                p[(j, k, l)] = cur
            prev = cur
    return SolveResult(PhasePoly(p), Lam, kernel_symbol(n - 1))
