"""Center-manifold jets ``z = h(x, y)`` and restriction to them.

The invariance equation

    h_x (y + P(x, y, h)) + h_y Q(x, y, h) = -lam h + R(x, y, h)

is solved one homogeneous degree at a time.  On binary forms of degree n the
unknown part reads ``y h_x + lam h``, which is triangular in the x-power with
diagonal ``lam``, so the jet is unique even where the manifold is not.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra.coeffrac import CoefFrac
from .algebra.field import VectorField3
from .algebra.phasepoly import PhasePoly
from .planar import PlanarField

_X = PhasePoly.var("x")
_Y = PhasePoly.var("y")


class ManifoldError(ValueError):
    """A multiplier or invariant surface fails the vanishing/gradient condition."""


@dataclass(frozen=True)
class CMJet:
    h: PhasePoly
    N: int
    residual: PhasePoly   # invariance defect, nonzero only above degree N


def _on_graph(p: PhasePoly, h: PhasePoly, N: int) -> PhasePoly:
    return p.compose({"x": _X, "y": _Y, "z": h}, N)


def invariance_defect(X: VectorField3, h: PhasePoly, N: int) -> PhasePoly:
    """``h_x (y+P) + h_y Q + lam h - R`` on z = h, through degree N."""
    P, Q, R = (_on_graph(c, h, N) for c in (X.P, X.Q, X.R))
    hx, hy = h.diff("x"), h.diff("y")
    lhs = hx.mul(_Y + P, N) + hy.mul(Q, N) + h.scale(X.lam).with_n(N)
    return (lhs - R).with_n(N)


def cm_jet(X: VectorField3, N: int) -> CMJet:
    """Center-manifold jet of X through degree N."""
    if N < 1:
        raise ValueError("degree must be >= 1")
    lam = X.lam
    inv = lam.inverse()
    h = PhasePoly()
    for n in range(2, N + 1):
        # the degree-n part only sees h through degree n-1
        rhs = (_on_graph(X.R, h, n) - h.diff("x").mul(_on_graph(X.P, h, n), n)
               - h.diff("y").mul(_on_graph(X.Q, h, n), n)).homogeneous(n)
        # lam h_j + (j+1) h_{j+1} = rhs_j, sweeping j from n down to 0
        hn: dict = {}
        prev = CoefFrac()
        for j in range(n, -1, -1):
            c = rhs.coeff(j, n - j, 0)
            if prev:
                c = c - prev * (j + 1)
            cur = c * inv if c else CoefFrac()
            if cur:
                hn[(j, n - j, 0)] = cur
            prev = cur
        h = h + PhasePoly(hn)
    res = invariance_defect(X, h, N + 1)
    if any(sum(m) <= N for m in res.terms):
        raise AssertionError("center-manifold jet fails its own invariance check")
    return CMJet(h.with_n(N), N, res)


def restrict(X: VectorField3, h: CMJet | PhasePoly, N: int) -> PlanarField:
    """``(y + P(x,y,h), Q(x,y,h))`` through degree N."""
    hp = h.h if isinstance(h, CMJet) else h
    if isinstance(h, CMJet) and h.N < N - 1:
        # P(x,y,h) at degree N needs h through N-1
        raise ValueError(f"center-manifold jet known to degree {h.N}, need {N - 1}")
    hp = PhasePoly(hp.terms)
    P = _on_graph(X.P, hp, N).with_n(N)
    Q = _on_graph(X.Q, hp, N).with_n(N)
    return PlanarField(P, Q, N, X.name)


def factor_restrict(V: PhasePoly, h: CMJet | PhasePoly, N: int) -> PhasePoly:
    """Write ``V = (z - h) W`` and return ``W(x, y, h)`` (valid through N-1).

    With ``z = Z + h`` the quotient restricted to the graph is the Z-linear
    coefficient, i.e. ``dV/dz`` evaluated on z = h.
    """
    hp = PhasePoly((h.h if isinstance(h, CMJet) else h).terms)
    if V.N is not None and V.N < N:
        raise ValueError(f"jet known to degree {V.N}, {N} requested")
    Vn = V.with_n(N) if V.N is None else V.truncate(N)
    on = _on_graph(Vn, hp, N)
    if not on.is_zero():
        from .sysio import format_phasepoly
        raise ManifoldError(f"V does not vanish on z = h: V(x,y,h) = {format_phasepoly(on)}")
    return _on_graph(Vn.diff("z"), hp, N - 1)


@dataclass(frozen=True)
class FormalCMResult:
    ok: bool
    K: PhasePoly
    failed_degree: int | None = None
    defect: PhasePoly | None = None   # z-free part that blocked the failed degree


def formal_cm_check(X: VectorField3, M: PhasePoly, N: int) -> FormalCMResult:
    """Look for K with ``X M - K M = O(N+1)``."""
    if M.coeff(0, 0, 0):
        raise ManifoldError("M must vanish at the origin")
    c = M.coeff(0, 0, 1)
    if c.is_zero() or M.coeff(1, 0, 0) or M.coeff(0, 1, 0):
        raise ManifoldError("gradient of M at the origin is not parallel to (0,0,1)")
    Mn = M.with_n(N) if M.N is None else M.truncate(N)
    x1, x2, x3 = X.full()
    XM = (x1.mul(Mn.diff("x"), N) + x2.mul(Mn.diff("y"), N)
          + x3.mul(Mn.diff("z"), N)).with_n(N)
    Mc = Mn.components()
    XMc = XM.components()
    K: dict[int, PhasePoly] = {}
    inv_c = c.inverse()
    for n in range(1, N + 1):
        r = XMc.get(n, PhasePoly())
        for i, Ki in K.items():
            Mj = Mc.get(n - i)
            if Mj is not None:
                r = r - Ki.mul(Mj)
        # r = K_{n-1} * c z; everything must carry a factor z
        free = PhasePoly({m: v for m, v in r.terms.items() if m[2] == 0})
        Kn = PhasePoly({(i, j, k - 1): v * inv_c for (i, j, k), v in r.terms.items() if k > 0})
        partial = PhasePoly(None, n - 2)
        for Ki in K.values():
            partial = partial + Ki.with_n(n - 2)
        if not free.is_zero():
            return FormalCMResult(False, partial, n, free)
        K[n - 1] = Kn
    total = PhasePoly()
    for Ki in K.values():
        total = total + Ki
    return FormalCMResult(True, total.with_n(N - 1))
