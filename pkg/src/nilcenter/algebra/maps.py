"""Polynomial maps of (x, y, z): Jacobians, compositional inverses, conjugation."""
from __future__ import annotations

from .coeffrac import CoefFrac
from .field import VectorField3
from .phasepoly import PhasePoly

VARS = ("x", "y", "z")
Map3 = tuple[PhasePoly, PhasePoly, PhasePoly]

_UNIT = {"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)}


def identity_map() -> Map3:
    return tuple(PhasePoly.var(v) for v in VARS)


def linear_matrix(phi: Map3) -> list[list[CoefFrac]]:
    return [[f.coeff(*_UNIT[v]) for v in VARS] for f in phi]


def _det3(m) -> CoefFrac:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _inv3(m) -> list[list[CoefFrac]]:
    d = _det3(m)
    if d.is_zero():
        raise ValueError("linear part of the map is not invertible")
    cof = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != i]
            c = [k for k in range(3) if k != j]
            minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
            cof[i][j] = minor if (i + j) % 2 == 0 else -minor
    # inverse = adjugate / det, adjugate = cofactor transposed
    return [[cof[j][i] / d for j in range(3)] for i in range(3)]


def _apply_linear(A, vec: Map3) -> Map3:
    return tuple(vec[0].scale(A[i][0]) + vec[1].scale(A[i][1]) + vec[2].scale(A[i][2])
                 for i in range(3))


def jacobian_det(phi: Map3, N: int | None = None) -> PhasePoly:
    J = [[f.diff(v) for v in VARS] for f in phi]

    def m(a, b):
        return a.mul(b, N)

    return (m(J[0][0], m(J[1][1], J[2][2]) - m(J[1][2], J[2][1]))
            - m(J[0][1], m(J[1][0], J[2][2]) - m(J[1][2], J[2][0]))
            + m(J[0][2], m(J[1][0], J[2][1]) - m(J[1][1], J[2][0])))


def compose_map(f: PhasePoly, phi: Map3, N: int | None) -> PhasePoly:
    return f.compose(dict(zip(VARS, phi)), N)


def inverse_map(phi: Map3, N: int) -> Map3:
    """Compositional inverse jet of ``phi`` (no constant terms) through degree N."""
    for f in phi:
        if f.coeff(0, 0, 0):
            raise ValueError("map has a constant term")
    A = linear_matrix(phi)
    Ainv = _inv3(A)
    lin = tuple(PhasePoly({m: c for m, c in f.terms.items() if sum(m) == 1}) for f in phi)
    nonlin = tuple(f - l for f, l in zip(phi, lin))
    w = tuple(PhasePoly.var(v, N) for v in VARS)
    psi = _apply_linear(Ainv, w)
    for _ in range(N):
        comp = tuple(compose_map(g, psi, N) for g in nonlin)
        psi = _apply_linear(Ainv, tuple((wi - ci).with_n(N) for wi, ci in zip(w, comp)))
    return tuple(p.truncate(N) for p in psi)


def conjugate(X: VectorField3, phi: Map3, N: int) -> Map3:
    """Right-hand side of ``Y = (D phi . X) o phi^{-1}`` through degree N."""
    psi = inverse_map(phi, N)
    rhs = X.full()
    J = [[f.diff(v) for v in VARS] for f in phi]
    out = []
    for i in range(3):
        acc = PhasePoly(None, N)
        for j in range(3):
            acc = acc + J[i][j].mul(rhs[j], N + 1)
        out.append(compose_map(acc.with_n(N), psi, N))
    return tuple(out)


def field_from_rhs(rhs: Map3, lam: CoefFrac, params=(), name: str = "") -> VectorField3:
    """Split a full right-hand side whose linear part is (y, 0, -lam z)."""
    lin_expected = [PhasePoly.var("y"), PhasePoly(), PhasePoly.monomial(0, 0, 1, -lam)]
    parts = []
    for f, lin in zip(rhs, lin_expected):
        f_lin = PhasePoly({m: c for m, c in f.terms.items() if sum(m) <= 1})
        if not (f_lin - lin).is_zero():
            raise ValueError("right-hand side does not have the nilpotent linear part")
        parts.append(PhasePoly({m: c for m, c in f.terms.items() if sum(m) >= 2}, f.N))
    return VectorField3(parts[0], parts[1], parts[2], lam, tuple(params), name)
