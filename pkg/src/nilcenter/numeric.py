"""Floating-point Poincaré return maps for restricted planar fields.

This is corroboration, not proof: the section is ``{y = 0, x > 0}`` and one
revolution is integrated with an adaptive embedded Runge-Kutta pair (scipy's
DOP853).  Crossings are located by a sign change of y between accepted steps
and refined with Brent's method on the stepper's dense output.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import DOP853
from scipy.optimize import brentq

from .algebra.coeffrac import CoefFrac
from .planar import PlanarField


class BindingError(ValueError):
    """Some coefficient still involves an unbound parameter."""


@dataclass(frozen=True)
class BoundPlanar:
    P: tuple[tuple[int, int, float], ...]   # (i, j, coefficient) of x^i y^j
    Q: tuple[tuple[int, int, float], ...]
    name: str = ""

    def rhs(self, x: float, y: float) -> tuple[float, float]:
        px = y
        for i, j, c in self.P:
            px += c * x ** i * y ** j
        qy = 0.0
        for i, j, c in self.Q:
            qy += c * x ** i * y ** j
        return px, qy


def _table(p, label: str) -> tuple[tuple[int, int, float], ...]:
    out = []
    for (i, j, _), c in sorted(p.terms.items()):
        if not c.is_constant():
            names = ", ".join(c.variables())
            raise BindingError(f"unbound parameter(s) {names} in {label}")
        out.append((i, j, float(c.constant_value())))
    return tuple(out)


def bind(planar: PlanarField, assignments: dict | None = None) -> BoundPlanar:
    """Substitute rational values for all parameters and convert to doubles."""
    assignments = {k: CoefFrac.coerce(v) for k, v in (assignments or {}).items()}
    S = planar.substitute(assignments) if assignments else planar
    return BoundPlanar(_table(S.P, "P"), _table(S.Q, "Q"), planar.name)


OK = "ok"
NO_RETURN = "no-return"
LEFT = "left-neighborhood"


@dataclass(frozen=True)
class ReturnMapResult:
    x0: float
    displacement: float
    turns: int
    steps: int
    status: str
    x_return: float = math.nan


def return_map(S: BoundPlanar, x0: float, tol: float = 1e-12, radius: float = 1.0,
               max_steps: int = 200_000) -> ReturnMapResult:
    """Integrate from ``(x0, 0)`` until the orbit comes back to ``{y=0, x>0}``."""
    if not 0 < x0 < radius:
        raise ValueError(f"x0 must lie in (0, {radius})")

    def fun(_t, u):
        return S.rhs(u[0], u[1])

    solver = DOP853(fun, 0.0, [x0, 0.0], math.inf, rtol=tol, atol=tol * x0)
    seen_negative_side = False
    prev_t, prev_u = 0.0, (x0, 0.0)
    steps = 0
    while steps < max_steps:
        msg = solver.step()
        steps += 1
        if msg is not None or solver.status == "failed":
            return ReturnMapResult(x0, math.nan, 0, steps, NO_RETURN)
        t, u = solver.t, solver.y
        if math.hypot(u[0], u[1]) > radius:
            return ReturnMapResult(x0, math.nan, 0, steps, LEFT)
        y0, y1 = prev_u[1], u[1]
        if steps > 1 and (y0 * y1 < 0 or y1 == 0.0):
            dense = solver.dense_output()
            tc = t if y1 == 0.0 else brentq(lambda s: dense(s)[1], prev_t, t,
                                            xtol=1e-16, rtol=1e-15)
            xc = float(dense(tc)[0])
            if xc < 0:
                seen_negative_side = True
            elif seen_negative_side:
                return ReturnMapResult(x0, xc - x0, 1, steps, OK, xc)
        prev_t, prev_u = t, (float(u[0]), float(u[1]))
    return ReturnMapResult(x0, math.nan, 0, steps, NO_RETURN)


CENTER = "center-consistent"
STABLE = "stable-focus"
UNSTABLE = "unstable-focus"
INCONCLUSIVE = "inconclusive"


def classify(S: BoundPlanar, x0s, tol: float = 1e-12, **kw) -> tuple[str, list[ReturnMapResult]]:
    """Label the return displacements at several starting points."""
    x0s = list(x0s)
    if len(x0s) < 3:
        raise ValueError("need at least three starting points")
    results = [return_map(S, x0, tol, **kw) for x0 in x0s]
    if any(r.status != OK for r in results):
        return INCONCLUSIVE, results
    small = [abs(r.displacement) < 100 * tol * r.x0 for r in results]
    if all(small):
        return CENTER, results
    if not any(small):
        signs = {r.displacement > 0 for r in results}
        if signs == {True}:
            return UNSTABLE, results
        if signs == {False}:
            return STABLE, results
    return INCONCLUSIVE, results


__all__ = [
    "BindingError",
    "BoundPlanar",
    "ReturnMapResult",
    "bind",
    "classify",
    "return_map",
]
