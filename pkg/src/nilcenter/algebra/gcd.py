"""Polynomial gcds used to keep coefficient fractions reduced.

Univariate gcds are computed here with Euclid's algorithm over Q.  The
multivariate case delegates to sympy's sparse polynomial rings, which is only
reached when a denominator involves two or more symbols.
"""
from __future__ import annotations

from gmpy2 import mpq
from sympy.polys.domains import QQ
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyRing

from . import symbols as sy
from .parampoly import ParamPoly


def _dense(p: ParamPoly, s: int) -> list:
    """Coefficient list (low degree first) of ``p`` univariate in slot ``s``."""
    deg = max(sy.exponent(m, s) for m in p.terms)
    out = [mpq(0)] * (deg + 1)
    for m, c in p.terms.items():
        out[sy.exponent(m, s)] = c
    return out


def _strip(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _poly_rem(a: list, b: list) -> list:
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        q = a[-1] / lb
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] -= q * c
        a.pop()
        _strip(a)
    return a


def _ugcd(a: list, b: list) -> list:
    a, b = _strip(list(a)), _strip(list(b))
    while b:
        a, b = b, _poly_rem(a, b)
    if not a:
        return a
    lc = a[-1]
    return [c / lc for c in a]


def _from_dense(a: list, s: int) -> ParamPoly:
    return ParamPoly({sy.var_monomial(s, e): c for e, c in enumerate(a) if c}, _clean=False)


def univariate_gcd(den: ParamPoly, num: ParamPoly, s: int) -> ParamPoly:
    """Monic gcd of ``den`` (univariate in slot ``s``) with ``num``.

    ``num`` may involve other symbols; it is split into coefficient polynomials
    that are univariate in ``s`` and the gcd is accumulated over those.
    """
    g = _dense(den, s)
    others = num.slots() - {s}
    for part in num.split_by(others).values():
        g = _ugcd(g, _dense(part, s))
        if len(g) <= 1:
            return ParamPoly.const(1)
    return _from_dense(g, s)


def _ring_for(slots: list[int]) -> PolyRing:
    names = [sy.name_of(s) for s in slots]
    return PolyRing(names, QQ, lex)


def _to_ring(p: ParamPoly, R: PolyRing, slots: list[int]):
    d = {}
    for m, c in p.terms.items():
        d[tuple(sy.exponent(m, s) for s in slots)] = c
    return R.from_dict(d)


def _from_ring(f, slots: list[int]) -> ParamPoly:
    out = {}
    for exps, c in f.terms():
        m = 0
        for s, e in zip(slots, exps):
            if e:
                m += sy.var_monomial(s, e)
        out[m] = mpq(c)
    return ParamPoly(out)


def multivariate_gcd(a: ParamPoly, b: ParamPoly) -> ParamPoly:
    """Gcd of two multivariate polynomials (monic-free, content 1 up to sign)."""
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    slots = sorted(a.slots() | b.slots())
    if not slots:
        return ParamPoly.const(1)
    R = _ring_for(slots)
    g = _to_ring(a, R, slots).gcd(_to_ring(b, R, slots))
    return _from_ring(g, slots)


def poly_gcd(a: ParamPoly, b: ParamPoly) -> ParamPoly:
    """Gcd choosing the cheapest applicable route."""
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.is_constant() or b.is_constant():
        return ParamPoly.const(1)
    sa, sb = a.slots(), b.slots()
    if len(sa) == 1:
        (s,) = sa
        return univariate_gcd(a, b, s)
    if len(sb) == 1:
        (s,) = sb
        return univariate_gcd(b, a, s)
    g = multivariate_gcd(a, b)
    lm, lc = g.leading()
    return g.scale(1 / lc)
