"""Truncated sparse polynomials in the phase variables x, y, z."""
from __future__ import annotations

from typing import Iterable

from .coeffrac import CZERO, CoefFrac

Mono = tuple[int, int, int]

_VAR_INDEX = {"x": 0, "y": 1, "z": 2}


def _min_n(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _add_n(n, k):
    return None if n is None else n + k


class PhasePoly:
    """Map ``(i, j, k) -> CoefFrac`` for ``x^i y^j z^k``.

    ``N`` is the truncation degree: coefficients of total degree ``<= N`` are
    exact and nothing above ``N`` is stored.  ``N=None`` marks an exact
    polynomial.  Equality compares stored terms only.
    """

    __slots__ = ("terms", "N")

    def __init__(self, terms: dict | None = None, N: int | None = None, _clean: bool = True):
        terms = terms or {}
        if _clean:
            terms = {
                m: (c if isinstance(c, CoefFrac) else CoefFrac.coerce(c))
                for m, c in terms.items()
                if (N is None or sum(m) <= N)
            }
            terms = {m: c for m, c in terms.items() if not c.is_zero()}
        self.terms: dict[Mono, CoefFrac] = terms
        self.N = N

    # -- constructors ------------------------------------------------------
    @classmethod
    def monomial(cls, i: int, j: int, k: int, c=1, N: int | None = None) -> "PhasePoly":
        return cls({(i, j, k): CoefFrac.coerce(c)}, N)

    @classmethod
    def var(cls, name: str, N: int | None = None) -> "PhasePoly":
        e = [0, 0, 0]
        e[_VAR_INDEX[name]] = 1
        return cls.monomial(*e, N=N)

    @classmethod
    def const(cls, c, N: int | None = None) -> "PhasePoly":
        return cls({(0, 0, 0): CoefFrac.coerce(c)}, N)

    # -- structure ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, PhasePoly):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(c == other.terms[m] for m, c in self.terms.items())

    __hash__ = None

    def coeff(self, i: int, j: int = 0, k: int = 0) -> CoefFrac:
        return self.terms.get((i, j, k), CZERO)

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def order(self) -> int | None:
        """Lowest total degree present (None for zero)."""
        return min((sum(m) for m in self.terms), default=None)

    def homogeneous(self, n: int) -> "PhasePoly":
        return PhasePoly({m: c for m, c in self.terms.items() if sum(m) == n}, self.N,
                         _clean=False)

    def components(self) -> dict[int, "PhasePoly"]:
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            out.setdefault(sum(m), {})[m] = c
        return {d: PhasePoly(t, self.N, _clean=False) for d, t in sorted(out.items())}

    def is_homogeneous(self, n: int | None = None) -> bool:
        degs = {sum(m) for m in self.terms}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return n is None or degs == {n}

    def truncate(self, N: int | None) -> "PhasePoly":
        if N is None:
            return PhasePoly(dict(self.terms), self.N, _clean=False)
        if self.N is not None and self.N < N:
            raise ValueError(f"cannot raise truncation from {self.N} to {N}")
        return PhasePoly({m: c for m, c in self.terms.items() if sum(m) <= N}, N, _clean=False)

    def with_n(self, N: int | None) -> "PhasePoly":
        """Relabel truncation without checks (only for exactly known data)."""
        return PhasePoly({m: c for m, c in self.terms.items() if N is None or sum(m) <= N}, N,
                         _clean=False)

    def depends_on(self, name: str) -> bool:
        i = _VAR_INDEX[name]
        return any(m[i] for m in self.terms)

    def coefficient_slots(self) -> set[int]:
        out: set[int] = set()
        for c in self.terms.values():
            out |= c.slots()
        return out

    # -- arithmetic --------------------------------------------------------
    def __neg__(self):
        return PhasePoly({m: -c for m, c in self.terms.items()}, self.N, _clean=False)

    def _coerce(self, other) -> "PhasePoly":
        if isinstance(other, PhasePoly):
            return other
        return PhasePoly.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        N = _min_n(self.N, other.N)
        out = {m: c for m, c in self.terms.items() if N is None or sum(m) <= N}
        for m, c in other.terms.items():
            if N is not None and sum(m) > N:
                continue
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v.is_zero():
                    del out[m]
                else:
                    out[m] = v
        return PhasePoly(out, N, _clean=False)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "PhasePoly":
        c = CoefFrac.coerce(c)
        if c.is_zero():
            return PhasePoly(None, self.N)
        return PhasePoly({m: v * c for m, v in self.terms.items()}, self.N, _clean=False)

    def __mul__(self, other):
        if not isinstance(other, PhasePoly):
            return self.scale(other)
        return self.mul(other)

    __rmul__ = __mul__

    def mul(self, other: "PhasePoly", N: int | None = None) -> "PhasePoly":
        """Product, valid through the degree both factors determine (capped at N)."""
        # lower bounds on the true orders; a zero jet is O(N+1), an exact zero has none
        oa, ob = self.order(), other.order()
        if oa is None:
            oa = None if self.N is None else self.N + 1
        if ob is None:
            ob = None if other.N is None else other.N + 1
        a = None if ob is None else _add_n(self.N, ob)
        b = None if oa is None else _add_n(other.N, oa)
        valid = _min_n(_min_n(a, b), N)
        if self.is_zero() or other.is_zero():
            return PhasePoly(None, valid)
        out: dict = {}
        for ma, ca in self.terms.items():
            da = sum(ma)
            for mb, cb in other.terms.items():
                if valid is not None and da + sum(mb) > valid:
                    continue
                m = (ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2])
                v = out.get(m)
                out[m] = ca * cb if v is None else v + ca * cb
        return PhasePoly({m: c for m, c in out.items() if not c.is_zero()}, valid, _clean=False)

    def __pow__(self, e: int):
        result = PhasePoly.const(1, self.N)
        for _ in range(e):
            result = result.mul(self)
        return result

    def diff(self, name: str) -> "PhasePoly":
        i = _VAR_INDEX[name]
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = c * e
        return PhasePoly(out, _add_n(self.N, -1), _clean=False)

    def map_coefficients(self, f) -> "PhasePoly":
        return PhasePoly({m: f(c) for m, c in self.terms.items()}, self.N)

    def items_sorted(self) -> list[tuple[Mono, CoefFrac]]:
        """Terms in graded-lex order with x > y > z, descending."""
        return sorted(self.terms.items(), key=lambda mc: (sum(mc[0]), mc[0]), reverse=True)

    def compose(self, sub: dict[str, "PhasePoly"], N: int | None = None) -> "PhasePoly":
        """Substitute phase polynomials for x, y, z (missing names stay)."""
        base = {v: sub.get(v, PhasePoly.var(v)) for v in ("x", "y", "z")}
        cache: dict[tuple[str, int], PhasePoly] = {}

        def power(v: str, e: int) -> PhasePoly:
            key = (v, e)
            if key not in cache:
                cache[key] = PhasePoly.const(1) if e == 0 else power(v, e - 1).mul(base[v], N)
            return cache[key]

        result = PhasePoly(None, N)
        for (i, j, k), c in self.items_sorted():
            t = power("x", i).mul(power("y", j), N).mul(power("z", k), N)
            result = result + t.scale(c)
        if self.N is not None:
            # unknown terms of self above N stay above N only for maps without constants
            if any(base[v].coeff(0, 0, 0) for v in ("x", "y", "z")):
                raise ValueError("cannot compose a truncated jet with a map that has constants")
            result = result.truncate(_min_n(result.N, self.N))
        return result

    def evaluate(self, x, y, z=0.0, values: dict | None = None, as_float: bool = True):
        total = 0.0 if as_float else 0
        for (i, j, k), c in self.terms.items():
            cv = c.evaluate(values or {}, as_float)
            total = total + cv * x ** i * y ** j * z ** k
        return total

    def __repr__(self):
        from ..sysio import format_phasepoly
        return f"PhasePoly({format_phasepoly(self)}, N={self.N})"


def from_terms(items: Iterable[tuple[Mono, object]], N: int | None = None) -> PhasePoly:
    out: dict = {}
    for m, c in items:
        c = CoefFrac.coerce(c)
        out[m] = out[m] + c if m in out else c
    return PhasePoly(out, N)
