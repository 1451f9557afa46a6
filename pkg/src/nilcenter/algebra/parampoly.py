"""Sparse multivariate polynomials in the system parameters over Q."""
from __future__ import annotations

from gmpy2 import mpq, mpz

from . import symbols as sy

Rational = mpq


def as_rational(c) -> mpq:
    if isinstance(c, mpq):
        return c
    if isinstance(c, str):
        return mpq(c)
    return mpq(c)


class ParamPoly:
    """Polynomial in parameter symbols with exact rational coefficients.

    ``terms`` maps packed monomials (see :mod:`symbols`) to nonzero ``mpq``.
    Instances are treated as immutable.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None, _clean: bool = True):
        if terms is None:
            terms = {}
        elif _clean:
            terms = {m: mpq(c) for m, c in terms.items() if c}
        self.terms = terms

    # -- constructors ------------------------------------------------------
    @classmethod
    def const(cls, c) -> "ParamPoly":
        c = as_rational(c)
        return cls({0: c} if c else {}, _clean=False)

    @classmethod
    def symbol(cls, name: str, power: int = 1) -> "ParamPoly":
        return cls({sy.var_monomial(sy.slot(name), power): mpq(1)}, _clean=False)

    # -- predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        t = self.terms
        return not t or (len(t) == 1 and 0 in t)

    def constant_value(self) -> mpq:
        """Coefficient of the empty monomial."""
        return self.terms.get(0, mpq(0))

    def is_one(self) -> bool:
        t = self.terms
        return len(t) == 1 and t.get(0) == 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, ParamPoly):
            return self.terms == other.terms
        if isinstance(other, (int, mpq, mpz)):
            return self.terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- structure ---------------------------------------------------------
    def slots(self) -> set[int]:
        out: set[int] = set()
        for m in self.terms:
            out.update(sy.unpack(m))
        return out

    def variables(self) -> list[str]:
        return [sy.name_of(s) for s in sorted(self.slots(), key=sy.rank)]

    def total_degree(self) -> int:
        return max((sy.degree(m) for m in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        s = sy.slot(name)
        return max((sy.exponent(m, s) for m in self.terms), default=-1)

    def leading(self) -> tuple[int, mpq]:
        """Leading term under graded lex in the canonical symbol order."""
        m = max(self.terms, key=sy.mono_sort_key)
        return m, self.terms[m]

    def content(self) -> mpq:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        num = mpz(0)
        den = mpz(1)
        from gmpy2 import gcd, lcm
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return mpq(num, den) if num else mpq(0)

    def monomial_content(self) -> int:
        it = iter(self.terms)
        try:
            g = next(it)
        except StopIteration:
            return 0
        for m in it:
            if not g:
                break
            g = sy.mono_min(g, m)
        return g

    def coefficients_in(self, name: str) -> dict[int, "ParamPoly"]:
        """Split as ``sum_k c_k * name^k`` and return ``{k: c_k}``."""
        s = sy.slot(name)
        shift = sy.SLOT_BITS * s
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            e = (m >> shift) & sy.SLOT_MASK
            out.setdefault(e, {})[m - (e << shift)] = c
        return {e: ParamPoly(t, _clean=False) for e, t in out.items()}

    def split_by(self, slot_set: set[int]) -> dict[int, "ParamPoly"]:
        """Group terms by their part in ``slot_set``: ``{mono_in_set: coeff_poly}``."""
        mask = 0
        for s in slot_set:
            mask |= sy.SLOT_MASK << (sy.SLOT_BITS * s)
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            k = m & mask
            out.setdefault(k, {})[m - k] = c
        return {k: ParamPoly(t, _clean=False) for k, t in out.items()}

    # -- arithmetic --------------------------------------------------------
    def __neg__(self):
        return ParamPoly({m: -c for m, c in self.terms.items()}, _clean=False)

    def __add__(self, other):
        if not isinstance(other, ParamPoly):
            other = ParamPoly.const(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for m, c in b.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return ParamPoly(out, _clean=False)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, ParamPoly):
            other = ParamPoly.const(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = -c
            else:
                v = v - c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return ParamPoly(out, _clean=False)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "ParamPoly":
        c = as_rational(c)
        if not c:
            return ParamPoly()
        if c == 1:
            return self
        return ParamPoly({m: v * c for m, v in self.terms.items()}, _clean=False)

    def shift(self, mono: int, c=1) -> "ParamPoly":
        """Multiply by ``c * mono``."""
        c = as_rational(c)
        if not c:
            return ParamPoly()
        return ParamPoly({m + mono: v * c for m, v in self.terms.items()}, _clean=False)

    def __mul__(self, other):
        if not isinstance(other, ParamPoly):
            return self.scale(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return ParamPoly()
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (mb, cb), = b.items()
            if mb == 0:
                if cb == 1:
                    return ParamPoly(a, _clean=False)
                return ParamPoly({m: c * cb for m, c in a.items()}, _clean=False)
            return ParamPoly({m + mb: c * cb for m, c in a.items()}, _clean=False)
        out: dict = {}
        get = out.get
        aitems = list(a.items())
        for mb, cb in b.items():
            for ma, ca in aitems:
                k = ma + mb
                out[k] = get(k, 0) + ca * cb
        return ParamPoly({m: c for m, c in out.items() if c}, _clean=False)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = ParamPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def exact_div_monomial(self, mono: int, c=1) -> "ParamPoly":
        c = as_rational(c)
        return ParamPoly({m - mono: v / c for m, v in self.terms.items()}, _clean=False)

    def divmod_exact(self, other: "ParamPoly") -> "ParamPoly | None":
        """Return ``self / other`` if the division is exact, else None."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return ParamPoly()
        if other.is_constant():
            return self.scale(1 / other.constant_value())
        lm = max(other.terms)
        lc = other.terms[lm]
        rest = [(m, c) for m, c in other.terms.items() if m != lm]
        r = dict(self.terms)
        q: dict = {}
        while r:
            m = max(r)
            if not sy.divides(lm, m):
                return None
            t = m - lm
            tc = r[m] / lc
            q[t] = tc
            del r[m]
            for om, oc in rest:
                k = om + t
                v = r.get(k, 0) - oc * tc
                if v:
                    r[k] = v
                else:
                    r.pop(k, None)
        return ParamPoly(q, _clean=False)

    def diff(self, name: str) -> "ParamPoly":
        s = sy.slot(name)
        unit = sy.var_monomial(s)
        out = {}
        for m, c in self.terms.items():
            e = sy.exponent(m, s)
            if e:
                out[m - unit] = c * e
        return ParamPoly(out, _clean=False)

    def evaluate(self, values: dict, as_float: bool = False):
        """Evaluate with every occurring symbol bound in ``values``."""
        total = 0.0 if as_float else mpq(0)
        for m, c in self.terms.items():
            t = float(c) if as_float else c
            for s, e in sy.unpack(m).items():
                name = sy.name_of(s)
                if name not in values:
                    raise KeyError(name)
                t = t * values[name] ** e
            total = total + t
        return total

    def __repr__(self):
        from ..sysio import format_parampoly
        return f"ParamPoly({format_parampoly(self)})"


ZERO = ParamPoly()
ONE = ParamPoly.const(1)
