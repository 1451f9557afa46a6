"""Rational functions in the parameters: the coefficient field."""
from __future__ import annotations

from gmpy2 import mpq, mpz

from . import symbols as sy
from .gcd import multivariate_gcd, univariate_gcd
from .parampoly import ONE, ZERO, ParamPoly, as_rational


def _normalize(num: ParamPoly, den: ParamPoly) -> tuple[ParamPoly, ParamPoly]:
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return ZERO, ONE
    if den.is_constant():
        c = den.constant_value()
        return (num if c == 1 else num.scale(1 / c)), ONE
    mc = sy.mono_min(num.monomial_content(), den.monomial_content())
    if mc:
        num = num.exact_div_monomial(mc)
        den = den.exact_div_monomial(mc)
        if den.is_constant():
            c = den.constant_value()
            return num.scale(1 / c), ONE
    if not den.is_monomial():
        dslots = den.slots()
        if len(dslots) == 1:
            (s,) = dslots
            g = univariate_gcd(den, num, s)
        elif num.is_monomial():
            g = ONE
        else:
            g = multivariate_gcd(num, den)
        if not g.is_constant():
            num = num.divmod_exact(g)
            den = den.divmod_exact(g)
            if num is None or den is None:  # pragma: no cover - gcd must divide
                raise ArithmeticError("gcd does not divide")
            if den.is_constant():
                c = den.constant_value()
                return num.scale(1 / c), ONE
    # primitive integer denominator with positive leading coefficient
    content = den.content()
    _, lc = den.leading()
    f = 1 / content if lc > 0 else -1 / content
    if f != 1:
        num = num.scale(f)
        den = den.scale(f)
    return num, den


class CoefFrac:
    """Element of Q(parameters), kept as a reduced fraction ``num/den``.

    Equality is decided by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: ParamPoly | None = None, den: ParamPoly | None = None,
                 _reduced: bool = False):
        if num is None:
            num = ZERO
        if den is None or (not _reduced and den.is_one()):
            self.num, self.den = num, ONE
            return
        if _reduced:
            self.num, self.den = num, den
        else:
            self.num, self.den = _normalize(num, den)

    @classmethod
    def const(cls, c) -> "CoefFrac":
        return cls(ParamPoly.const(c))

    @classmethod
    def symbol(cls, name: str) -> "CoefFrac":
        return cls(ParamPoly.symbol(name))

    @classmethod
    def coerce(cls, v) -> "CoefFrac":
        if isinstance(v, CoefFrac):
            return v
        if isinstance(v, ParamPoly):
            return cls(v)
        return cls(ParamPoly.const(as_rational(v)))

    # -- predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.is_constant()

    def constant_value(self) -> mpq:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.constant_value()

    def slots(self) -> set[int]:
        return self.num.slots() | self.den.slots()

    def variables(self) -> list[str]:
        return [sy.name_of(s) for s in sorted(self.slots(), key=sy.rank)]

    def __eq__(self, other):
        if not isinstance(other, CoefFrac):
            if isinstance(other, (ParamPoly, int, mpq, mpz)):
                other = CoefFrac.coerce(other)
            else:
                return NotImplemented
        if self.den == other.den and self.num == other.num:
            return True
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):
        return hash((self.num, self.den))

    # -- arithmetic --------------------------------------------------------
    def __neg__(self):
        return CoefFrac(-self.num, self.den, _reduced=True)

    def __add__(self, other):
        if not isinstance(other, CoefFrac):
            other = CoefFrac.coerce(other)
        if self.den.is_one() and other.den.is_one():
            return CoefFrac(self.num + other.num, ONE, _reduced=True)
        if self.den == other.den:
            return CoefFrac(self.num + other.num, self.den)
        if other.den.is_one():
            return CoefFrac(self.num + other.num * self.den, self.den, _reduced=True)
        if self.den.is_one():
            return CoefFrac(self.num * other.den + other.num, other.den, _reduced=True)
        return CoefFrac(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, CoefFrac):
            other = CoefFrac.coerce(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CoefFrac):
            if isinstance(other, ParamPoly):
                other = CoefFrac(other)
            else:
                c = as_rational(other)
                if not c:
                    return CoefFrac()
                return CoefFrac(self.num.scale(c), self.den, _reduced=True)
        if self.den.is_one() and other.den.is_one():
            return CoefFrac(self.num * other.num, ONE, _reduced=True)
        if other.is_constant():
            return self * other.num.constant_value()
        if self.is_constant():
            return other * self.num.constant_value()
        return CoefFrac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "CoefFrac":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero coefficient")
        return CoefFrac(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, CoefFrac):
            if isinstance(other, ParamPoly):
                other = CoefFrac(other)
            else:
                c = as_rational(other)
                return CoefFrac(self.num.scale(1 / c), self.den, _reduced=True)
        if other.is_constant():
            return CoefFrac(self.num.scale(1 / other.num.constant_value()), self.den,
                            _reduced=True)
        return CoefFrac(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return CoefFrac.coerce(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return CoefFrac(self.num ** e, self.den ** e, _reduced=True)

    def evaluate(self, values: dict, as_float: bool = False):
        d = self.den.evaluate(values, as_float)
        if not d:
            raise ZeroDivisionError("denominator vanishes at the given values")
        return self.num.evaluate(values, as_float) / d

    def __repr__(self):
        from ..sysio import format_coef
        return f"CoefFrac({format_coef(self)})"


CZERO = CoefFrac()
CONE = CoefFrac(ONE)
