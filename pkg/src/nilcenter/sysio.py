"""Reading system files and printing algebra values canonically.

System file format (UTF-8, ``#`` starts a comment)::

    system "abd-family"
    lambda = 1
    params a b d
    dx = y - 2*x*y + a*x*z
    dy = -2*x^3 + y^2 + b*y*z
    dz = -z + d*x*y

Several ``key = expr`` assignments may share a line when separated by ``;``.
Expressions use ``+ - * / ^`` and parentheses; division is only allowed by
expressions free of x, y, z.  Everything is expanded at parse time.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from gmpy2 import mpq

from .algebra import symbols as sy
from .algebra.coeffrac import CoefFrac
from .algebra.field import VectorField3
from .algebra.parampoly import ParamPoly
from .algebra.phasepoly import PhasePoly


class ParseError(ValueError):
    """Malformed input; carries a 1-based line and column when known."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line, self.col = line, col
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + message)


# -- expressions --------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


@dataclass
class _Tok:
    kind: str  # "num", "sym", "op", "end"
    text: str
    col: int


def _tokenize(text: str, line: int | None, col0: int) -> list[_Tok]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            bad = text[pos:].lstrip()
            col = col0 + len(text) - len(text[pos:]) + (len(text[pos:]) - len(bad))
            if bad[:1] == ".":
                raise ParseError("floating-point literals are not allowed", line, col)
            raise ParseError(f"unexpected character {bad[:1]!r}", line, col)
        col = col0 + m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
        if m.group(1):
            if m.end() < len(text) and text[m.end()] == ".":
                raise ParseError("floating-point literals are not allowed", line, col)
            toks.append(_Tok("num", m.group(1), col))
        elif m.group(2):
            toks.append(_Tok("sym", m.group(2), col))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            toks.append(_Tok("op", op, col))
        pos = m.end()
    toks.append(_Tok("end", "", col0 + len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, resolve, line: int | None = None, col0: int = 1):
        self.toks = _tokenize(text, line, col0)
        self.i = 0
        self.resolve = resolve
        self.line = line

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok.col)

    def parse(self) -> PhasePoly:
        v = self.expr()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().text!r}")
        return v

    def expr(self) -> PhasePoly:
        t = self.peek()
        if t.kind == "op" and t.text in "+-":
            self.take()
            v = self.term()
            if t.text == "-":
                v = -v
        else:
            v = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self) -> PhasePoly:
        v = self.power()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.take()
            rhs = self.power()
            if op.text == "*":
                v = v * rhs
            else:
                if any(sum(m) for m in rhs.terms):
                    self.error("division by an expression in x, y, z is not polynomial", op)
                c = rhs.coeff(0, 0, 0)
                if c.is_zero():
                    self.error("division by zero", op)
                v = v.scale(c.inverse())
        return v

    def power(self) -> PhasePoly:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            t = self.peek()
            if t.kind == "op" and t.text == "-":
                self.error("negative exponents are not polynomial", t)
            if t.kind != "num":
                self.error("exponent must be a nonnegative integer literal", t)
            self.take()
            e = int(t.text)
            base = base ** e if e else PhasePoly.const(1)
        return base

    def atom(self) -> PhasePoly:
        t = self.take()
        if t.kind == "num":
            return PhasePoly.const(mpq(int(t.text)))
        if t.kind == "sym":
            if self.peek().kind == "op" and self.peek().text == "(":
                self.error(f"function call {t.text}(...) is not polynomial", t)
            return self.resolve(t)
        if t.kind == "op" and t.text == "(":
            v = self.expr()
            if self.peek().kind != "op" or self.peek().text != ")":
                self.error("expected ')'")
            self.take()
            return v
        self.error(f"unexpected {t.text or 'end of input'!r}", t)


def _phase_or_param(allowed: set[str] | None, line, lam_value=None):
    def resolve(tok: _Tok) -> PhasePoly:
        name = tok.text
        if name in sy.PHASE_NAMES:
            return PhasePoly.var(name)
        if name == sy.LAMBDA_NAME and lam_value is not None:
            return PhasePoly.const(lam_value)
        if allowed is not None and name not in allowed:
            raise ParseError(f"unknown symbol {name!r}", line, tok.col)
        return PhasePoly.const(CoefFrac.symbol(name))
    return resolve


def parse_expression(text: str, allowed: set[str] | None = None) -> PhasePoly:
    """Parse a polynomial in x, y, z with coefficients in Q(parameters)."""
    return _Parser(text, _phase_or_param(allowed, None)).parse()


def parse_coef(text: str, allowed: set[str] | None = None) -> CoefFrac:
    """Parse a parameter expression (no x, y, z), allowing division."""
    p = parse_expression(text, allowed)
    if any(sum(m) for m in p.terms):
        raise ParseError("coefficient expression contains phase variables")
    return p.coeff(0, 0, 0)


def parse_assignments(text: str) -> dict[str, CoefFrac]:
    """Parse ``sym=value,sym=value`` into a substitution map."""
    out: dict[str, CoefFrac] = {}
    if not text.strip():
        return out
    for part in _split_top(text, ","):
        if "=" not in part:
            raise ParseError(f"expected sym=value, got {part!r}")
        k, v = part.split("=", 1)
        k = k.strip()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", k) or k in sy.PHASE_NAMES:
            raise ParseError(f"invalid symbol {k!r}")
        out[k] = parse_coef(v)
    return out


def _split_top(text: str, sep: str) -> list[str]:
    depth, cur, out = 0, [], []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [s for s in out if s.strip()]


# -- system files --------------------------------------------------------------

@dataclass(frozen=True)
class SystemSpec:
    name: str
    lam: CoefFrac
    params: tuple[str, ...]
    dx: PhasePoly
    dy: PhasePoly
    dz: PhasePoly


def _strip_comment(line: str) -> str:
    out, inq = [], False
    for ch in line:
        if ch == '"':
            inq = not inq
        if ch == "#" and not inq:
            break
        out.append(ch)
    return "".join(out)


def parse_system_spec(text: str) -> SystemSpec:
    name = ""
    lam_text = None
    lam_line = None
    params: list[str] = []
    rhs: dict[str, tuple[str, int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        stripped = line.strip()
        col0 = line.index(stripped[0]) + 1
        m = re.fullmatch(r'system\s+"([^"]*)"\s*', stripped)
        if m:
            name = m.group(1)
            continue
        if stripped.startswith("system"):
            raise ParseError('expected system "<name>"', lineno, col0)
        m = re.fullmatch(r"params\b(.*)", stripped)
        if m:
            for p in m.group(1).split():
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", p):
                    raise ParseError(f"invalid parameter name {p!r}", lineno,
                                     col0 + stripped.index(p))
                if p in sy.PHASE_NAMES or p == sy.LAMBDA_NAME:
                    raise ParseError(f"parameter {p!r} clashes with a reserved name", lineno,
                                     col0 + stripped.index(p))
                if p in params:
                    raise ParseError(f"duplicate parameter {p!r}", lineno,
                                     col0 + stripped.index(p))
                params.append(p)
            continue
        offset = col0
        for piece in stripped.split(";"):
            if not piece.strip():
                offset += len(piece) + 1
                continue
            m = re.match(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*=", piece)
            if not m:
                raise ParseError("expected 'key = value'", lineno, offset)
            key = m.group(1)
            value = piece[m.end():]
            vcol = offset + m.end()
            if key == "lambda":
                lam_text, lam_line = (value, lineno, vcol), lineno
            elif key in ("dx", "dy", "dz"):
                if key in rhs:
                    raise ParseError(f"{key} given twice", lineno, offset)
                rhs[key] = (value, lineno, vcol)
            else:
                raise ParseError(f"unknown key {key!r}", lineno, offset)
            offset += len(piece) + 1
    for key in ("dx", "dy", "dz"):
        if key not in rhs:
            raise ParseError(f"missing {key}")
    if lam_text is None:
        raise ParseError("missing lambda")
    sy.register(*params)
    value, lineno, vcol = lam_text
    lam_tok = value.strip()
    if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", lam_tok) and lam_tok not in params:
        if lam_tok in sy.PHASE_NAMES:
            raise ParseError("lambda cannot be a phase variable", lineno, vcol)
        lam = CoefFrac.symbol(lam_tok)
        lam_value = None
        allowed = set(params) | {lam_tok}
    else:
        lam_poly = _Parser(value, _phase_or_param(set(params), lineno), lineno, vcol).parse()
        if any(sum(m) for m in lam_poly.terms):
            raise ParseError("lambda must not involve x, y, z", lineno, vcol)
        lam = lam_poly.coeff(0, 0, 0)
        lam_value = lam
        allowed = set(params)
    if lam.is_zero():
        raise ParseError("lambda must be nonzero", lam_line, vcol)
    polys = {}
    for key, (value, lineno, vcol) in rhs.items():
        polys[key] = _Parser(value, _phase_or_param(allowed, lineno, lam_value), lineno,
                             vcol).parse()
    return SystemSpec(name, lam, tuple(params), polys["dx"], polys["dy"], polys["dz"])


_LINEAR = {"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)}


def _monomial_text(m) -> str:
    return _phase_mono(m) or "1"


def system_from_spec(spec: SystemSpec) -> VectorField3:
    lam = spec.lam
    expected = {
        "dx": {(0, 1, 0): CoefFrac.const(1)},
        "dy": {},
        "dz": {(0, 0, 1): -lam},
    }
    parts = {}
    for key, poly in (("dx", spec.dx), ("dy", spec.dy), ("dz", spec.dz)):
        low = {m: c for m, c in poly.terms.items() if sum(m) <= 1}
        want = expected[key]
        for m in sorted(set(low) | set(want), reverse=True):
            got = low.get(m, CoefFrac())
            if got != want.get(m, CoefFrac()):
                what = _monomial_text(m)
                raise ParseError(
                    f"wrong linear part in {key}: term {what} has coefficient "
                    f"{format_coef(got)}, expected {format_coef(want.get(m, CoefFrac()))}")
        parts[key] = PhasePoly({m: c for m, c in poly.terms.items() if sum(m) >= 2})
    return VectorField3(parts["dx"], parts["dy"], parts["dz"], lam, spec.params, spec.name)


def parse_system(text: str) -> VectorField3:
    """Parse a system file into a canonical :class:`VectorField3`."""
    return system_from_spec(parse_system_spec(text))


def load_system(path) -> VectorField3:
    with open(path, encoding="utf-8") as fh:
        return parse_system(fh.read())


def format_system(X: VectorField3) -> str:
    lines = []
    if X.name:
        lines.append(f'system "{X.name}"')
    lam = format_coef(X.lam)
    lines.append(f"lambda = {lam}")
    params = list(X.params)
    extra = [v for v in _field_variables(X) if v not in params and v != lam]
    if params or extra:
        lines.append("params " + " ".join(params + extra))
    dx, dy, dz = X.full()
    lines.append(f"dx = {format_phasepoly(dx)}")
    lines.append(f"dy = {format_phasepoly(dy)}")
    lines.append(f"dz = {format_phasepoly(dz)}")
    return "\n".join(lines) + "\n"


def _field_variables(X: VectorField3) -> list[str]:
    return [sy.name_of(s) for s in sorted(X.slots(), key=sy.rank)]


# -- printing --------------------------------------------------------------------

def _format_rational(c: mpq) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _param_mono(m: int) -> str:
    parts = []
    for s, e in sy.canonical_exponents(m):
        n = sy.name_of(s)
        parts.append(n if e == 1 else f"{n}^{e}")
    return "*".join(parts)


def format_parampoly(p: ParamPoly) -> str:
    """Expanded form, graded lex in canonical symbol order, descending."""
    if p.is_zero():
        return "0"
    items = sorted(p.terms.items(), key=lambda mc: sy.mono_sort_key(mc[0]), reverse=True)
    out = []
    for idx, (m, c) in enumerate(items):
        neg = c < 0
        a = -c if neg else c
        mono = _param_mono(m)
        if not mono:
            body = _format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_rational(a)}*{mono}"
        if idx == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("-" if neg else "+") + body)
    return "".join(out)


def _is_atomic(p: ParamPoly) -> bool:
    return len(p.terms) <= 1


def format_coef(c: CoefFrac) -> str:
    if c.den.is_one():
        return format_parampoly(c.num)
    num = format_parampoly(c.num)
    den = format_parampoly(c.den)
    if not _is_atomic(c.num):
        num = f"({num})"
    # a bare power of one symbol is the only denominator safe without parentheses
    if (not _is_atomic(c.den) or c.den.leading()[1] != 1
            or len(sy.canonical_exponents(c.den.leading()[0])) != 1):
        den = f"({den})"
    return f"{num}/{den}"


def _phase_mono(m) -> str:
    parts = []
    for v, e in zip(("x", "y", "z"), m):
        if e:
            parts.append(v if e == 1 else f"{v}^{e}")
    return "*".join(parts)


def format_phasepoly(p: PhasePoly) -> str:
    """Expanded form, graded lex with x > y > z, descending."""
    if p.is_zero():
        return "0"
    out = []
    for idx, (m, c) in enumerate(p.items_sorted()):
        mono = _phase_mono(m)
        if c.den.is_one() and _is_atomic(c.num):
            (pm, pc), = c.num.terms.items()
            neg = pc < 0
            a = -pc if neg else pc
            pieces = []
            if a != 1 or (not pm and not mono):
                pieces.append(_format_rational(a))
            if pm:
                pieces.append(_param_mono(pm))
            if mono:
                pieces.append(mono)
            body = "*".join(pieces)
            sign = "-" if neg else ("+" if idx else "")
        else:
            cs = format_coef(c)
            body = f"({cs})" + (f"*{mono}" if mono else "")
            sign = "+" if idx else ""
        out.append(sign + body)
    return "".join(out)


def print_canonical(v) -> str:
    """Canonical text of any algebra value."""
    if isinstance(v, PhasePoly):
        return format_phasepoly(v)
    if isinstance(v, CoefFrac):
        return format_coef(v)
    if isinstance(v, ParamPoly):
        return format_parampoly(v)
    if isinstance(v, VectorField3):
        return format_system(v)
    if isinstance(v, mpq):
        return _format_rational(v)
    if isinstance(v, int):
        return str(v)
    raise TypeError(f"cannot print {type(v).__name__}")
