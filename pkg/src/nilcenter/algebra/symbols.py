"""Symbol interning and packed monomial keys for parameter polynomials.

Every parameter symbol gets a slot in a process-wide, append-only table.  A
monomial in the parameters is stored as a single Python int holding one
16-bit exponent per slot, so monomial multiplication is integer addition.
The top bit of each slot is a guard bit used by the divisibility test, which
limits exponents to 32767.

The *canonical* order used for printing and for choosing leading terms is
independent of slot numbers and of registration history: ordinary parameters
first (by name, digit runs compared as numbers), then ``lambda``, then ``eps``, then kernel unknowns ``v0k1`` / ``v0k0`` and
finally perturbation unknowns ``gi_jk``.
"""
from __future__ import annotations

import re
import threading
from functools import lru_cache

SLOT_BITS = 16
SLOT_MASK = (1 << SLOT_BITS) - 1
MAX_EXPONENT = (1 << (SLOT_BITS - 1)) - 1

PHASE_NAMES = ("x", "y", "z")
LAMBDA_NAME = "lambda"
EPSILON_NAME = "eps"

_KERNEL_RE = re.compile(r"^v0(?:(\d)|_(\d+)_)1$")
_PLANAR_KERNEL_RE = re.compile(r"^v0(?:(\d)|_(\d+)_)0$")
_PERT_RE = re.compile(r"^g([12])_(\d)(\d)$")
_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")

_lock = threading.Lock()
_names: list[str] = []
_slots: dict[str, int] = {}


def _natural(name: str) -> tuple[int, ...]:
    # flat int encoding of a natural sort key: digit runs compare as numbers,
    # the 0 terminator keeps prefixes first, raw codes break "a2"/"a002" ties
    out = []
    for t in re.findall(r"\d+|\D", name):
        out += (1, int(t)) if t.isdigit() else (2, ord(t))
    return (*out, 0, *map(ord, name))


def _kind_key(name: str) -> tuple:
    m = _KERNEL_RE.match(name)
    if m:
        k = int(m.group(1) or m.group(2))
        return (3, k, 0, 0)
    m = _PLANAR_KERNEL_RE.match(name)
    if m:
        return (3, int(m.group(1) or m.group(2)), 1, 0)
    m = _PERT_RE.match(name)
    if m:
        return (4, int(m.group(1)), int(m.group(2)), int(m.group(3)))
    if name == LAMBDA_NAME:
        return (1, 0, 0, 0)
    if name == EPSILON_NAME:
        return (2, 0, 0, 0)
    return (0, *_natural(name))


def slot(name: str) -> int:
    """Return the slot index of ``name``, registering it if new."""
    s = _slots.get(name)
    if s is not None:
        return s
    if name in PHASE_NAMES:
        raise ValueError(f"{name!r} is a phase variable, not a parameter")
    if not _NAME_RE.match(name):
        raise ValueError(f"invalid symbol name {name!r}")
    with _lock:
        s = _slots.get(name)
        if s is None:
            s = len(_names)
            _names.append(name)
            _slots[name] = s
    return s


def name_of(slot_index: int) -> str:
    return _names[slot_index]


def register(*names: str) -> None:
    """Intern symbols up front (validates the names)."""
    for n in names:
        slot(n)


_rank_cache: dict[int, tuple] = {}


def rank(slot_index: int) -> tuple:
    """Sort key of a slot under the canonical symbol order."""
    r = _rank_cache.get(slot_index)
    if r is None:
        r = _kind_key(_names[slot_index])
        _rank_cache[slot_index] = r
    return r


def kernel_symbol(k: int) -> str:
    """Name of the unknown coefficient of ``y^k z`` in a multiplier jet."""
    name = f"v0{k}1" if k < 10 else f"v0_{k}_1"
    slot(name)
    return name


def is_kernel_symbol(name: str) -> bool:
    """True for 3D kernel unknowns ``v0k1`` and planar ones ``v0k0``."""
    return bool(_KERNEL_RE.match(name) or _PLANAR_KERNEL_RE.match(name))


def planar_kernel_symbol(k: int) -> str:
    """Name of the unknown coefficient of ``y^k`` in a planar factor jet."""
    name = f"v0{k}0" if k < 10 else f"v0_{k}_0"
    slot(name)
    return name


def perturbation_symbol(i: int, j: int, k: int) -> str:
    if j > 9 or k > 9:
        raise ValueError("perturbation degree above 9 is not supported")
    name = f"g{i}_{j}{k}"
    slot(name)
    return name


def is_perturbation_symbol(name: str) -> bool:
    return bool(_PERT_RE.match(name))


# -- packed monomials -------------------------------------------------------

def pack(exps: dict[int, int]) -> int:
    m = 0
    for s, e in exps.items():
        if e < 0 or e > MAX_EXPONENT:
            raise OverflowError(f"exponent {e} out of range")
        m |= e << (SLOT_BITS * s)
    return m


def unpack(m: int) -> dict[int, int]:
    out = {}
    s = 0
    while m:
        e = m & SLOT_MASK
        if e:
            out[s] = e
        m >>= SLOT_BITS
        s += 1
    return out


def var_monomial(slot_index: int, e: int = 1) -> int:
    return e << (SLOT_BITS * slot_index)


def exponent(m: int, slot_index: int) -> int:
    return (m >> (SLOT_BITS * slot_index)) & SLOT_MASK


def degree(m: int) -> int:
    d = 0
    while m:
        d += m & SLOT_MASK
        m >>= SLOT_BITS
    return d


@lru_cache(maxsize=None)
def _guard(nslots: int) -> int:
    g = 0
    for s in range(nslots):
        g |= 1 << (SLOT_BITS * s + SLOT_BITS - 1)
    return g


def divides(a: int, b: int) -> bool:
    """True when monomial ``a`` divides monomial ``b``."""
    if a == 0:
        return True
    n = (max(a, b).bit_length() + SLOT_BITS - 1) // SLOT_BITS
    g = _guard(n)
    return ((b | g) - a) & g == g


def mono_min(a: int, b: int) -> int:
    """Slot-wise minimum (gcd of two monomials)."""
    out = 0
    shift = 0
    while a and b:
        ea, eb = a & SLOT_MASK, b & SLOT_MASK
        out |= min(ea, eb) << shift
        a >>= SLOT_BITS
        b >>= SLOT_BITS
        shift += SLOT_BITS
    return out


def canonical_exponents(m: int) -> list[tuple[int, int]]:
    """``(slot, exponent)`` pairs of ``m`` sorted by canonical rank."""
    return sorted(unpack(m).items(), key=lambda se: rank(se[0]))


def mono_sort_key(m: int) -> tuple:
    """Graded-lex key under the canonical order (larger = printed first)."""
    exps = unpack(m)
    total = sum(exps.values())
    order = sorted(exps, key=rank)
    # lex: compare exponents of the highest-ranked symbols first; encode as the
    # sequence of negated ranks paired with exponents
    return (total, tuple((_neg(rank(s)), e) for s, e in ((s, exps[s]) for s in order)))


def _neg(r: tuple) -> tuple:
    return tuple(-v for v in r)
