"""Polynomials over the naturals in one indeterminate w, ordered degree first.

An element ``a_k*w^k + ... + a_1*w + a_0`` is stored little-endian as the
tuple ``(a_0, a_1, ..., a_k)`` with trailing zeros trimmed, so the zero
element is the empty tuple.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import total_ordering
from typing import Iterable, Sequence


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@total_ordering
@dataclass(frozen=True)
class OrdinalPoly:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        if any((not isinstance(c, int)) or c < 0 for c in self.coeffs):
            raise ValueError(f"coefficients must be naturals: {self.coeffs!r}")
        if self.coeffs and self.coeffs[-1] == 0:
            object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for zero."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other: OrdinalPoly) -> OrdinalPoly:
        return add(self, other)

    def __lt__(self, other: OrdinalPoly) -> bool:
        if not isinstance(other, OrdinalPoly):
            return NotImplemented
        return cmp(self, other) is Ordering.LESS

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"OrdinalPoly({render(self)!r})"


ZERO = OrdinalPoly(())


def from_nat(n: int) -> OrdinalPoly:
    if n < 0:
        raise ValueError("from_nat expects a natural number")
    return OrdinalPoly((n,)) if n else ZERO


def omega() -> OrdinalPoly:
    return OrdinalPoly((0, 1))


def add(a: OrdinalPoly, b: OrdinalPoly) -> OrdinalPoly:
    x, y = a.coeffs, b.coeffs
    if not y:
        return a
    if not x:
        return b
    if len(x) < len(y):
        x, y = y, x
    if len(y) == 1:
        summed = (x[0] + y[0],) + x[1:]
    else:
        summed = tuple([p + q for p, q in zip(x, y)]) + x[len(y):]
    # sums of trimmed naturals are trimmed; skip re-validation
    out = object.__new__(OrdinalPoly)
    out.__dict__["coeffs"] = summed
    return out


def mul_nat(a: OrdinalPoly, n: int) -> OrdinalPoly:
    if n < 0:
        raise ValueError("mul_nat expects a natural factor")
    if n == 0:
        return ZERO
    return OrdinalPoly(tuple(c * n for c in a.coeffs))


def mul_omega(a: OrdinalPoly) -> OrdinalPoly:
    if a.is_zero():
        return ZERO
    return OrdinalPoly((0,) + a.coeffs)


def cmp(a: OrdinalPoly, b: OrdinalPoly) -> Ordering:
    x, y = a.coeffs, b.coeffs
    if len(x) != len(y):
        return Ordering.LESS if len(x) < len(y) else Ordering.GREATER
    for cx, cy in zip(reversed(x), reversed(y)):
        if cx != cy:
            return Ordering.LESS if cx < cy else Ordering.GREATER
    return Ordering.EQUAL


def total(items: Iterable[OrdinalPoly]) -> OrdinalPoly:
    acc = ZERO
    for item in items:
        acc = add(acc, item)
    return acc


# Packed form: coefficient k occupies bits [k*PACK_BITS, (k+1)*PACK_BITS).  For
# coefficients below 2**(PACK_BITS // 2) this is injective, additive and
# order-preserving for sums of fewer than 2**(PACK_BITS // 2) terms, so bulk
# sums and comparisons can run on plain integers.
PACK_BITS = 128
_PACK_LIMIT = 1 << (PACK_BITS // 2)
_PACK_MASK = (1 << PACK_BITS) - 1


def pack(a: OrdinalPoly) -> int:
    out = 0
    for k, c in enumerate(a.coeffs):
        if c >= _PACK_LIMIT:
            raise OverflowError(f"coefficient {c} too large to pack")
        out |= c << (k * PACK_BITS)
    return out


def unpack(n: int) -> OrdinalPoly:
    if n < 0:
        raise ValueError("packed ordinals are nonnegative")
    coeffs = []
    while n:
        coeffs.append(n & _PACK_MASK)
        n >>= PACK_BITS
    return OrdinalPoly(tuple(coeffs))


def render(a: OrdinalPoly) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for k in range(len(a.coeffs) - 1, -1, -1):
        c = a.coeffs[k]
        if c == 0:
            continue
        if k == 0:
            parts.append(str(c))
        elif k == 1:
            parts.append(f"{c}*w")
        else:
            parts.append(f"{c}*w^{k}")
    return " + ".join(parts)


_TERM = re.compile(r"^(\d+)(?:\*w(?:\^(\d+))?)?$|^w(?:\^(\d+))?$")


def parse(text: str) -> OrdinalPoly:
    """Inverse of :func:`render`; also accepts bare ``w`` and ``w^k``."""
    src = text.replace(" ", "")
    if not src:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    for chunk in src.split("+"):
        m = _TERM.match(chunk)
        if m is None:
            raise ValueError(f"bad polynomial term {chunk!r} in {text!r}")
        if m.group(1) is not None:
            c = int(m.group(1))
            if "*w" in chunk:
                k = int(m.group(2)) if m.group(2) else 1
            else:
                k = 0
        else:
            c = 1
            k = int(m.group(3)) if m.group(3) else 1
        coeffs[k] = coeffs.get(k, 0) + c
    size = max(coeffs) + 1
    return OrdinalPoly(_trim(coeffs.get(i, 0) for i in range(size)))


def from_coeffs(coeffs: Sequence[int]) -> OrdinalPoly:
    return OrdinalPoly(_trim(coeffs))
