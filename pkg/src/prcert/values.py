"""The universal value object: nested pairs of number singletons, plus bot and box.

Every object of the theory embeds into this universe: ``1`` as ``<0>``,
``N`` as the singletons ``<n>``, products as pairs, and predicate
abstractions as the members of their base cut out by the predicate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Union

from .syntax import Nat, ObjTerm, Prod, Sub, Unit


@dataclass(frozen=True)
class Bot:
    """Undefined value; absorbs every evaluation."""

    def __repr__(self):
        return "BOT"


@dataclass(frozen=True)
class Box:
    """Dummy placeholder for a not yet known argument."""

    def __repr__(self):
        return "BOX"


@dataclass(frozen=True)
class Single:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"singleton must hold a natural, got {self.n!r}")


@dataclass(frozen=True)
class Pair:
    a: "XValue"
    b: "XValue"

    def __post_init__(self):
        for part in (self.a, self.b):
            if not isinstance(part, (Single, Pair)):
                raise ValueError(f"pair components must be proper values, got {part!r}")

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(("pair", self.a, self.b))
            object.__setattr__(self, "_hash", h)
        return h


BOT = Bot()
BOX = Box()

XValue = Union[Bot, Box, Single, Pair]


def is_bot(x) -> bool:
    return isinstance(x, Bot)


def is_box(x) -> bool:
    return isinstance(x, Box)


def is_proper(x) -> bool:
    return isinstance(x, (Single, Pair))


def encode_tuple(ns: Sequence[int]) -> XValue:
    """Right-nested encoding ``<n1;<n2;...>>``; a single number gives ``<n>``."""
    if not ns:
        raise ValueError("encode_tuple needs a nonempty sequence")
    acc: XValue = Single(ns[-1])
    for n in reversed(ns[:-1]):
        acc = Pair(Single(n), acc)
    return acc


def render_value(x: XValue) -> str:
    if isinstance(x, Bot):
        return "bot"
    if isinstance(x, Box):
        return "box"
    if isinstance(x, Single):
        return f"<{x.n}>"
    return f"<{_component(x.a)};{_component(x.b)}>"


def _component(x: XValue) -> str:
    # inside a pair, singletons print as bare numbers
    return str(x.n) if isinstance(x, Single) else render_value(x)


_VTOKEN = re.compile(r"\s*(bot|box|\d+|[<>;])")


def parse_value(text: str) -> XValue:
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _VTOKEN.match(stripped, pos)
        if m is None:
            raise ValueError(f"bad value syntax at position {pos}: {text!r}")
        tokens.append(m.group(1))
        pos = m.end()
    i = 0

    def expect(tok):
        nonlocal i
        if i >= len(tokens) or tokens[i] != tok:
            got = tokens[i] if i < len(tokens) else "end of input"
            raise ValueError(f"expected {tok!r}, got {got!r} in {text!r}")
        i += 1

    def value(top: bool) -> XValue:
        nonlocal i
        if i >= len(tokens):
            raise ValueError(f"unexpected end of value {text!r}")
        tok = tokens[i]
        if tok in ("bot", "box"):
            if not top:
                raise ValueError(f"{tok} cannot occur inside a pair: {text!r}")
            i += 1
            return BOT if tok == "bot" else BOX
        if tok.isdigit():
            if top:
                raise ValueError(f"bare number outside brackets in {text!r}")
            i += 1
            return Single(int(tok))
        expect("<")
        left = value(False)
        if isinstance(left, Single) and tokens[i:i + 1] == [">"]:
            i += 1
            return left
        expect(";")
        right = value(False)
        expect(">")
        return Pair(left, right)

    out = value(True)
    if i != len(tokens):
        raise ValueError(f"trailing input in value {text!r}")
    return out


class Membership(Enum):
    IN = "in"
    OUT = "out"
    UNKNOWN = "unknown"


DEFAULT_MEMBER_FUEL = 10**6


def member(obj: ObjTerm, x: XValue, fuel: int = DEFAULT_MEMBER_FUEL) -> Membership:
    """Is ``x`` in the image of ``obj``?  UNKNOWN only if a predicate runs out of fuel."""
    if not is_proper(x):
        return Membership.OUT
    if isinstance(obj, Unit):
        return Membership.IN if x == Single(0) else Membership.OUT
    if isinstance(obj, Nat):
        return Membership.IN if isinstance(x, Single) else Membership.OUT
    if isinstance(obj, Prod):
        if not isinstance(x, Pair):
            return Membership.OUT
        left = member(obj.left, x.a, fuel)
        if left is Membership.OUT:
            return left
        right = member(obj.right, x.b, fuel)
        if right is Membership.OUT:
            return right
        return Membership.UNKNOWN if Membership.UNKNOWN in (left, right) else Membership.IN
    if isinstance(obj, Sub):
        base = member(obj.base, x, fuel)
        if base is not Membership.IN:
            return base
        from .evaluator import OracleExhausted, oracle_eval

        try:
            verdict = oracle_eval(obj.pred, x, budget=fuel)
        except OracleExhausted:
            return Membership.UNKNOWN
        return Membership.IN if is_truth(verdict) else Membership.OUT
    raise TypeError(f"not an object: {obj!r}")


def is_truth(x: XValue) -> bool:
    """Predicate values: ``<n>`` with ``n > 0`` is truth, anything else is falsity."""
    return isinstance(x, Single) and x.n > 0
