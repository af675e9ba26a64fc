"""Objects and map codes of primitive recursion with predicate abstraction.

Terms are immutable trees.  Map codes follow categorical notation:
``Comp(v, u)`` is ``v o u`` with ``u`` applied first, ``Cyl(A, v)`` is
``id_A x v`` and ``Iter(u)`` is the iterated ``u^S: A x N -> A``.

Concrete grammar (whitespace-insensitive)::

    objects  1 | N | (A*B) | {A|chi}
    maps     id[A] zero s bang[A] diag[A] swap[A,B] l[A,B] r[A,B]
             comp(v,u) cyl(A,v) iter(u) abstr(chi,u,psi)
    sugar    pair(f,g) times(f,g)

Sugar is expanded while parsing, so the printer only ever emits core forms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class TermTypeError(TypeError):
    """Raised when a map code does not type-check; ``term`` is the culprit."""

    def __init__(self, message: str, term=None):
        super().__init__(message)
        self.term = term


# --------------------------------------------------------------------------
# objects


class ObjTerm:
    __slots__ = ()


def _cached_hash(tag: str, *fields):
    # composite terms get hashed a lot during evaluation; remember the result
    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((tag, *(getattr(self, f) for f in fields)))
            object.__setattr__(self, "_hash", h)
        return h
    return __hash__


@dataclass(frozen=True)
class Unit(ObjTerm):
    pass


@dataclass(frozen=True)
class Nat(ObjTerm):
    pass


@dataclass(frozen=True)
class Prod(ObjTerm):
    left: ObjTerm
    right: ObjTerm

    __hash__ = _cached_hash("prod", "left", "right")


@dataclass(frozen=True)
class Sub(ObjTerm):
    """Predicate abstraction ``{base | pred}``."""

    base: ObjTerm
    pred: "MapTerm"

    __hash__ = _cached_hash("sub", "base", "pred")


UNIT = Unit()
NAT = Nat()


# --------------------------------------------------------------------------
# map codes


class MapTerm:
    __slots__ = ()


@dataclass(frozen=True)
class Id(MapTerm):
    obj: ObjTerm


@dataclass(frozen=True)
class Zero(MapTerm):
    pass


@dataclass(frozen=True)
class Succ(MapTerm):
    pass


@dataclass(frozen=True)
class Bang(MapTerm):
    obj: ObjTerm


@dataclass(frozen=True)
class Diag(MapTerm):
    obj: ObjTerm


@dataclass(frozen=True)
class Swap(MapTerm):
    left: ObjTerm
    right: ObjTerm


@dataclass(frozen=True)
class ProjL(MapTerm):
    left: ObjTerm
    right: ObjTerm


@dataclass(frozen=True)
class ProjR(MapTerm):
    left: ObjTerm
    right: ObjTerm


@dataclass(frozen=True)
class Comp(MapTerm):
    """``v o u``: first ``u``, then ``v``."""

    v: MapTerm
    u: MapTerm

    __hash__ = _cached_hash("comp", "v", "u")


@dataclass(frozen=True)
class Cyl(MapTerm):
    """``id_obj x v``."""

    obj: ObjTerm
    v: MapTerm

    __hash__ = _cached_hash("cyl", "obj", "v")


@dataclass(frozen=True)
class Iter(MapTerm):
    u: MapTerm

    __hash__ = _cached_hash("iter", "u")


@dataclass(frozen=True)
class Abstr(MapTerm):
    """Core map ``u`` restricted to ``{A|chi} -> {B|psi}``."""

    chi: MapTerm
    u: MapTerm
    psi: MapTerm

    __hash__ = _cached_hash("abstr", "chi", "u", "psi")


ZERO = Zero()
SUCC = Succ()

BASIC = (Zero, Succ, Bang, Diag, Swap, ProjL, ProjR)

Term = Union[MapTerm, ObjTerm]


# --------------------------------------------------------------------------
# typing


def typecheck(t: MapTerm) -> tuple[ObjTerm, ObjTerm]:
    """Return ``(dom, cod)`` of a map code, raising :class:`TermTypeError`."""
    cached = getattr(t, "_ty", None)
    if cached is not None:
        return cached
    ty = _typecheck(t)
    object.__setattr__(t, "_ty", ty)
    return ty


def _is_predicate_cod(obj: ObjTerm) -> bool:
    # Predicates are maps into N whose values are read through sign; the
    # truth object 2 is itself {N | lt2}, so both are accepted as targets.
    return obj == NAT or (isinstance(obj, Sub) and obj.base == NAT)


def check_object(obj: ObjTerm) -> None:
    if isinstance(obj, (Unit, Nat)):
        return
    if isinstance(obj, Prod):
        check_object(obj.left)
        check_object(obj.right)
        return
    if isinstance(obj, Sub):
        check_object(obj.base)
        dom, cod = typecheck(obj.pred)
        if dom != obj.base or not _is_predicate_cod(cod):
            raise TermTypeError(
                f"predicate {render(obj.pred)} : {render(dom)} -> {render(cod)} "
                f"cannot cut out a subobject of {render(obj.base)}",
                obj.pred,
            )
        return
    raise TermTypeError(f"not an object: {obj!r}", obj)


def _typecheck(t: MapTerm) -> tuple[ObjTerm, ObjTerm]:
    if isinstance(t, Id):
        check_object(t.obj)
        return t.obj, t.obj
    if isinstance(t, Zero):
        return UNIT, NAT
    if isinstance(t, Succ):
        return NAT, NAT
    if isinstance(t, Bang):
        check_object(t.obj)
        return t.obj, UNIT
    if isinstance(t, Diag):
        check_object(t.obj)
        return t.obj, Prod(t.obj, t.obj)
    if isinstance(t, Swap):
        check_object(t.left)
        check_object(t.right)
        return Prod(t.left, t.right), Prod(t.right, t.left)
    if isinstance(t, ProjL):
        check_object(t.left)
        check_object(t.right)
        return Prod(t.left, t.right), t.left
    if isinstance(t, ProjR):
        check_object(t.left)
        check_object(t.right)
        return Prod(t.left, t.right), t.right
    if isinstance(t, Comp):
        dv, cv = typecheck(t.v)
        du, cu = typecheck(t.u)
        if cu != dv:
            raise TermTypeError(
                f"cannot compose {render(t.v)} after {render(t.u)}: "
                f"{render(cu)} != {render(dv)}",
                t,
            )
        return du, cv
    if isinstance(t, Cyl):
        check_object(t.obj)
        dv, cv = typecheck(t.v)
        return Prod(t.obj, dv), Prod(t.obj, cv)
    if isinstance(t, Iter):
        du, cu = typecheck(t.u)
        if du != cu:
            raise TermTypeError(f"iterated body {render(t.u)} is not an endomap", t)
        return Prod(du, NAT), du
    if isinstance(t, Abstr):
        dchi, cchi = typecheck(t.chi)
        du, cu = typecheck(t.u)
        dpsi, cpsi = typecheck(t.psi)
        if not (_is_predicate_cod(cchi) and _is_predicate_cod(cpsi)):
            raise TermTypeError(f"abstraction predicates must target 2 in {render(t)}", t)
        if dchi != du or cu != dpsi:
            raise TermTypeError(f"core of {render(t)} does not match its predicates", t)
        return Sub(dchi, t.chi), Sub(dpsi, t.psi)
    raise TermTypeError(f"not a map code: {t!r}", t)


def dom(t: MapTerm) -> ObjTerm:
    return typecheck(t)[0]


def cod(t: MapTerm) -> ObjTerm:
    return typecheck(t)[1]


def is_well_typed(t: MapTerm) -> bool:
    try:
        typecheck(t)
    except TermTypeError:
        return False
    return True


def depth(t: MapTerm) -> int:
    if isinstance(t, Id):
        return 0
    if isinstance(t, BASIC):
        return 1
    if isinstance(t, Comp):
        return depth(t.u) + depth(t.v) + 1
    if isinstance(t, (Cyl,)):
        return depth(t.v) + 1
    if isinstance(t, Iter):
        return depth(t.u) + 1
    if isinstance(t, Abstr):
        return depth(t.u)
    raise TypeError(f"not a map code: {t!r}")


def size(t: Term) -> int:
    """Number of constructor nodes, objects included."""
    if isinstance(t, (Unit, Nat, Zero, Succ)):
        return 1
    if isinstance(t, Prod):
        return 1 + size(t.left) + size(t.right)
    if isinstance(t, Sub):
        return 1 + size(t.base) + size(t.pred)
    if isinstance(t, (Id, Bang, Diag)):
        return 1 + size(t.obj)
    if isinstance(t, (Swap, ProjL, ProjR)):
        return 1 + size(t.left) + size(t.right)
    if isinstance(t, Comp):
        return 1 + size(t.v) + size(t.u)
    if isinstance(t, Cyl):
        return 1 + size(t.obj) + size(t.v)
    if isinstance(t, Iter):
        return 1 + size(t.u)
    if isinstance(t, Abstr):
        return 1 + size(t.chi) + size(t.u) + size(t.psi)
    raise TypeError(f"not a term: {t!r}")


# --------------------------------------------------------------------------
# sugar


def times_id(f: MapTerm, other: ObjTerm) -> MapTerm:
    """``f x id_other`` as ``swap o (id x f) o swap``."""
    a, b = typecheck(f)
    return Comp(Swap(other, b), Comp(Cyl(other, f), Swap(a, other)))


def times(f: MapTerm, g: MapTerm) -> MapTerm:
    """``f x g`` as ``(id x g) o (f x id)``; identity factors are dropped."""
    a, b = typecheck(f)
    c, _ = typecheck(g)
    if isinstance(f, Id):
        return Cyl(a, g)
    if isinstance(g, Id):
        return times_id(f, c)
    return Comp(Cyl(b, g), times_id(f, c))


def pair(f: MapTerm, g: MapTerm) -> MapTerm:
    """Induced map ``<f, g> = (f x g) o diag``."""
    a, _ = typecheck(f)
    a2, _ = typecheck(g)
    if a != a2:
        raise TermTypeError(f"pair components have different domains: {render(a)} vs {render(a2)}")
    return Comp(times(f, g), Diag(a))


def compose(*maps: MapTerm) -> MapTerm:
    """Right-nested composite; ``compose(f, g, h) = f o (g o h)``."""
    if not maps:
        raise ValueError("compose needs at least one map")
    acc = maps[-1]
    for m in reversed(maps[:-1]):
        acc = Comp(m, acc)
    return acc


# --------------------------------------------------------------------------
# printing


def render(t: Term) -> str:
    if isinstance(t, Unit):
        return "1"
    if isinstance(t, Nat):
        return "N"
    if isinstance(t, Prod):
        return f"({render(t.left)}*{render(t.right)})"
    if isinstance(t, Sub):
        return f"{{{render(t.base)}|{render(t.pred)}}}"
    if isinstance(t, Id):
        return f"id[{render(t.obj)}]"
    if isinstance(t, Zero):
        return "zero"
    if isinstance(t, Succ):
        return "s"
    if isinstance(t, Bang):
        return f"bang[{render(t.obj)}]"
    if isinstance(t, Diag):
        return f"diag[{render(t.obj)}]"
    if isinstance(t, Swap):
        return f"swap[{render(t.left)},{render(t.right)}]"
    if isinstance(t, ProjL):
        return f"l[{render(t.left)},{render(t.right)}]"
    if isinstance(t, ProjR):
        return f"r[{render(t.left)},{render(t.right)}]"
    if isinstance(t, Comp):
        return f"comp({render(t.v)}, {render(t.u)})"
    if isinstance(t, Cyl):
        return f"cyl({render(t.obj)}, {render(t.v)})"
    if isinstance(t, Iter):
        return f"iter({render(t.u)})"
    if isinstance(t, Abstr):
        return f"abstr({render(t.chi)}, {render(t.u)}, {render(t.psi)})"
    raise TypeError(f"not a term: {t!r}")


# --------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z_0-9]*)|(\d+)|(\S))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        tok = m.group(1) or m.group(2) or m.group(3)
        if tok is None:
            pos = m.end()
            continue
        tokens.append((tok, m.start(m.lastindex)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def pos(self) -> int:
        return self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)

    def take(self) -> str:
        if self.i >= len(self.tokens):
            raise ParseError("unexpected end of input", len(self.text))
        tok = self.tokens[self.i][0]
        self.i += 1
        return tok

    def expect(self, tok: str) -> None:
        where = self.pos()
        got = self.take()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r}", where)

    def done(self) -> None:
        if self.i != len(self.tokens):
            raise ParseError(f"trailing input {self.peek()!r}", self.pos())

    def starts_object(self) -> bool:
        return self.peek() in ("1", "N", "(", "{")

    def term(self) -> Term:
        return self.obj() if self.starts_object() else self.map()

    def obj(self) -> ObjTerm:
        where = self.pos()
        tok = self.take()
        if tok == "1":
            return UNIT
        if tok == "N":
            return NAT
        if tok == "(":
            left = self.obj()
            self.expect("*")
            right = self.obj()
            self.expect(")")
            return Prod(left, right)
        if tok == "{":
            base = self.obj()
            self.expect("|")
            pred = self.map()
            self.expect("}")
            return Sub(base, pred)
        raise ParseError(f"expected an object, got {tok!r}", where)

    def obj_args(self, n: int) -> list[ObjTerm]:
        self.expect("[")
        out = [self.obj()]
        while len(out) < n:
            self.expect(",")
            out.append(self.obj())
        self.expect("]")
        return out

    def map_args(self) -> list[MapTerm]:
        self.expect("(")
        out = [self.map()]
        while self.peek() == ",":
            self.take()
            out.append(self.map())
        self.expect(")")
        return out

    def map(self) -> MapTerm:
        where = self.pos()
        tok = self.take()
        if tok == "zero":
            return ZERO
        if tok == "s":
            return SUCC
        if tok in ("id", "bang", "diag"):
            (a,) = self.obj_args(1)
            return {"id": Id, "bang": Bang, "diag": Diag}[tok](a)
        if tok in ("swap", "l", "r"):
            a, b = self.obj_args(2)
            return {"swap": Swap, "l": ProjL, "r": ProjR}[tok](a, b)
        if tok == "cyl":
            self.expect("(")
            a = self.obj()
            self.expect(",")
            v = self.map()
            self.expect(")")
            return Cyl(a, v)
        if tok in ("comp", "iter", "abstr", "pair", "times"):
            args = self.map_args()
            arity = {"iter": 1, "abstr": 3, "pair": 2, "times": 2}.get(tok)
            if tok == "comp":
                if len(args) < 2:
                    raise ParseError("comp takes at least 2 arguments", where)
                return compose(*args)
            if len(args) != arity:
                raise ParseError(f"{tok} takes {arity} argument(s), got {len(args)}", where)
            if tok == "iter":
                return Iter(args[0])
            if tok == "abstr":
                return Abstr(*args)
            try:
                return pair(*args) if tok == "pair" else times(*args)
            except TermTypeError as exc:
                raise ParseError(f"cannot expand {tok}: {exc}", where) from exc
        from . import library

        if tok in library.NAMED:
            return library.NAMED[tok]()
        raise ParseError(f"unknown map constant {tok!r}", where)


def parse(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.done()
    return t


def parse_map(text: str) -> MapTerm:
    p = _Parser(text)
    t = p.map()
    p.done()
    return t


def parse_obj(text: str) -> ObjTerm:
    p = _Parser(text)
    t = p.obj()
    p.done()
    return t


# --------------------------------------------------------------------------
# numeric codes (display only)


_TAGS = {
    Unit: 1, Nat: 2, Prod: 3, Sub: 4, Id: 5, Zero: 6, Succ: 7, Bang: 8, Diag: 9,
    Swap: 10, ProjL: 11, ProjR: 12, Comp: 13, Cyl: 14, Iter: 15, Abstr: 16,
}
_BASE = 17


def code_number(t: Term) -> int:
    """Injective natural-number code of a term.

    The constructor tags in prefix order, read as base-17 digits.  Every
    constructor has a fixed arity, so the prefix sequence determines the
    tree, and no digit is 0, so the sequence determines the number.
    """
    acc = 0
    stack: list[Term] = [t]
    while stack:
        node = stack.pop()
        acc = acc * _BASE + _TAGS[type(node)]
        stack.extend(reversed([getattr(node, f) for f in node.__dataclass_fields__]))
    return acc
