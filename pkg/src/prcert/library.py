"""Named map codes used in examples, predicates and proofs."""

from __future__ import annotations

from functools import lru_cache

from .syntax import (
    NAT, SUCC, ZERO, Bang, Comp, Id, Iter, MapTerm, ObjTerm, ProjL, ProjR,
    Sub, compose, pair,
)


def constant(n: int, obj: ObjTerm) -> MapTerm:
    """The constant map ``A -> N`` with value ``n``: ``s^n o 0 o !_A``."""
    acc: MapTerm = Comp(ZERO, Bang(obj))
    for _ in range(n):
        acc = Comp(SUCC, acc)
    return acc


def true_pred(obj: ObjTerm) -> MapTerm:
    """Predicate that holds everywhere on ``obj``."""
    return constant(1, obj)


@lru_cache(maxsize=None)
def pred() -> MapTerm:
    """Predecessor ``l o <r, s o r>^S o <<0,0> o !, id>``, with ``pred 0 = 0``."""
    shift = pair(ProjR(NAT, NAT), Comp(SUCC, ProjR(NAT, NAT)))
    start = pair(Comp(pair(ZERO, ZERO), Bang(NAT)), Id(NAT))
    return compose(ProjL(NAT, NAT), Iter(shift), start)


@lru_cache(maxsize=None)
def monus() -> MapTerm:
    """Truncated subtraction ``a - n`` on ``<a;n>``."""
    return Iter(pred())


@lru_cache(maxsize=None)
def add() -> MapTerm:
    return Iter(SUCC)


@lru_cache(maxsize=None)
def not_() -> MapTerm:
    """``1 - n``: truth values swap, any positive input is sent to 0."""
    return Comp(monus(), pair(constant(1, NAT), Id(NAT)))


@lru_cache(maxsize=None)
def even() -> MapTerm:
    return Comp(Iter(not_()), pair(constant(1, NAT), Id(NAT)))


@lru_cache(maxsize=None)
def lt2() -> MapTerm:
    """``n < 2`` as a 0/1 predicate."""
    return Comp(not_(), pred())


@lru_cache(maxsize=None)
def two() -> ObjTerm:
    return Sub(NAT, lt2())


NAMED = {
    "pred": pred,
    "monus": monus,
    "add": add,
    "not": not_,
    "even": even,
    "lt2": lt2,
}

__all__ = ["constant", "true_pred", "pred", "monus", "add", "not_", "even", "lt2", "two", "NAMED"]
