"""Seeded random generation of objects, well-typed map codes and values.

Nesting depth counts each constructor (and each sugar form) once; ``iter``
is nested at most ``max_iter`` deep and iteration counts come from small
arguments, which keeps evaluations at desk scale.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import library
from .syntax import (
    NAT, SUCC, UNIT, ZERO, Abstr, Bang, Comp, Cyl, Diag, Id, Iter, MapTerm,
    ObjTerm, Prod, ProjL, ProjR, Sub, Swap, pair,
)
from .values import BOT, BOX, Membership, Pair, Single, XValue, member

NN = Prod(NAT, NAT)

CATALOG: tuple[ObjTerm, ...] = (
    UNIT,
    NAT,
    NN,
    Prod(NAT, NN),
    Prod(NN, NAT),
    Prod(UNIT, NAT),
)

# objects used for membership tests; includes abstractions and a deeper product
MEMBER_CATALOG: tuple[ObjTerm, ...] = CATALOG + (
    Prod(UNIT, UNIT),
    Prod(NN, NN),
    Sub(NAT, library.even()),
    Sub(NAT, library.lt2()),
)


@dataclass(frozen=True)
class GenConfig:
    max_depth: int = 6
    max_iter: int = 2
    max_arg: int = 3
    leaf_bias: float = 0.35
    abstr_rate: float = 0.08


def _small(obj: ObjTerm) -> bool:
    return obj in CATALOG


def canonical(rng: random.Random, a: ObjTerm, b: ObjTerm) -> MapTerm:
    """A short map ``a -> b`` built from constants only."""
    if a == b and rng.random() < 0.3:
        return Id(a)
    if b == UNIT:
        return Bang(a)
    if b == NAT:
        if a == NAT:
            return rng.choice([SUCC, Id(NAT), SUCC])
        if a == UNIT:
            return ZERO if rng.random() < 0.6 else Comp(SUCC, ZERO)
        if isinstance(a, Prod):
            proj = rng.choice([ProjL(a.left, a.right), ProjR(a.left, a.right)])
            inner = a.left if isinstance(proj, ProjL) else a.right
            rest = canonical(rng, inner, NAT)
            return proj if isinstance(rest, Id) else Comp(rest, proj)
        return Comp(ZERO, Bang(a))
    if isinstance(b, Prod):
        if isinstance(a, Prod):
            if a == b and rng.random() < 0.2:
                return Id(a)
            if Prod(a.right, a.left) == b and rng.random() < 0.5:
                return Swap(a.left, a.right)
        if a == b.left == b.right and rng.random() < 0.5:
            return Diag(a)
        return pair(canonical(rng, a, b.left), canonical(rng, a, b.right))
    raise ValueError(f"no canonical map into {b!r}")


def gen_map(rng: random.Random, a: ObjTerm, b: ObjTerm, depth: int, iters: int, cfg: GenConfig) -> MapTerm:
    if depth <= 1 or rng.random() < cfg.leaf_bias:
        return canonical(rng, a, b)
    choices = ["comp", "comp"]
    if isinstance(a, Prod) and isinstance(b, Prod) and a.left == b.left:
        choices += ["cyl", "cyl"]
    if isinstance(b, Prod):
        choices.append("pair")
    if iters > 0:
        if a == Prod(b, NAT):
            choices += ["iter", "iter"]
        if _small(Prod(b, NAT)):
            choices.append("iter_use")
    kind = rng.choice(choices)
    d = depth - 1
    if kind == "comp":
        mid = rng.choice(CATALOG)
        return Comp(gen_map(rng, mid, b, d, iters, cfg), gen_map(rng, a, mid, d, iters, cfg))
    if kind == "cyl":
        return Cyl(a.left, gen_map(rng, a.right, b.right, d, iters, cfg))
    if kind == "pair":
        return pair(gen_map(rng, a, b.left, d, iters, cfg), gen_map(rng, a, b.right, d, iters, cfg))
    if kind == "iter":
        return Iter(gen_map(rng, b, b, d, iters - 1, cfg))
    # iter_use: feed a computed (start, count) pair into an iteration;
    # the count is a projection or constant so it stays small
    body = Iter(gen_map(rng, b, b, d - 1, iters - 1, cfg))
    start = gen_map(rng, a, b, d - 1, 0, cfg)
    count = canonical(rng, a, NAT)
    return Comp(body, pair(start, count))


def gen_object(rng: random.Random) -> ObjTerm:
    return rng.choice(CATALOG)


def gen_term(rng: random.Random, cfg: GenConfig = GenConfig()) -> MapTerm:
    a = gen_object(rng)
    b = gen_object(rng)
    u = gen_map(rng, a, b, cfg.max_depth, cfg.max_iter, cfg)
    if rng.random() < cfg.abstr_rate:
        u = wrap_abstr(rng, u, a, b)
    return u


def wrap_abstr(rng: random.Random, u: MapTerm, a: ObjTerm, b: ObjTerm) -> MapTerm:
    """Restrict ``u`` to a guarded domain; the codomain claim is the trivial predicate."""
    if a == NAT:
        chi = rng.choice([library.even(), library.lt2(), library.true_pred(NAT)])
    elif a == UNIT:
        chi = library.true_pred(a)
    else:
        chi = rng.choice([library.true_pred(a), Comp(library.even(), canonical(rng, a, NAT))])
    return Abstr(chi, u, library.true_pred(b))


def gen_value(rng: random.Random, obj: ObjTerm, max_n: int = 3, tries: int = 50) -> XValue | None:
    """Random member of ``obj`` (rejection-sampled for abstractions)."""
    if obj == UNIT:
        return Single(0)
    if obj == NAT:
        return Single(rng.randint(0, max_n))
    if isinstance(obj, Prod):
        left = gen_value(rng, obj.left, max_n, tries)
        right = gen_value(rng, obj.right, max_n, tries)
        if left is None or right is None:
            return None
        return Pair(left, right)
    if isinstance(obj, Sub):
        for _ in range(tries):
            x = gen_value(rng, obj.base, max_n, tries)
            if x is not None and member(obj, x) is Membership.IN:
                return x
        return None
    raise TypeError(f"not an object: {obj!r}")


def gen_any_value(rng: random.Random, max_n: int = 4, depth: int = 3) -> XValue:
    """Arbitrary element of the universe, bot and box included."""
    r = rng.random()
    if r < 0.05:
        return BOT
    if r < 0.08:
        return BOX
    return _proper(rng, max_n, depth)


def _proper(rng: random.Random, max_n: int, depth: int) -> XValue:
    if depth <= 0 or rng.random() < 0.45:
        return Single(rng.randint(0, max_n))
    return Pair(_proper(rng, max_n, depth - 1), _proper(rng, max_n, depth - 1))
