"""A corpus of validated proofs about addition, predecessor and truncated subtraction."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .. import library
from ..syntax import (
    NAT, SUCC, UNIT, ZERO, Bang, Comp, Cyl, Id, Prod, ProjL, ProjR, Swap, pair,
    times, typecheck,
)
from .proofio import dump_proof
from .rules import (
    DTree, assoc, chain, check_proof, freyd, godement, iter_anchor, iter_step, sym,
    terminal, trans, zero_anchor,
)
from .tactics import by_lemmas, eq_nf, prove_eq, rewrite, simp

NN = Prod(NAT, NAT)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    proof: DTree
    description: str


def add_zero() -> DTree:
    """``a + 0 = a``."""
    return iter_anchor(SUCC)


def add_step() -> DTree:
    """``a + s n = s (a + n)``."""
    return iter_step(SUCC)


def assoc_succ() -> DTree:
    return assoc(SUCC, SUCC, SUCC)


def assoc_add() -> DTree:
    return assoc(SUCC, library.add(), Cyl(NAT, SUCC))


def godement_instance() -> DTree:
    """``l o <s, pred> = s``."""
    return godement(Comp(ProjL(NAT, NAT), pair(SUCC, library.pred())), SUCC)


def bang_succ() -> DTree:
    return terminal(Comp(Bang(NAT), SUCC))


def swap_involution() -> DTree:
    """``swap o swap = id`` on ``N x N``."""
    return prove_eq(Comp(Swap(NAT, NAT), Swap(NAT, NAT)), Id(NN))


def add_freyd() -> DTree:
    """Addition is the iterate of successor started at the identity."""
    return freyd(iter_anchor(SUCC), iter_step(SUCC))


@lru_cache(maxsize=None)
def _r_is_plus_zero() -> DTree:
    """``r_{1,N} = add o (0 x id)``, from uniqueness of the iterate."""
    r = ProjR(UNIT, NAT)
    anchor = prove_eq(Comp(r, zero_anchor(UNIT)), ZERO)
    stepp = godement(Comp(r, Cyl(UNIT, SUCC)), Comp(SUCC, r))
    return freyd(anchor, stepp)


def zero_add() -> DTree:
    """``0 + a = a``, stated on ``1 x N``: ``add o (0 x id) = r``."""
    return sym(_r_is_plus_zero())


@lru_cache(maxsize=None)
def _counter_is_add() -> DTree:
    """``r o h^S = add o (r x id)`` on ``(N x N) x N``, where ``h = <r, s o r>``.

    ``h`` moves a window ``(a, b)`` to ``(b, b + 1)``, so after ``n`` rounds
    the second component has grown by ``n``.
    """
    big = library.pred().u.v
    w = Comp(ProjR(NAT, NAT), big)
    anchor = simp(Comp(w, zero_anchor(NN)))
    stepp = simp(Comp(w, Cyl(NN, SUCC)))
    return freyd(anchor, stepp)


@lru_cache(maxsize=None)
def pred_succ() -> DTree:
    """``pred o s = id``."""
    pred = library.pred()
    big, start = pred.u.v, pred.u.u  # pred = l o h^S o <c o !, id>
    shift = prove_eq(Comp(start, SUCC), Comp(Cyl(NN, SUCC), start))
    p1 = rewrite(Comp(pred, SUCC), shift)
    p2 = simp(p1.rhs)  # unfold once and project: r o h^S o start
    p3 = rewrite(p2.rhs, _counter_is_add())
    r_nn = ProjR(NAT, NAT)
    restart = prove_eq(Comp(times(r_nn, Id(NAT)), start), Comp(times(ZERO, Id(NAT)), pair(Bang(NAT), Id(NAT))))
    p4 = rewrite(p3.rhs, restart)
    p5 = rewrite(p4.rhs, zero_add())
    p6 = simp(p5.rhs)
    return chain(p1, p2, p3, p4, p5, p6)


@lru_cache(maxsize=None)
def _monus_shift_lhs() -> DTree:
    """``monus o <s o l, s o r> = pred^S o (id x id)``."""
    monus = library.monus()
    pred = library.pred()
    l, r = ProjL(NAT, NAT), ProjR(NAT, NAT)
    k = pair(Comp(SUCC, l), Comp(SUCC, r))
    w = Comp(monus, k)
    # anchor: w o <id, 0 o !> = id
    k0 = prove_eq(Comp(k, zero_anchor(NAT)), Comp(Cyl(NAT, SUCC), Comp(zero_anchor(NAT), SUCC)))
    a1 = by_lemmas(Comp(w, zero_anchor(NAT)),
                   Comp(monus, Comp(Cyl(NAT, SUCC), Comp(zero_anchor(NAT), SUCC))), k0)
    a2 = simp(a1.rhs)  # pred o s, then the anchor of the iterate
    a3 = rewrite(a2.rhs, pred_succ())
    anchor = chain(a1, a2, a3, eq_nf(a3.rhs, Id(NAT)))
    # step: w o (id x s) = pred o w
    ks = prove_eq(Comp(k, Cyl(NAT, SUCC)), Comp(Cyl(NAT, SUCC), k))
    s1 = by_lemmas(Comp(w, Cyl(NAT, SUCC)), Comp(monus, Comp(Cyl(NAT, SUCC), k)), ks)
    s2 = rewrite(s1.rhs, iter_step(pred))
    stepp = chain(s1, s2, eq_nf(s2.rhs, Comp(pred, w)))
    return freyd(anchor, stepp)


@lru_cache(maxsize=None)
def _monus_shift_rhs() -> DTree:
    """``monus o <l, r> = pred^S o (id x id)``."""
    monus = library.monus()
    pred = library.pred()
    l, r = ProjL(NAT, NAT), ProjR(NAT, NAT)
    k = pair(l, r)
    w = Comp(monus, k)
    k0 = prove_eq(Comp(k, zero_anchor(NAT)), zero_anchor(NAT))
    a1 = by_lemmas(Comp(w, zero_anchor(NAT)), Comp(monus, zero_anchor(NAT)), k0)
    anchor = trans(a1, iter_anchor(pred))
    ks = prove_eq(Comp(k, Cyl(NAT, SUCC)), Comp(Cyl(NAT, SUCC), k))
    s1 = by_lemmas(Comp(w, Cyl(NAT, SUCC)), Comp(monus, Comp(Cyl(NAT, SUCC), k)), ks)
    s2 = rewrite(s1.rhs, iter_step(pred))
    stepp = chain(s1, s2, eq_nf(s2.rhs, Comp(pred, w)))
    return freyd(anchor, stepp)


def monus_succ_both() -> DTree:
    """``monus o <s o l, s o r> = monus o <l, r>``: subtracting after two successors."""
    return trans(_monus_shift_lhs(), sym(_monus_shift_rhs()))


CORPUS_BUILDERS = (
    ("add_zero", add_zero, "a + 0 = a"),
    ("add_step", add_step, "a + s n = s (a + n)"),
    ("assoc_succ", assoc_succ, "(s o s) o s = s o (s o s)"),
    ("assoc_add", assoc_add, "(s o add) o (id x s) = s o (add o (id x s))"),
    ("godement_pair", godement_instance, "l o <s, pred> = s"),
    ("bang_succ", bang_succ, "! o s = !"),
    ("swap_involution", swap_involution, "swap o swap = id"),
    ("add_freyd", add_freyd, "add = s^S o (id x id)"),
    ("zero_add", zero_add, "0 + a = a on 1 x N"),
    ("pred_succ", pred_succ, "pred o s = id"),
    ("monus_succ_both", monus_succ_both, "(s a) - (s n) = a - n"),
)


def _key(entry: CorpusEntry):
    return (entry.proof.depth(), len(dump_proof(entry.proof)))


@lru_cache(maxsize=None)
def corpus() -> tuple[CorpusEntry, ...]:
    """All corpus proofs, validated, ordered by tree depth then serialized length."""
    out = []
    for name, build, desc in CORPUS_BUILDERS:
        proof = build()
        check_proof(proof)
        out.append(CorpusEntry(name, proof, desc))
    return tuple(sorted(out, key=_key))


def by_name(name: str) -> CorpusEntry:
    for entry in corpus():
        if entry.name == name:
            return entry
    raise KeyError(name)


def root_types(d: DTree):
    return typecheck(d.lhs)


__all__ = ["CorpusEntry", "CORPUS_BUILDERS", "corpus", "by_name", "root_types"]
