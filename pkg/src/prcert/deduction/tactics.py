"""Proof-producing helpers for building equational proofs.

Terms are handled as composition chains: ``atoms(t)`` lists the factors of
``t`` (outermost first) with identities dropped.  Induced maps ``<f, g>`` are
kept whole as single factors ("pair blocks"), and cylinder bodies and pair
components are normalised recursively.  Every helper returns a
:class:`DTree` whose conclusion is the claimed equation, built only from
the fourteen rules.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterable

from ..syntax import (
    UNIT, Bang, Comp, Cyl, Diag, Id, Iter, MapTerm, Prod, ProjL, ProjR, Swap,
    pair, render, typecheck,
)
from .rules import (
    DTree, ProofError, assoc, chain, cong_comp, cong_cyl, fourman, godement,
    id_left, id_right, iter_anchor, iter_step, refl, sym, terminal, trans, unpair,
)

# --------------------------------------------------------------------------
# chains


def _block(t: MapTerm) -> tuple[MapTerm, MapTerm] | None:
    if isinstance(t, Comp) and isinstance(t.u, Diag):
        return unpair(t)
    return None


@lru_cache(maxsize=None)
def _atoms(t: MapTerm) -> tuple[MapTerm, ...]:
    if isinstance(t, Id):
        return ()
    fg = _block(t)
    if fg is not None:
        return (pair(nf(fg[0]), nf(fg[1])),)
    if isinstance(t, Comp):
        out = _atoms(t.v) + _atoms(t.u)
        # a chain ending in cyl(A, g) o diag[A] reads back as the block <id, g>
        if len(out) >= 2 and isinstance(out[-1], Diag) and isinstance(out[-2], Cyl) \
                and out[-2].obj == out[-1].obj:
            out = out[:-2] + (Comp(out[-2], out[-1]),)
        return out
    if isinstance(t, Cyl):
        return (Cyl(t.obj, nf(t.v)),)
    return (t,)


def atoms(t: MapTerm) -> list[MapTerm]:
    return list(_atoms(t))


def build(factors: Iterable[MapTerm], obj) -> MapTerm:
    """Right-nested composite of ``factors``; the identity on ``obj`` if empty."""
    fs = list(factors)
    if not fs:
        return Id(obj)
    acc = fs[-1]
    for f in reversed(fs[:-1]):
        acc = Comp(f, acc)
    return acc


def nf(t: MapTerm) -> MapTerm:
    return build(_atoms(t), typecheck(t)[0])


def _is_chain(v: MapTerm) -> bool:
    return isinstance(v, Comp) and len(_atoms(v)) > 1


def _merge(v: MapTerm, u: MapTerm) -> DTree:
    """``v o u = nf`` for already normal ``v`` and ``u``."""
    if isinstance(v, Id):
        return id_left(u)
    if isinstance(u, Id):
        return id_right(v)
    if _is_chain(v):
        p = assoc(v.v, v.u, u)
        return trans(p, cong_comp(refl(v.v), _merge(v.u, u)))
    return refl(Comp(v, u))


def pair_cong(pf: DTree, pg: DTree) -> DTree:
    """``<f, g> = <f', g'>`` from ``f = f'`` and ``g = g'``."""
    x, y = pair(pf.lhs, pg.lhs), pair(pf.rhs, pg.rhs)
    if x == y:
        return refl(x)
    table = {}
    for p in (pf, pg):
        if p.lhs != p.rhs:
            table[(p.lhs, p.rhs)] = p
    try:
        return cong(x, y, table)
    except ProofError:
        pass
    # identity components change the shape of the sugar: go through projections
    cod = typecheck(x)[1]
    pl, pr = ProjL(cod.left, cod.right), ProjR(cod.left, cod.right)
    left = chain(godement(Comp(pl, x), pf.lhs), pf, sym(godement(Comp(pl, y), pf.rhs)))
    right = chain(godement(Comp(pr, x), pg.lhs), pg, sym(godement(Comp(pr, y), pg.rhs)))
    fx, fy = fourman(x), fourman(y)
    mid = cong(fx.lhs, fy.lhs, {(left.lhs, left.rhs): left, (right.lhs, right.rhs): right})
    return chain(sym(fx), mid, fy)


def nf_proof(t: MapTerm) -> DTree:
    """Proof of ``t = nf(t)``."""
    target = nf(t)
    if t == target:
        return refl(t)
    fg = _block(t)
    if fg is not None:
        out = pair_cong(nf_proof(fg[0]), nf_proof(fg[1]))
    elif isinstance(t, Comp):
        pv, pu = nf_proof(t.v), nf_proof(t.u)
        out = trans(cong_comp(pv, pu), _merge(pv.rhs, pu.rhs))
    elif isinstance(t, Cyl):
        out = cong_cyl(t.obj, nf_proof(t.v))
    else:
        out = refl(t)
    if out.rhs != target:
        raise ProofError(f"normalisation of {render(t)} went astray")
    return out


def eq_nf(a: MapTerm, b: MapTerm) -> DTree:
    """``a = b`` for terms equal up to associativity and identities."""
    if a == b:
        return refl(a)
    pa, pb = nf_proof(a), nf_proof(b)
    if pa.rhs != pb.rhs:
        raise ProofError(f"not equal up to associativity: {render(a)} vs {render(b)}")
    return trans(pa, sym(pb))


def cong(t: MapTerm, t2: MapTerm, table: dict) -> DTree:
    """Structural congruence: ``t = t2`` where they differ only at entries of ``table``."""
    if t == t2:
        return refl(t)
    hit = table.get((t, t2))
    if hit is not None:
        return hit
    if isinstance(t, Comp) and isinstance(t2, Comp):
        return cong_comp(cong(t.v, t2.v, table), cong(t.u, t2.u, table))
    if isinstance(t, Cyl) and isinstance(t2, Cyl) and t.obj == t2.obj:
        return cong_cyl(t.obj, cong(t.v, t2.v, table))
    raise ProofError(f"no congruence between {render(t)} and {render(t2)}")


# --------------------------------------------------------------------------
# rewriting


def _tail(t: MapTerm, i: int) -> MapTerm:
    for _ in range(i):
        t = t.u
    return t


def _under_prefix(t: MapTerm, i: int, local: DTree) -> DTree:
    """Lift ``local`` (about the ``i``-th tail of the chain ``t``) to all of ``t``."""
    if i == 0:
        return local
    return cong_comp(refl(t.v), _under_prefix(t.u, i - 1, local))


def _lift(t: MapTerm, i: int, local: DTree) -> DTree:
    """``t = t'`` for normal ``t`` whose ``i``-th tail is ``local.lhs``, ending normal."""
    out = _under_prefix(t, i, local)
    if out.rhs != nf(out.rhs):
        out = trans(out, nf_proof(out.rhs))
    return out


def rewrite_at(t: MapTerm, lemma: DTree, i: int) -> DTree:
    """Replace the window of ``atoms(t)`` at ``i`` matching ``lemma.lhs`` by ``lemma.rhs``."""
    ts = _atoms(t)
    ws = _atoms(lemma.lhs)
    if not ws or ts[i:i + len(ws)] != ws:
        raise ProofError(f"lemma {render(lemma.lhs)} does not match at position {i}")
    to_normal = nf_proof(t)
    nt = to_normal.rhs
    tail = _tail(nt, i)
    if i + len(ws) == len(ts):
        local = chain(eq_nf(tail, lemma.lhs), lemma, nf_proof(lemma.rhs))
    else:
        rest = _tail(tail, len(ws))
        local = chain(eq_nf(tail, Comp(lemma.lhs, rest)), cong_comp(lemma, refl(rest)),
                      nf_proof(Comp(lemma.rhs, rest)))
    return trans(to_normal, _lift(nt, i, local))


def find(t: MapTerm, pattern: list[MapTerm]) -> int | None:
    ts = _atoms(t)
    pattern = tuple(pattern)
    for i in range(len(ts) - len(pattern) + 1):
        if ts[i:i + len(pattern)] == pattern:
            return i
    return None


def rewrite(t: MapTerm, lemma: DTree) -> DTree:
    """Rewrite the first top-level occurrence of the lemma's left side."""
    i = find(t, atoms(lemma.lhs))
    if i is None:
        raise ProofError(f"{render(lemma.lhs)} does not occur in {render(t)}")
    return rewrite_at(t, lemma, i)


Rule = Callable[[tuple, int], "DTree | None"]


def proj_rule(ts: tuple, i: int) -> DTree | None:
    """Push a projection through a pair, swap, diagonal or cylinder."""
    if i + 1 >= len(ts) or not isinstance(ts[i], (ProjL, ProjR)):
        return None
    p, x = ts[i], ts[i + 1]
    left = isinstance(p, ProjL)
    a, b = p.left, p.right
    lhs = Comp(p, x)
    fg = _block(x)
    if fg is not None:
        if typecheck(x)[1] != Prod(a, b):
            return None
        return godement(lhs, fg[0] if left else fg[1])
    if isinstance(x, Swap) and x.left == b and x.right == a:
        return godement(lhs, ProjR(b, a) if left else ProjL(b, a))
    if isinstance(x, Diag) and x.obj == a == b:
        return godement(lhs, Id(a))
    if isinstance(x, Cyl) and x.obj == a:
        dv = typecheck(x.v)[0]
        return godement(lhs, ProjL(a, dv) if left else Comp(x.v, ProjR(a, dv)))
    return None


def bang_rule(ts: tuple, i: int) -> DTree | None:
    """Maps into 1 are unique: ``! o x = !`` and ``!_1 = id_1``."""
    if not isinstance(ts[i], Bang):
        return None
    if i + 1 < len(ts):
        return terminal(Comp(ts[i], ts[i + 1]))
    if ts[i].obj == UNIT:
        return sym(terminal(Id(UNIT)))
    return None


def iter_rule(ts: tuple, i: int) -> DTree | None:
    """Unfold ``u^S o (id x s)`` and discharge ``u^S o <id, 0 o !>``."""
    if not isinstance(ts[i], Iter):
        return None
    u = ts[i].u
    for lemma in (iter_step(u), iter_anchor(u)):
        k = _atoms(lemma.lhs)
        if ts[i:i + len(k)] == k:
            return lemma
    return None


DEFAULT_RULES: tuple[Rule, ...] = (iter_rule, proj_rule, bang_rule)


def _simp_inside(a: MapTerm, rules: tuple[Rule, ...]) -> DTree | None:
    """One simplification inside a cylinder body or a pair component."""
    if isinstance(a, Cyl):
        inner = _simp_once(a.v, rules)
        return None if inner is None else cong_cyl(a.obj, inner)
    fg = _block(a)
    if fg is None:
        return None
    f, g = fg
    inner = _simp_once(f, rules)
    if inner is not None:
        return pair_cong(inner, refl(g))
    inner = _simp_once(g, rules)
    if inner is not None:
        return pair_cong(refl(f), inner)
    return None


def _simp_once(t: MapTerm, rules: tuple[Rule, ...]) -> DTree | None:
    ts = _atoms(t)
    for i in range(len(ts)):
        for rule in rules:
            lemma = rule(ts, i)
            if lemma is not None:
                return rewrite_at(t, lemma, i)
    for i, a in enumerate(ts):
        here = _simp_inside(a, rules)
        if here is not None:
            to_normal = nf_proof(t)
            nt = to_normal.rhs
            local = here if i + 1 == len(ts) else cong_comp(here, refl(_tail(nt, i).u))
            return trans(to_normal, _lift(nt, i, local))
    return None


def simp(t: MapTerm, rules: tuple[Rule, ...] = DEFAULT_RULES, limit: int = 500) -> DTree:
    """Proof of ``t = t'`` where ``t'`` is normal for ``rules``."""
    steps = [refl(t)]
    for _ in range(limit):
        nxt = _simp_once(steps[-1].rhs, rules)
        if nxt is None:
            return chain(*steps, nf_proof(steps[-1].rhs))
        steps.append(nxt)
    raise ProofError(f"simplification of {render(t)} did not settle")


def prove_eq(a: MapTerm, b: MapTerm, rules: tuple[Rule, ...] = DEFAULT_RULES) -> DTree:
    """Prove ``a = b`` by simplification, splitting maps into products componentwise."""
    pa, pb = simp(a, rules), simp(b, rules)
    if pa.rhs == pb.rhs:
        return trans(pa, sym(pb))
    cod = typecheck(a)[1]
    if not isinstance(cod, Prod):
        raise ProofError(f"cannot prove {render(a)} = {render(b)}: normal forms "
                         f"{render(pa.rhs)} and {render(pb.rhs)} differ")
    pl, pr = ProjL(cod.left, cod.right), ProjR(cod.left, cod.right)
    el = prove_eq(Comp(pl, a), Comp(pl, b), rules)
    er = prove_eq(Comp(pr, a), Comp(pr, b), rules)
    fa, fb = fourman(a), fourman(b)
    mid = cong(fa.lhs, fb.lhs, {(el.lhs, el.rhs): el, (er.lhs, er.rhs): er})
    return chain(sym(fa), mid, fb)


def by_lemmas(start: MapTerm, goal: MapTerm, *lemmas: DTree) -> DTree:
    """Rewrite ``start`` with each lemma in turn, then close against ``goal``."""
    steps = [refl(start)]
    for lemma in lemmas:
        steps.append(rewrite(steps[-1].rhs, lemma))
    return chain(*steps, eq_nf(steps[-1].rhs, goal))


__all__ = [
    "atoms", "build", "nf", "nf_proof", "eq_nf", "cong", "pair_cong", "rewrite", "rewrite_at",
    "find", "proj_rule", "bang_rule", "iter_rule", "simp", "prove_eq", "by_lemmas",
]
