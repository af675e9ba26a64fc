"""Equational proof trees over map codes and their validation.

A :class:`DTree` node carries a rule, its conclusion ``lhs = rhs`` and up to
two premise trees.  :func:`check_proof` checks every node against its rule's
template; the small constructors below build nodes with the conclusion
already computed, which is how proofs are assembled in practice.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..syntax import (
    NAT, SUCC, UNIT, ZERO, Bang, Comp, Cyl, Diag, Id, Iter, MapTerm, Prod,
    ProjL, ProjR, Swap, TermTypeError, pair, render, times, typecheck,
)


class ProofRule(Enum):
    REFL = ("Refl", 0)
    SYM = ("Sym", 1)
    TRANS = ("Trans", 2)
    COMP_COMPAT = ("CompCompat", 2)
    CYL_COMPAT = ("CylCompat", 1)
    ASSOC = ("Assoc", 0)
    ID_LEFT = ("IdLeft", 0)
    ID_RIGHT = ("IdRight", 0)
    TERMINAL_UNIQUE = ("TerminalUnique", 0)
    GODEMENT = ("Godement", 0)
    FOURMAN_UNIQUE = ("FourmanUnique", 0)
    ITER_ANCHOR = ("IterAnchor", 0)
    ITER_STEP = ("IterStep", 0)
    FREYD_UNIQUE = ("FreydUnique", 2)

    def __init__(self, label: str, arity: int):
        self.label = label
        self.arity = arity

    @classmethod
    def from_label(cls, label: str) -> "ProofRule":
        for rule in cls:
            if rule.label == label:
                return rule
        raise ValueError(f"unknown rule {label!r}")


EQUATIONAL = frozenset(r for r in ProofRule if r.arity == 0)


@dataclass(frozen=True, eq=False)
class DTree:
    rule: ProofRule
    lhs: MapTerm
    rhs: MapTerm
    premises: tuple["DTree", ...] = ()

    @property
    def conclusion(self) -> tuple[MapTerm, MapTerm]:
        return self.lhs, self.rhs

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)

    def depth(self) -> int:
        return 1 + max((p.depth() for p in self.premises), default=0)


class ProofError(ValueError):
    def __init__(self, message: str, node: DTree | None = None):
        super().__init__(message)
        self.node = node


# --------------------------------------------------------------------------
# shapes shared by rules


def zero_anchor(obj) -> MapTerm:
    """``<id_A, 0 o !_A> : A -> A x N``."""
    return pair(Id(obj), Comp(ZERO, Bang(obj)))


def unpair(t: MapTerm) -> tuple[MapTerm, MapTerm] | None:
    """Recover ``(f, g)`` with ``pair(f, g) == t``, if ``t`` has pair shape."""
    if not (isinstance(t, Comp) and isinstance(t.u, Diag)):
        return None
    body = t.v
    cands = []
    if isinstance(body, Cyl):
        cands.append((Id(body.obj), body.v))
    # f x id shape: swap o (cyl o swap)
    if isinstance(body, Comp) and isinstance(body.v, Swap) and isinstance(body.u, Comp) \
            and isinstance(body.u.v, Cyl):
        cands.append((body.u.v.v, Id(t.u.obj)))
    if isinstance(body, Comp) and isinstance(body.v, Cyl) and isinstance(body.u, Comp) \
            and isinstance(body.u.u, Comp) and isinstance(body.u.u.v, Cyl):
        cands.append((body.u.u.v.v, body.v.v))
    for f, g in cands:
        try:
            if pair(f, g) == t:
                return f, g
        except TermTypeError:
            continue
    return None


def _godement_ok(lhs: MapTerm, rhs: MapTerm) -> bool:
    """Projection laws for the product: induced maps and the structural constants."""
    if not isinstance(lhs, Comp) or not isinstance(lhs.v, (ProjL, ProjR)):
        return False
    proj, inner = lhs.v, lhs.u
    left = isinstance(proj, ProjL)
    parts = unpair(inner)
    if parts is not None and Prod(proj.left, proj.right) == typecheck(inner)[1]:
        if rhs == (parts[0] if left else parts[1]):
            return True
    a, b = proj.left, proj.right
    if isinstance(inner, Swap) and inner.left == b and inner.right == a:
        return rhs == (ProjR(b, a) if left else ProjL(b, a))
    if isinstance(inner, Diag) and inner.obj == a == b:
        return rhs == Id(a)
    if isinstance(inner, Cyl) and inner.obj == a:
        dv, cv = typecheck(inner.v)
        if cv != b:
            return False
        if left:
            return rhs == ProjL(a, dv)
        return rhs == Comp(inner.v, ProjR(a, dv))
    return False


# --------------------------------------------------------------------------
# validation


def _eq_types(node: DTree) -> None:
    try:
        dl, cl = typecheck(node.lhs)
        dr, cr = typecheck(node.rhs)
    except TermTypeError as exc:
        raise ProofError(f"{node.rule.label}: ill-typed side: {exc}", node) from exc
    if (dl, cl) != (dr, cr):
        raise ProofError(
            f"{node.rule.label}: sides have different types "
            f"{render(dl)} -> {render(cl)} vs {render(dr)} -> {render(cr)}",
            node,
        )


def _fail(node: DTree, why: str):
    raise ProofError(f"{node.rule.label} node {render(node.lhs)} = {render(node.rhs)}: {why}", node)


def check_node(node: DTree) -> None:
    """Check one node against its rule, assuming premises are valid."""
    rule, lhs, rhs, ps = node.rule, node.lhs, node.rhs, node.premises
    if len(ps) != rule.arity:
        _fail(node, f"expects {rule.arity} premise(s), got {len(ps)}")
    _eq_types(node)
    if rule is ProofRule.REFL:
        if lhs != rhs:
            _fail(node, "sides differ")
    elif rule is ProofRule.SYM:
        if (ps[0].lhs, ps[0].rhs) != (rhs, lhs):
            _fail(node, "premise is not the swapped equation")
    elif rule is ProofRule.TRANS:
        if ps[0].lhs != lhs or ps[1].rhs != rhs or ps[0].rhs != ps[1].lhs:
            _fail(node, "premises do not chain")
    elif rule is ProofRule.COMP_COMPAT:
        if not (isinstance(lhs, Comp) and isinstance(rhs, Comp)):
            _fail(node, "sides must be composites")
        if (ps[0].lhs, ps[0].rhs) != (lhs.v, rhs.v) or (ps[1].lhs, ps[1].rhs) != (lhs.u, rhs.u):
            _fail(node, "premises must equate the factors")
    elif rule is ProofRule.CYL_COMPAT:
        if not (isinstance(lhs, Cyl) and isinstance(rhs, Cyl) and lhs.obj == rhs.obj):
            _fail(node, "sides must be cylinders over the same object")
        if (ps[0].lhs, ps[0].rhs) != (lhs.v, rhs.v):
            _fail(node, "premise must equate the cylinder bodies")
    elif rule is ProofRule.ASSOC:
        ok = isinstance(lhs, Comp) and isinstance(lhs.v, Comp) and \
            rhs == Comp(lhs.v.v, Comp(lhs.v.u, lhs.u))
        if not ok:
            _fail(node, "not of form (w o v) o u = w o (v o u)")
    elif rule is ProofRule.ID_LEFT:
        if not (isinstance(lhs, Comp) and isinstance(lhs.v, Id) and lhs.u == rhs):
            _fail(node, "not of form id o f = f")
    elif rule is ProofRule.ID_RIGHT:
        if not (isinstance(lhs, Comp) and isinstance(lhs.u, Id) and lhs.v == rhs):
            _fail(node, "not of form f o id = f")
    elif rule is ProofRule.TERMINAL_UNIQUE:
        a, b = typecheck(lhs)
        if b != UNIT or rhs != Bang(a):
            _fail(node, "not of form f = !_A with f : A -> 1")
    elif rule is ProofRule.GODEMENT:
        if not _godement_ok(lhs, rhs):
            _fail(node, "not a projection law")
    elif rule is ProofRule.FOURMAN_UNIQUE:
        parts = unpair(lhs)
        ok = False
        if parts is not None:
            a, cod = typecheck(rhs)
            ok = isinstance(cod, Prod) and parts == (
                Comp(ProjL(cod.left, cod.right), rhs),
                Comp(ProjR(cod.left, cod.right), rhs),
            )
        if not ok:
            _fail(node, "not of form <l o f, r o f> = f")
    elif rule is ProofRule.ITER_ANCHOR:
        ok = isinstance(lhs, Comp) and isinstance(lhs.v, Iter)
        if ok:
            a = typecheck(lhs.v.u)[0]
            ok = lhs.u == zero_anchor(a) and rhs == Id(a)
        if not ok:
            _fail(node, "not of form u^S o <id, 0 o !> = id")
    elif rule is ProofRule.ITER_STEP:
        ok = isinstance(lhs, Comp) and isinstance(lhs.v, Iter)
        if ok:
            u = lhs.v.u
            a = typecheck(u)[0]
            ok = lhs.u == Cyl(a, SUCC) and rhs == Comp(u, lhs.v)
        if not ok:
            _fail(node, "not of form u^S o (id x s) = u o u^S")
    elif rule is ProofRule.FREYD_UNIQUE:
        anchor, stepp = ps
        w = lhs
        dw, _ = typecheck(w)
        if not (isinstance(dw, Prod) and dw.right == NAT):
            _fail(node, "left side must have domain A x N")
        a = dw.left
        if anchor.lhs != Comp(w, zero_anchor(a)):
            _fail(node, "anchor premise must read w o <id, 0 o !> = u")
        if stepp.lhs != Comp(w, Cyl(a, SUCC)) or not (
            isinstance(stepp.rhs, Comp) and stepp.rhs.u == w
        ):
            _fail(node, "step premise must read w o (id x s) = v o w")
        u, v = anchor.rhs, stepp.rhs.v
        if rhs != Comp(Iter(v), times(u, Id(NAT))):
            _fail(node, "conclusion must be w = v^S o (u x id)")
    else:  # pragma: no cover
        _fail(node, "unknown rule")


def check_proof(d: DTree) -> tuple[MapTerm, MapTerm]:
    """Validate every node; returns the root equation or raises :class:`ProofError`."""
    seen: set[int] = set()
    stack = [d]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        check_node(node)
        stack.extend(node.premises)
    return d.lhs, d.rhs


# --------------------------------------------------------------------------
# constructors (conclusions computed)


def refl(t: MapTerm) -> DTree:
    return DTree(ProofRule.REFL, t, t)


def is_refl(p: DTree) -> bool:
    return p.lhs == p.rhs and p.rule is ProofRule.REFL


def sym(p: DTree) -> DTree:
    if p.rule is ProofRule.SYM:
        return p.premises[0]
    if is_refl(p):
        return p
    return DTree(ProofRule.SYM, p.rhs, p.lhs, (p,))


def trans(p: DTree, q: DTree) -> DTree:
    if p.rhs != q.lhs:
        raise ProofError(f"cannot chain {render(p.rhs)} with {render(q.lhs)}")
    if p.lhs == p.rhs:
        return q
    if q.lhs == q.rhs:
        return p
    return DTree(ProofRule.TRANS, p.lhs, q.rhs, (p, q))


def chain(*proofs: DTree) -> DTree:
    """Transitivity over a sequence, as a balanced tree to keep proofs shallow."""
    ps = [p for p in proofs if not (p.lhs == p.rhs and p.rule is ProofRule.REFL)]
    if not ps:
        return proofs[0]
    while len(ps) > 1:
        nxt = [trans(ps[i], ps[i + 1]) for i in range(0, len(ps) - 1, 2)]
        if len(ps) % 2:
            nxt.append(ps[-1])
        ps = nxt
    return ps[0]


def cong_comp(pv: DTree, pu: DTree) -> DTree:
    lhs, rhs = Comp(pv.lhs, pu.lhs), Comp(pv.rhs, pu.rhs)
    if lhs == rhs:
        return refl(lhs)
    return DTree(ProofRule.COMP_COMPAT, lhs, rhs, (pv, pu))


def cong_cyl(obj, p: DTree) -> DTree:
    lhs, rhs = Cyl(obj, p.lhs), Cyl(obj, p.rhs)
    if lhs == rhs:
        return refl(lhs)
    return DTree(ProofRule.CYL_COMPAT, lhs, rhs, (p,))


def assoc(w: MapTerm, v: MapTerm, u: MapTerm) -> DTree:
    return DTree(ProofRule.ASSOC, Comp(Comp(w, v), u), Comp(w, Comp(v, u)))


def id_left(f: MapTerm) -> DTree:
    return DTree(ProofRule.ID_LEFT, Comp(Id(typecheck(f)[1]), f), f)


def id_right(f: MapTerm) -> DTree:
    return DTree(ProofRule.ID_RIGHT, Comp(f, Id(typecheck(f)[0])), f)


def terminal(f: MapTerm) -> DTree:
    return DTree(ProofRule.TERMINAL_UNIQUE, f, Bang(typecheck(f)[0]))


def godement(lhs: MapTerm, rhs: MapTerm) -> DTree:
    return DTree(ProofRule.GODEMENT, lhs, rhs)


def fourman(f: MapTerm) -> DTree:
    cod = typecheck(f)[1]
    lhs = pair(Comp(ProjL(cod.left, cod.right), f), Comp(ProjR(cod.left, cod.right), f))
    return DTree(ProofRule.FOURMAN_UNIQUE, lhs, f)


def iter_anchor(u: MapTerm) -> DTree:
    a = typecheck(u)[0]
    return DTree(ProofRule.ITER_ANCHOR, Comp(Iter(u), zero_anchor(a)), Id(a))


def iter_step(u: MapTerm) -> DTree:
    a = typecheck(u)[0]
    return DTree(ProofRule.ITER_STEP, Comp(Iter(u), Cyl(a, SUCC)), Comp(u, Iter(u)))


def freyd(anchor: DTree, stepp: DTree) -> DTree:
    w = stepp.rhs.u
    u, v = anchor.rhs, stepp.rhs.v
    return DTree(ProofRule.FREYD_UNIQUE, w, Comp(Iter(v), times(u, Id(NAT))), (anchor, stepp))
