"""Similarity trees: argumentation of proofs, the tree step and tree complexity.

A node is labelled ``u/x ~ v/y``.  Dummy nodes carry the box argument on
both sides and remember the proof they stand for, so that they can be
argued later when a composition step shifts its computed argument into them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .. import ordinal
from ..evaluator import EvalState, complexity, step
from ..ordinal import OrdinalPoly
from ..syntax import UNIT, Comp, Id, MapTerm, render
from ..values import BOX, Box, Pair, XValue, is_box, render_value
from .rules import DTree, EQUATIONAL, ProofRule


@dataclass(frozen=True)
class SimPair:
    left_code: MapTerm
    left_arg: XValue
    right_code: MapTerm
    right_arg: XValue

    def render(self) -> str:
        return (f"{render(self.left_code)}/{render_value(self.left_arg)} ~ "
                f"{render(self.right_code)}/{render_value(self.right_arg)}")


@dataclass(frozen=True)
class STree:
    label: SimPair
    left: "STree | None" = None
    right: "STree | None" = None
    # proof a dummy node stands for; not part of the tree's identity
    source: DTree | None = field(default=None, compare=False, repr=False)

    def children(self) -> list["STree"]:
        return [c for c in (self.left, self.right) if c is not None]

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children())

    def shape(self):
        """Parent structure without labels, for shape comparisons."""
        return (self.left.shape() if self.left else None,
                self.right.shape() if self.right else None)


ABORTED = STree(SimPair(Id(UNIT), BOX, Id(UNIT), BOX))


class ArgueError(ValueError):
    pass


class TreeDescentViolation(AssertionError):
    pass


def is_dummy(t: STree) -> bool:
    lab = t.label
    if not (is_box(lab.left_arg) and is_box(lab.right_arg)):
        return False
    return all(is_dummy(c) for c in t.children())


def _boxed(t: STree) -> bool:
    # argumentation never puts real arguments below a dummy node
    return is_box(t.label.left_arg) and is_box(t.label.right_arg)


def dummy_tree(d: DTree) -> STree:
    kids = [dummy_tree(p) for p in d.premises]
    return STree(
        SimPair(d.lhs, BOX, d.rhs, BOX),
        kids[0] if kids else None,
        kids[1] if len(kids) > 1 else None,
        source=d,
    )


class _Session:
    """Per-evaluation caches: equal codes are shared, and steps are memoized by code identity."""

    def __init__(self):
        self.codes: dict[MapTerm, MapTerm] = {}
        self.steps: dict[tuple[int, XValue], tuple] = {}

    def intern(self, u: MapTerm) -> MapTerm:
        return self.codes.setdefault(u, u)

    def step(self, code: MapTerm, arg: XValue) -> tuple[MapTerm, XValue]:
        key = (id(code), arg)
        hit = self.steps.get(key)
        if hit is not None and hit[0] is code:
            return hit[1], hit[2]
        nxt = step(EvalState(code, arg))
        out = self.intern(nxt.code), nxt.arg
        self.steps[key] = (code, *out)
        return out


def argue(d: DTree, x: XValue, session: _Session | None = None) -> STree:
    """Spread the root argument ``x`` down the proof tree ``d``."""
    if is_box(x):
        return dummy_tree(d)
    ses = session or _Session()
    rule = d.rule
    label = SimPair(ses.intern(d.lhs), x, ses.intern(d.rhs), x)
    if rule in EQUATIONAL:
        return STree(label, source=d)
    if rule in (ProofRule.SYM, ProofRule.TRANS):
        kids = [argue(p, x, ses) for p in d.premises]
        return STree(label, kids[0], kids[1] if len(kids) > 1 else None, source=d)
    if rule is ProofRule.COMP_COMPAT:
        return STree(label, dummy_tree(d.premises[0]), argue(d.premises[1], x, ses), source=d)
    if rule is ProofRule.CYL_COMPAT:
        if not isinstance(x, Pair):
            raise ArgueError(f"cylinder compatibility needs a pair argument, got {render_value(x)}")
        return STree(label, argue(d.premises[0], x.b, ses), source=d)
    if rule is ProofRule.FREYD_UNIQUE:
        if not isinstance(x, Pair):
            raise ArgueError(f"iteration uniqueness needs a pair argument, got {render_value(x)}")
        return STree(label, argue(d.premises[0], x.a, ses), argue(d.premises[1], x, ses), source=d)
    raise ArgueError(f"no argumentation case for {rule.label}")


def tree_complexity(t: STree) -> OrdinalPoly:
    """Sum of all code complexities plus one per node that has children."""
    cached = t.__dict__.get("_cx")
    if cached is not None:
        return cached
    # iterative post-order so deep trees do not hit the recursion limit
    stack = [(t, False)]
    while stack:
        node, ready = stack.pop()
        if "_cx" in node.__dict__:
            continue
        kids = node.children()
        if not ready:
            stack.append((node, True))
            stack.extend((k, False) for k in kids if "_cx" not in k.__dict__)
            continue
        total = complexity(node.label.left_code) + complexity(node.label.right_code)
        for k in kids:
            total = total + k.__dict__["_cx"]
        if kids:
            total = total + _ONE
        object.__setattr__(node, "_cx", total)
    return t.__dict__["_cx"]


_ONE = ordinal.from_nat(1)


class _Irregular(Exception):
    pass


# --------------------------------------------------------------------------
# the tree step
#
# Evaluation runs on mutable working nodes whose complexities are packed
# integers (see ordinal.pack); STree stays the immutable public form.


def _pc(u: MapTerm) -> int:
    d = u.__dict__
    v = d.get("_pk")
    if v is None:
        v = ordinal.pack(complexity(u))
        object.__setattr__(u, "_pk", v)
    return v


class _W:
    __slots__ = ("lc", "la", "rc", "ra", "left", "right", "source", "frozen", "total")

    def __init__(self, lc, la, rc, ra, left=None, right=None, source=None, frozen=None):
        self.lc, self.la, self.rc, self.ra = lc, la, rc, ra
        self.left, self.right, self.source = left, right, source
        self.frozen = frozen  # the dummy STree this node stands for, if boxed
        self.total = 0


def _from_stree(t: STree) -> _W:
    lab = t.label
    if isinstance(lab.left_arg, Box) and isinstance(lab.right_arg, Box):
        w = _W(lab.left_code, lab.left_arg, lab.right_code, lab.right_arg, source=t.source, frozen=t)
        w.total = ordinal.pack(tree_complexity(t))
        return w
    w = _W(lab.left_code, lab.left_arg, lab.right_code, lab.right_arg,
           _from_stree(t.left) if t.left is not None else None,
           _from_stree(t.right) if t.right is not None else None,
           t.source)
    w.total = _pc(w.lc) + _pc(w.rc)
    if w.left is not None or w.right is not None:
        w.total += 1 + sum(k.total for k in (w.left, w.right) if k is not None)
    return w


def _to_stree(w: _W) -> STree:
    if w.frozen is not None:
        return w.frozen
    return STree(SimPair(w.lc, w.la, w.rc, w.ra),
                 _to_stree(w.left) if w.left is not None else None,
                 _to_stree(w.right) if w.right is not None else None,
                 source=w.source)


def _zero_leaf(w: _W) -> bool:
    return w.total == 0 and w.left is None and w.right is None


def _anchored(u: MapTerm) -> bool:
    return isinstance(u, Comp) and _pc(u.u) == 0


def _wstep(w: _W, ses: _Session) -> tuple[_W, bool]:
    """Step ``w`` in place (or return its replacement); keeps ``total`` current."""
    if w.frozen is not None:
        return w, False
    lx, rx = w.la, w.ra
    if isinstance(lx, Box) or isinstance(rx, Box):
        raise _Irregular("label mixes dummy and real arguments")
    left, right = w.left, w.right
    if left is None and right is None:
        lc, la = ses.step(w.lc, lx)
        rc, ra = ses.step(w.rc, rx)
        if lc is w.lc and rc is w.rc and la == lx and ra == rx:
            return w, False
        w.lc, w.la, w.rc, w.ra = lc, la, rc, ra
        w.total = _pc(lc) + _pc(rc)
        return w, True
    if all(_zero_leaf(c) for c in (left, right) if c is not None):
        flat = _W(w.lc, lx, w.rc, rx)
        flat.total = _pc(w.lc) + _pc(w.rc)
        return flat, True
    hold = left is not None and left.frozen is not None
    if hold and right is not None and _zero_leaf(right) and _anchored(w.lc) and _anchored(w.rc):
        if not (rx == lx and right.la == lx and right.ra == lx):
            raise _Irregular("shift with unequal arguments")
        if left.source is None:
            raise _Irregular("dummy node without a proof to argue")
        try:
            return _from_stree(argue(left.source, lx, ses)), True
        except ArgueError as exc:
            raise _Irregular(str(exc)) from exc
    if hold:
        # anchored sides wait for the shift: the dummy premise still needs their argument
        lc, la = (w.lc, lx) if _anchored(w.lc) else ses.step(w.lc, lx)
        rc, ra = (w.rc, rx) if _anchored(w.rc) else ses.step(w.rc, rx)
    else:
        lc, la = ses.step(w.lc, lx)
        rc, ra = ses.step(w.rc, rx)
    changed = not (lc is w.lc and rc is w.rc and la == lx and ra == rx)
    w.lc, w.la, w.rc, w.ra = lc, la, rc, ra
    total = _pc(lc) + _pc(rc) + 1
    if left is not None:
        if left.total:
            w.left, ch = _wstep(left, ses)
            changed = changed or ch
        total += w.left.total
    if right is not None:
        if right.total:
            w.right, ch = _wstep(right, ses)
            changed = changed or ch
        total += w.right.total
    w.total = total
    return w, changed


def _step_root(w: _W, ses: _Session) -> _W | None:
    """One step of the whole tree; ``None`` means the tree aborts."""
    try:
        nxt, changed = _wstep(w, ses)
    except _Irregular:
        return None
    return nxt if changed else None


def tree_step(t: STree, session: _Session | None = None) -> STree:
    """One deduction-tree evaluation step; irregular or stuck trees are aborted."""
    if tree_complexity(t).is_zero():
        return t
    nxt = _step_root(_from_stree(t), session or _Session())
    return ABORTED if nxt is None else _to_stree(nxt)


class TreeStatus(Enum):
    TERMINATED = "terminated"
    FUEL_EXHAUSTED = "fuel_exhausted"


@dataclass(frozen=True)
class TreeOutcome:
    status: TreeStatus
    tree: STree
    steps: int

    @property
    def terminated(self) -> bool:
        return self.status is TreeStatus.TERMINATED


def tree_eval(t: STree, fuel: int, certify: bool = True) -> TreeOutcome:
    """Iterate :func:`tree_step` while tree complexity is positive, at most ``fuel`` times.

    With ``certify`` every step is checked to lower the tree complexity, and
    :class:`TreeDescentViolation` is raised otherwise.
    """
    steps = 0
    w = _from_stree(t)
    ses = _Session()
    while w.total and steps < fuel:
        before = w.total
        nxt = _step_root(w, ses)
        steps += 1
        if nxt is None:
            # the aborted tree has complexity 0, below any positive total
            return TreeOutcome(TreeStatus.TERMINATED, ABORTED, steps)
        w = nxt
        if certify and not w.total < before:
            raise TreeDescentViolation(
                f"tree complexity {ordinal.unpack(before)} -> {ordinal.unpack(w.total)}")
    status = TreeStatus.TERMINATED if w.total == 0 else TreeStatus.FUEL_EXHAUSTED
    return TreeOutcome(status, _to_stree(w), steps)


def render_tree(t: STree, indent: int = 0) -> str:
    lines = ["  " * indent + t.label.render()]
    for child in t.children():
        lines.append(render_tree(child, indent + 1))
    return "\n".join(lines)


def is_aborted(t: STree) -> bool:
    return t == ABORTED


__all__ = [
    "SimPair", "STree", "ABORTED", "ArgueError", "TreeDescentViolation", "TreeStatus",
    "TreeOutcome", "argue", "dummy_tree", "is_dummy", "tree_complexity", "tree_step",
    "tree_eval", "render_tree", "is_aborted"
]
