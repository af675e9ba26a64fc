"""Complexity, single-step evaluation, fuelled evaluation and the reference oracle.

``step`` rewrites a (code, argument) state.  Every step away from a code of
positive complexity lands on a code of strictly smaller complexity in N[w],
and codes of complexity zero are stationary; ``evaluate`` checks both facts
on every step it takes and raises :class:`DescentViolation` otherwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

from . import ordinal
from .ordinal import OrdinalPoly
from .syntax import (
    BASIC, NAT, Abstr, Bang, Comp, Cyl, Diag, Id, Iter, MapTerm, ObjTerm, Prod,
    ProjL, ProjR, Sub, Succ, Swap, Zero, render, typecheck, SUCC, UNIT, ZERO,
)
from .values import (
    BOT, Membership, Pair, Single, XValue, is_proper, is_truth, member,
    render_value, DEFAULT_MEMBER_FUEL,
)

_ONE = ordinal.from_nat(1)


# --------------------------------------------------------------------------
# complexity


def complexity(u: MapTerm) -> OrdinalPoly:
    cached = getattr(u, "_cx", None)
    if cached is not None:
        return cached
    if isinstance(u, Id):
        cx = ordinal.ZERO
    elif isinstance(u, BASIC):
        cx = _ONE
    elif isinstance(u, Comp):
        cx = complexity(u.u) + complexity(u.v) + _ONE
    elif isinstance(u, Cyl):
        cx = complexity(u.v) + _ONE
    elif isinstance(u, Iter):
        cx = ordinal.mul_omega(complexity(u.u) + _ONE)
    elif isinstance(u, Abstr):
        cx = complexity(u.u)
    else:
        raise TypeError(f"not a map code: {u!r}")
    object.__setattr__(u, "_cx", cx)
    return cx


def _stationary(u: MapTerm) -> bool:
    """``complexity(u) == 0`` without computing it: identities, possibly restricted."""
    while isinstance(u, Abstr):
        u = u.u
    return isinstance(u, Id)


def _packed_plus_one(v: MapTerm) -> int:
    cached = v.__dict__.get("_pk1")
    if cached is None:
        cached = ordinal.pack(complexity(v) + _ONE)
        object.__setattr__(v, "_pk1", cached)
    return cached


def codomain(u: MapTerm) -> ObjTerm:
    """Target object read off the code, without validating it.

    Stepped codes need not type-check (a guard that has been passed leaves
    its core behind), so this walks only the left spine.
    """
    cached = getattr(u, "_cod", None)
    if cached is not None:
        return cached
    if isinstance(u, Id):
        out = u.obj
    elif isinstance(u, (Zero, Succ)):
        out = NAT
    elif isinstance(u, Bang):
        out = UNIT
    elif isinstance(u, Diag):
        out = Prod(u.obj, u.obj)
    elif isinstance(u, Swap):
        out = Prod(u.right, u.left)
    elif isinstance(u, ProjL):
        out = u.left
    elif isinstance(u, ProjR):
        out = u.right
    elif isinstance(u, Comp):
        out = codomain(u.v)
    elif isinstance(u, Cyl):
        out = Prod(u.obj, codomain(u.v))
    elif isinstance(u, Iter):
        out = codomain(u.u)
    elif isinstance(u, Abstr):
        out = Sub(codomain(u.u), u.psi)
    else:
        raise TypeError(f"not a map code: {u!r}")
    object.__setattr__(u, "_cod", out)
    return out


def _basic_domain(u: MapTerm) -> ObjTerm:
    if isinstance(u, Zero):
        return UNIT
    if isinstance(u, Succ):
        return NAT
    if isinstance(u, (Bang, Diag)):
        return u.obj
    return Prod(u.left, u.right)


def _apply_basic(u: MapTerm, x: XValue) -> XValue:
    if isinstance(u, Zero):
        return Single(0)
    if isinstance(u, Succ):
        return Single(x.n + 1)
    if isinstance(u, Bang):
        return Single(0)
    if isinstance(u, Diag):
        return Pair(x, x)
    if isinstance(u, Swap):
        return Pair(x.b, x.a)
    if isinstance(u, ProjL):
        return x.a
    return x.b


def expand(u: MapTerm, n: int) -> MapTerm:
    """Run-time code expansion: ``Id`` for 0, ``u`` for 1, then ``Comp(expand(u, n-1), u)``.

    Built iteratively with complexity and codomain cached on every node, so
    long chains never trigger deep recursion later.
    """
    if n == 0:
        return Id(codomain(u))
    cu = complexity(u)
    acc = u
    cx = cu
    cod = codomain(u)
    for _ in range(n - 1):
        acc = Comp(acc, u)
        cx = cx + cu + _ONE
        object.__setattr__(acc, "_cx", cx)
        object.__setattr__(acc, "_cod", cod)
    return acc


def numeral(n: int) -> MapTerm:
    """``s o (s o ... (s o 0))`` with ``n`` successors."""
    acc: MapTerm = ZERO
    for _ in range(n):
        acc = Comp(SUCC, acc)
    return acc


# --------------------------------------------------------------------------
# step


@dataclass(frozen=True)
class EvalState:
    code: MapTerm
    arg: XValue


def _screen(obj: ObjTerm, x: XValue, fuel: int) -> bool:
    # Unknown counts as outside: uncertified arguments go to bot.
    return member(obj, x, fuel) is Membership.IN


def step(st: EvalState, member_fuel: int = DEFAULT_MEMBER_FUEL) -> EvalState:
    code, arg = st.code, st.arg
    if complexity(code).is_zero():
        return st
    if not is_proper(arg):
        return EvalState(Id(codomain(code)), BOT)
    if isinstance(code, BASIC):
        if not _screen(_basic_domain(code), arg, member_fuel):
            return EvalState(Id(codomain(code)), BOT)
        return EvalState(Id(codomain(code)), _apply_basic(code, arg))
    if isinstance(code, Comp):
        # Walk down the first factors to the one that moves; same result as
        # recursing once per level, without the call overhead on long spines.
        outer = []
        cur = code
        while isinstance(cur, Comp) and not _stationary(cur.u):
            outer.append(cur.v)
            cur = cur.u
        if isinstance(cur, Comp):
            sub = EvalState(cur.v, arg)
        else:
            sub = step(EvalState(cur, arg), member_fuel)
        acc = sub.code
        if outer:
            # only the new top's complexity is needed; sum it in packed form
            total = ordinal.pack(complexity(acc))
            for v in reversed(outer):
                acc = Comp(v, acc)
                total += _packed_plus_one(v)
            object.__setattr__(acc, "_cx", ordinal.unpack(total))
        return EvalState(acc, sub.arg)
    if isinstance(code, Cyl):
        if not isinstance(arg, Pair):
            return EvalState(Id(codomain(code)), BOT)
        if complexity(code.v).is_zero():
            return EvalState(Id(codomain(code)), arg)
        sub = step(EvalState(code.v, arg.b), member_fuel)
        if not is_proper(sub.arg):
            return EvalState(Id(codomain(code)), BOT)
        out = Cyl(code.obj, sub.code)
        object.__setattr__(out, "_cx", complexity(sub.code) + _ONE)
        return EvalState(out, Pair(arg.a, sub.arg))
    if isinstance(code, Iter):
        if not (isinstance(arg, Pair) and isinstance(arg.b, Single)):
            return EvalState(Id(codomain(code)), BOT)
        return EvalState(expand(code.u, arg.b.n), arg.a)
    if isinstance(code, Abstr):
        guard = Sub(_base_of_guard(code), code.chi)
        if not _screen(guard, arg, member_fuel):
            return EvalState(Id(codomain(code)), BOT)
        return step(EvalState(code.u, arg), member_fuel)
    raise TypeError(f"not a map code: {code!r}")


def _base_of_guard(code: Abstr) -> ObjTerm:
    return typecheck(code.chi)[0]


# --------------------------------------------------------------------------
# complexity-controlled iteration


class Status(Enum):
    TERMINATED = "terminated"
    FUEL_EXHAUSTED = "fuel_exhausted"


class DescentViolation(AssertionError):
    """A step failed to lower complexity (or moved a stationary state)."""


@dataclass(frozen=True)
class EvalOutcome:
    status: Status
    value: XValue | None
    steps_used: int
    final_complexity: OrdinalPoly

    @property
    def terminated(self) -> bool:
        return self.status is Status.TERMINATED


def check_descent(before: EvalState, after: EvalState) -> None:
    cb = complexity(before.code)
    ca = complexity(after.code)
    if cb.is_zero():
        if after != before:
            raise DescentViolation(f"state at complexity 0 moved: {render(before.code)}")
    elif not ca < cb:
        raise DescentViolation(
            f"no descent: {render(before.code)} ({cb}) -> {render(after.code)} ({ca})"
        )


def evaluate(u: MapTerm, x: XValue, fuel: int, member_fuel: int = DEFAULT_MEMBER_FUEL) -> EvalOutcome:
    """Iterate :func:`step` while complexity is positive, at most ``fuel`` times."""
    if fuel < 0:
        raise ValueError("fuel must be nonnegative")
    st = EvalState(u, x)
    steps = 0
    while not complexity(st.code).is_zero() and steps < fuel:
        nxt = step(st, member_fuel)
        check_descent(st, nxt)
        st = nxt
        steps += 1
    cx = complexity(st.code)
    if cx.is_zero():
        return EvalOutcome(Status.TERMINATED, st.arg, steps, cx)
    return EvalOutcome(Status.FUEL_EXHAUSTED, None, steps, cx)


def trace(u: MapTerm, x: XValue, fuel: int, member_fuel: int = DEFAULT_MEMBER_FUEL) -> list[tuple[MapTerm, XValue, OrdinalPoly]]:
    """All states visited by :func:`evaluate`, starting with the input state."""
    st = EvalState(u, x)
    out = [(st.code, st.arg, complexity(st.code))]
    steps = 0
    while not complexity(st.code).is_zero() and steps < fuel:
        nxt = step(st, member_fuel)
        check_descent(st, nxt)
        st = nxt
        steps += 1
        out.append((st.code, st.arg, complexity(st.code)))
    return out


def trace_json(steps: list[tuple[MapTerm, XValue, OrdinalPoly]]) -> str:
    rows = [
        {"step": i, "code": render(code), "arg": render_value(arg), "complexity": str(cx)}
        for i, (code, arg, cx) in enumerate(steps)
    ]
    return json.dumps(rows, indent=2)


# --------------------------------------------------------------------------
# reference semantics


class OracleExhausted(RuntimeError):
    pass


@dataclass
class _Budget:
    left: int | None
    spent: int = field(default=0)

    def tick(self, k: int = 1) -> None:
        self.spent += k
        if self.left is not None and self.spent > self.left:
            raise OracleExhausted(f"oracle budget of {self.left} operations exceeded")


def oracle_eval(u: MapTerm, x: XValue, budget: int | None = None) -> XValue:
    """Direct denotation of ``u`` at ``x`` by structural recursion.

    Applies the same argument screening as :func:`step` (basic constants and
    guards check membership, shape mismatches give bot), so it is defined on
    every input, not just on members of the domain.  ``budget`` bounds the
    number of primitive operations; exceeding it raises :class:`OracleExhausted`.
    """
    return _oracle(u, x, _Budget(budget))


def _oracle(u: MapTerm, x: XValue, b: _Budget) -> XValue:
    b.tick()
    if complexity(u).is_zero():
        return x
    if not is_proper(x):
        return BOT
    if isinstance(u, BASIC):
        fuel = DEFAULT_MEMBER_FUEL if b.left is None else max(0, b.left - b.spent)
        if not _screen(_basic_domain(u), x, fuel):
            return BOT
        return _apply_basic(u, x)
    if isinstance(u, Comp):
        return _oracle(u.v, _oracle(u.u, x, b), b)
    if isinstance(u, Cyl):
        if not isinstance(x, Pair):
            return BOT
        right = _oracle(u.v, x.b, b)
        return Pair(x.a, right) if is_proper(right) else BOT
    if isinstance(u, Iter):
        if not (isinstance(x, Pair) and isinstance(x.b, Single)):
            return BOT
        acc = x.a
        for _ in range(x.b.n):
            acc = _oracle(u.u, acc, b)
            if not is_proper(acc):
                return BOT
        return acc
    if isinstance(u, Abstr):
        base = _base_of_guard(u)
        if member(base, x) is not Membership.IN:
            return BOT
        if not is_truth(_oracle(u.chi, x, b)):
            return BOT
        return _oracle(u.u, x, b)
    raise TypeError(f"not a map code: {u!r}")
