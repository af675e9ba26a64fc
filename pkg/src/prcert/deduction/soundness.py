"""Termination-conditioned soundness as an executable check."""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..evaluator import evaluate
from ..ordinal import OrdinalPoly
from ..values import XValue, render_value
from .rules import DTree
from .trees import ArgueError, argue, is_aborted, tree_complexity, tree_eval


@dataclass(frozen=True)
class Sound:
    value: XValue
    steps: int


@dataclass(frozen=True)
class NotTerminated:
    residual: OrdinalPoly
    steps: int


@dataclass(frozen=True)
class Unsound:
    left: XValue | None
    right: XValue | None
    aborted: bool = False
    reason: str = ""


Verdict = Sound | NotTerminated | Unsound


def soundness_check(d: DTree, x: XValue, fuel: int) -> Verdict:
    """Evaluate the argued proof; if it terminates, compare with direct evaluation.

    Sound means the final root arguments and the direct values of both root
    codes all coincide.  Anything else after termination is reported as
    :class:`Unsound` with the witnesses (``aborted`` marks an abort node).
    """
    try:
        t = argue(d, x)
    except ArgueError as exc:
        return Unsound(None, None, aborted=True, reason=str(exc))
    out = tree_eval(t, fuel)
    if not out.terminated:
        return NotTerminated(tree_complexity(out.tree), out.steps)
    if is_aborted(out.tree):
        return Unsound(None, None, aborted=True, reason="tree evaluation aborted")
    lab = out.tree.label
    direct_l = evaluate(d.lhs, x, fuel)
    direct_r = evaluate(d.rhs, x, fuel)
    if not (direct_l.terminated and direct_r.terminated):
        return Unsound(lab.left_arg, lab.right_arg, reason="direct evaluation ran out of fuel")
    values = [lab.left_arg, lab.right_arg, direct_l.value, direct_r.value]
    if all(v == values[0] for v in values):
        return Sound(values[0], out.steps)
    return Unsound(lab.left_arg, lab.right_arg, reason="root values differ from direct evaluation")


def verdict_json(v: Verdict) -> str:
    if isinstance(v, Sound):
        body = {"verdict": "sound", "value": render_value(v.value), "steps": v.steps}
    elif isinstance(v, NotTerminated):
        body = {"verdict": "not_terminated", "residual": str(v.residual), "steps": v.steps}
    else:
        body = {
            "verdict": "unsound",
            "left": None if v.left is None else render_value(v.left),
            "right": None if v.right is None else render_value(v.right),
            "aborted": v.aborted,
            "reason": v.reason,
        }
    return json.dumps(body)


def verdict_text(v: Verdict) -> str:
    if isinstance(v, Sound):
        return f"sound {render_value(v.value)} ({v.steps} tree steps)"
    if isinstance(v, NotTerminated):
        return f"not terminated, residual complexity {v.residual} after {v.steps} tree steps"
    left = "-" if v.left is None else render_value(v.left)
    right = "-" if v.right is None else render_value(v.right)
    return f"UNSOUND left={left} right={right}: {v.reason}"
