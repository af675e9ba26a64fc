"""Ordinal-certified evaluation of primitive-recursive map codes."""

from .evaluator import EvalOutcome, Status, complexity, evaluate, numeral, oracle_eval, step, trace
from .ordinal import OrdinalPoly
from .syntax import parse, parse_map, render, typecheck
from .values import encode_tuple, parse_value, render_value

__all__ = [
    "EvalOutcome", "Status", "complexity", "evaluate", "numeral", "oracle_eval", "step", "trace",
    "OrdinalPoly", "parse", "parse_map", "render", "typecheck",
    "encode_tuple", "parse_value", "render_value",
]
