"""Command-line front end: ``prcert <command> ...``.

Errors print a single ``error: ...`` line on stderr and exit with status 1;
``fuzz`` exits with status 2 when it finds an invariant violation.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass, field

from .deduction import (
    ProofError, ProofFormatError, Sound, Unsound, check_proof, load_proof, soundness_check,
    verdict_json, verdict_text,
)
from .deduction.rules import assoc, freyd, id_left, id_right, iter_anchor, iter_step, refl, terminal
from .deduction.trees import TreeDescentViolation
from .evaluator import (
    DescentViolation, OracleExhausted, complexity, evaluate, oracle_eval, trace, trace_json,
)
from .generators import CATALOG, GenConfig, gen_map, gen_term, gen_value
from .syntax import Bang, Comp, ParseError, TermTypeError, parse_map, render, typecheck
from .values import Membership, member, parse_value, render_value

DEFAULT_FUEL = 10**6


class CliError(Exception):
    pass


def _term(text: str):
    try:
        u = parse_map(text)
    except ParseError as exc:
        raise CliError(f"parse error in term: {exc}") from exc
    try:
        typecheck(u)
    except TermTypeError as exc:
        raise CliError(f"type error: {exc}") from exc
    return u


def _value(text: str):
    try:
        return parse_value(text)
    except ValueError as exc:
        raise CliError(f"parse error in value: {exc}") from exc


def _proof(path: str):
    try:
        d = load_proof(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from exc
    except ProofFormatError as exc:
        raise CliError(f"proof format: {exc}") from exc
    try:
        check_proof(d)
    except ProofError as exc:
        where = f" at {render(exc.node.lhs)} = {render(exc.node.rhs)}" if exc.node is not None else ""
        raise CliError(f"proof rejected{where}: {exc}") from exc
    except TermTypeError as exc:
        raise CliError(f"type error in proof: {exc}") from exc
    return d


def cmd_eval(args) -> int:
    u, x = _term(args.term), _value(args.arg)
    out = evaluate(u, x, args.fuel)
    if out.terminated:
        print(render_value(out.value))
    else:
        print(f"fuel exhausted after {out.steps_used} steps, residual complexity {out.final_complexity}")
    return 0


def cmd_trace(args) -> int:
    u, x = _term(args.term), _value(args.arg)
    rows = trace(u, x, args.fuel)
    if args.json:
        print(trace_json(rows))
    else:
        for i, (code, arg, cx) in enumerate(rows):
            print(f"{i}\t{cx}\t{render_value(arg)}\t{render(code)}")
    return 0


def cmd_complexity(args) -> int:
    print(complexity(_term(args.term)))
    return 0


def cmd_check_proof(args) -> int:
    d = _proof(args.path)
    print(f"{render(d.lhs)} = {render(d.rhs)}")
    return 0


def cmd_soundness(args) -> int:
    d = _proof(args.path)
    x = _value(args.arg)
    a = typecheck(d.lhs)[0]
    if member(a, x) is not Membership.IN:
        raise CliError(f"argument {render_value(x)} is not a member of {render(a)}")
    v = soundness_check(d, x, args.fuel)
    print(verdict_json(v) if args.json else verdict_text(v))
    return 2 if isinstance(v, Unsound) else 0


# --------------------------------------------------------------------------
# fuzz


@dataclass
class FuzzReport:
    cases: int = 0
    descent_violations: int = 0
    oracle_mismatches: int = 0
    unsound: int = 0
    eval_exhaustions: int = 0
    proof_exhaustions: int = 0
    oracle_skipped: int = 0
    examples: list[str] = field(default_factory=list)

    @property
    def violations(self) -> int:
        return self.descent_violations + self.oracle_mismatches + self.unsound

    def note(self, text: str) -> None:
        if len(self.examples) < 5:
            self.examples.append(text)

    def lines(self) -> list[str]:
        out = [
            f"cases: {self.cases}",
            f"descent violations: {self.descent_violations}",
            f"oracle mismatches: {self.oracle_mismatches}",
            f"unsound verdicts: {self.unsound}",
            f"fuel exhaustions: {self.eval_exhaustions + self.proof_exhaustions}"
            f" (eval {self.eval_exhaustions}, proof {self.proof_exhaustions})",
        ]
        if self.oracle_skipped:
            out.append(f"oracle budget exceeded: {self.oracle_skipped}")
        out += [f"violation: {e}" for e in self.examples]
        return out


def random_proof(rng: random.Random, cfg: GenConfig):
    """A small random proof over generated terms, one zero- or two-premise rule deep."""
    d = max(1, cfg.max_depth - 2)
    a, b, c = (rng.choice(CATALOG) for _ in range(3))
    kind = rng.choice(["refl", "id_left", "id_right", "terminal", "assoc", "anchor", "step", "freyd"])
    u = gen_map(rng, a, b, d, 1, cfg)
    if kind == "refl":
        return refl(u)
    if kind == "id_left":
        return id_left(u)
    if kind == "id_right":
        return id_right(u)
    if kind == "terminal":
        return terminal(Comp(Bang(b), u))
    if kind == "assoc":
        v = gen_map(rng, b, c, d, 1, cfg)
        w = gen_map(rng, c, rng.choice(CATALOG), d, 1, cfg)
        return assoc(w, v, u)
    # iteration rules want an endomap with a cheap body
    e = gen_map(rng, b, b, d, 0, cfg)
    if kind == "anchor":
        return iter_anchor(e)
    if kind == "step":
        return iter_step(e)
    return freyd(iter_anchor(e), iter_step(e))


def fuzz(seed: int, cases: int, max_depth: int, fuel: int) -> FuzzReport:
    rng = random.Random(seed)
    cfg = GenConfig(max_depth=max_depth)
    rep = FuzzReport()
    while rep.cases < cases:
        u = gen_term(rng, cfg)
        x = gen_value(rng, typecheck(u)[0])
        if x is None:
            continue
        rep.cases += 1
        try:
            out = evaluate(u, x, fuel)
        except DescentViolation as exc:
            rep.descent_violations += 1
            rep.note(f"descent: {exc}")
            out = None
        if out is not None and not out.terminated:
            rep.eval_exhaustions += 1
        elif out is not None:
            try:
                want = oracle_eval(u, x, budget=10 * fuel)
            except OracleExhausted:
                rep.oracle_skipped += 1
            else:
                if want != out.value:
                    rep.oracle_mismatches += 1
                    rep.note(f"oracle: {render(u)} at {render_value(x)}")
        p = random_proof(rng, cfg)
        px = gen_value(rng, typecheck(p.lhs)[0])
        if px is None:
            continue
        try:
            v = soundness_check(p, px, fuel)
        except (TreeDescentViolation, DescentViolation) as exc:
            rep.descent_violations += 1
            rep.note(f"tree descent: {exc}")
            continue
        if isinstance(v, Unsound):
            rep.unsound += 1
            rep.note(f"unsound: {render(p.lhs)} = {render(p.rhs)} at {render_value(px)}")
        elif not isinstance(v, Sound):
            rep.proof_exhaustions += 1
    return rep


def cmd_fuzz(args) -> int:
    rep = fuzz(args.seed, args.cases, args.max_depth, args.fuel)
    for line in rep.lines():
        print(line)
    return 2 if rep.violations else 0


# --------------------------------------------------------------------------


def _nat(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return n


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="prcert", description="Evaluate map codes and check equational proofs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("eval", help="evaluate a term at an argument")
    s.add_argument("term")
    s.add_argument("arg")
    s.add_argument("--fuel", type=_nat, default=DEFAULT_FUEL)
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("trace", help="list every evaluation state")
    s.add_argument("term")
    s.add_argument("arg")
    s.add_argument("--fuel", type=_nat, default=DEFAULT_FUEL)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_trace)

    s = sub.add_parser("complexity", help="print the evaluation complexity of a term")
    s.add_argument("term")
    s.set_defaults(func=cmd_complexity)

    s = sub.add_parser("check-proof", help="validate a proof file")
    s.add_argument("path")
    s.set_defaults(func=cmd_check_proof)

    s = sub.add_parser("soundness", help="evaluate a proof tree at an argument")
    s.add_argument("path")
    s.add_argument("arg")
    s.add_argument("--fuel", type=_nat, default=DEFAULT_FUEL)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_soundness)

    s = sub.add_parser("fuzz", help="random invariant checks")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--cases", type=_nat, default=100)
    s.add_argument("--max-depth", type=_nat, default=6)
    s.add_argument("--fuel", type=_nat, default=DEFAULT_FUEL)
    s.set_defaults(func=cmd_fuzz)
    return p


def main(argv: list[str] | None = None) -> int:
    # long numerals and expanded iterates nest deeply
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except CliError as exc:
        msg = " ".join(str(exc).split())
        print(f"error: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
