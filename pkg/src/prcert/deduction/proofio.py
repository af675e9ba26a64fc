"""Line-oriented proof files.

Each non-blank, non-comment line declares one node::

    node <id> <rule> "<lhs>" "<rhs>" [premise-ids]

Premises must be declared before use; the last node is the root.  A node
that is used as a premise several times is written once.
"""

from __future__ import annotations

import shlex

from ..syntax import ParseError, parse_map, render
from .rules import DTree, ProofRule


class ProofFormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def loads_proof(text: str) -> DTree:
    nodes: dict[str, DTree] = {}
    last = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            parts = shlex.split(line)
        except ValueError as exc:
            raise ProofFormatError(str(exc), lineno) from exc
        if len(parts) < 5 or parts[0] != "node":
            raise ProofFormatError('expected: node <id> <rule> "<lhs>" "<rhs>" [premises]', lineno)
        _, ident, rule_name, lhs_text, rhs_text, *prem_ids = parts
        if ident in nodes:
            raise ProofFormatError(f"duplicate node id {ident!r}", lineno)
        try:
            rule = ProofRule.from_label(rule_name)
        except ValueError as exc:
            raise ProofFormatError(str(exc), lineno) from exc
        try:
            lhs, rhs = parse_map(lhs_text), parse_map(rhs_text)
        except ParseError as exc:
            raise ProofFormatError(f"bad term: {exc}", lineno) from exc
        premises = []
        for pid in prem_ids:
            if pid not in nodes:
                raise ProofFormatError(f"premise {pid!r} not declared earlier", lineno)
            premises.append(nodes[pid])
        last = nodes[ident] = DTree(rule, lhs, rhs, tuple(premises))
    if last is None:
        raise ProofFormatError("no nodes", 0)
    return last


def load_proof(path: str) -> DTree:
    with open(path, encoding="utf-8") as fh:
        return loads_proof(fh.read())


def dump_proof(d: DTree, header: str | None = None) -> str:
    ids: dict[int, str] = {}
    lines = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())

    def emit(node: DTree) -> str:
        key = id(node)
        if key in ids:
            return ids[key]
        prem = [emit(p) for p in node.premises]
        ident = f"n{len(ids)}"
        ids[key] = ident
        fields = ["node", ident, node.rule.label, f'"{render(node.lhs)}"', f'"{render(node.rhs)}"', *prem]
        lines.append(" ".join(fields))
        return ident

    emit(d)
    return "\n".join(lines) + "\n"
