"""Deduction trees for equations between map codes, and their soundness check."""

from .proofio import ProofFormatError, dump_proof, load_proof, loads_proof
from .rules import DTree, ProofError, ProofRule, check_proof
from .soundness import NotTerminated, Sound, Unsound, soundness_check, verdict_json, verdict_text
from .trees import ABORTED, STree, argue, is_aborted, tree_complexity, tree_eval, tree_step

__all__ = [
    "ProofFormatError", "dump_proof", "load_proof", "loads_proof",
    "DTree", "ProofError", "ProofRule", "check_proof",
    "NotTerminated", "Sound", "Unsound", "soundness_check", "verdict_json", "verdict_text",
    "ABORTED", "STree", "argue", "is_aborted", "tree_complexity", "tree_eval", "tree_step",
]
