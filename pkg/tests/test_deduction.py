import random

import pytest

from prcert import ordinal as o
from prcert.deduction import (
    ABORTED, DTree, NotTerminated, ProofError, ProofFormatError, ProofRule, STree, Sound,
    argue, check_proof, dump_proof, is_aborted, loads_proof, soundness_check, tree_complexity,
    tree_eval, tree_step, verdict_json,
)
from prcert.deduction.corpus import by_name, corpus
from prcert.deduction.rules import (
    assoc, cong_comp, freyd, godement, iter_anchor, iter_step, refl, sym, terminal, trans,
)
from prcert.deduction.trees import SimPair, dummy_tree, is_dummy
from prcert.evaluator import oracle_eval
from prcert.generators import gen_value
from prcert.syntax import NAT, SUCC, Bang, Comp, Cyl, Id, Iter, Prod, typecheck
from prcert.values import BOX, Pair, Single

NN = Prod(NAT, NAT)


def s(n):
    return Single(n)


def p(a, b):
    return Pair(Single(a), Single(b))


def leaf(lc, la, rc, ra):
    return STree(SimPair(lc, la, rc, ra))


# --- validation ------------------------------------------------------------

def test_refl_and_trans_accepted():
    assert check_proof(refl(SUCC)) == (SUCC, SUCC)
    a = Comp(Comp(SUCC, SUCC), SUCC)
    b = Comp(SUCC, Comp(SUCC, SUCC))
    d = trans(assoc(SUCC, SUCC, SUCC), sym(assoc(SUCC, SUCC, SUCC)))
    assert d.rule is ProofRule.TRANS
    assert check_proof(d) == (a, a)
    assert check_proof(assoc(SUCC, SUCC, SUCC)) == (a, b)


def test_worked_subtraction_example_accepted():
    d = by_name("monus_succ_both").proof
    lhs, rhs = check_proof(d)
    for a in range(6):
        for n in range(6):
            assert oracle_eval(lhs, p(a, n)) == oracle_eval(rhs, p(a, n)) == s(max(a - n, 0))


@pytest.mark.parametrize("bad", [
    DTree(ProofRule.REFL, SUCC, Comp(SUCC, Id(NAT))),
    DTree(ProofRule.TRANS, SUCC, SUCC, (refl(SUCC),)),
    DTree(ProofRule.ASSOC, Comp(SUCC, SUCC), Comp(SUCC, SUCC)),
    DTree(ProofRule.ITER_ANCHOR, Iter(SUCC), Id(NAT)),
    DTree(ProofRule.TERMINAL_UNIQUE, SUCC, Bang(NAT)),
    DTree(ProofRule.SYM, SUCC, SUCC, (assoc(SUCC, SUCC, SUCC),)),
])
def test_rule_mismatch_rejected(bad):
    with pytest.raises(ProofError) as info:
        check_proof(bad)
    assert info.value.node is bad


def test_mismatch_deep_in_tree_names_that_node():
    bad = DTree(ProofRule.REFL, SUCC, Comp(SUCC, Id(NAT)))
    d = DTree(ProofRule.SYM, Comp(SUCC, Id(NAT)), SUCC, (bad,))
    with pytest.raises(ProofError) as info:
        check_proof(d)
    assert info.value.node is bad
    assert "Refl" in str(info.value)


def test_freyd_instance():
    d = freyd(iter_anchor(SUCC), iter_step(SUCC))
    lhs, rhs = check_proof(d)
    assert lhs == Iter(SUCC)
    assert rhs == Comp(Iter(SUCC), Cyl(NAT, Id(NAT)))


# --- proof files -----------------------------------------------------------

def test_proof_file_roundtrip_over_corpus():
    for e in corpus():
        text = dump_proof(e.proof, header=e.description)
        back = loads_proof(text)
        assert check_proof(back) == check_proof(e.proof)
        assert dump_proof(back, header=e.description) == text


@pytest.mark.parametrize("text, line", [
    ('node a Refl "s"\n', 1),
    ('node a Nope "s" "s"\n', 1),
    ('node a Refl "s" "s"\nnode b Sym "s" "s" zz\n', 2),
    ('# nothing\n', 0),
    ('node a Refl "comp(s" "s"\n', 1),
    ('node a Refl "s" "s"\nnode a Refl "s" "s"\n', 2),
])
def test_proof_format_errors(text, line):
    with pytest.raises(ProofFormatError) as info:
        loads_proof(text)
    assert info.value.line == line


# --- argumentation ---------------------------------------------------------

def test_argue_refl():
    t = argue(refl(SUCC), s(3))
    assert t == leaf(SUCC, s(3), SUCC, s(3))


def test_argue_box_is_dummy():
    d = by_name("add_freyd").proof
    t = argue(d, BOX)
    assert t == dummy_tree(d)
    assert is_dummy(t)


def test_argue_freyd_distribution():
    d = by_name("monus_succ_both").proof
    t = argue(d, p(4, 7))
    # trans over the two uniqueness instances
    for fr in (t.left, t.right.left):
        anchor, stepp = fr.left, fr.right
        assert anchor.label.left_arg == s(4)
        assert stepp.label.left_arg == p(4, 7)


def test_argue_comp_compat_second_factor_only():
    pv, pu = sym(assoc(SUCC, SUCC, SUCC)), iter_anchor(SUCC)
    d = cong_comp(pv, pu)
    t = argue(d, s(2))
    assert is_dummy(t.left)
    assert t.right.label.left_arg == s(2)


def test_argue_preserves_shape():
    rng = random.Random(1)
    for e in corpus():
        a = typecheck(e.proof.lhs)[0]
        x = gen_value(rng, a)
        t = argue(e.proof, x)
        assert t.shape() == dummy_tree(e.proof).shape()
        assert t.size() == dummy_tree(e.proof).size()


# --- tree complexity and stepping -----------------------------------------

def test_tree_complexity_fixtures():
    assert tree_complexity(leaf(Id(NAT), BOX, Id(NAT), BOX)) == o.ZERO
    assert tree_complexity(leaf(SUCC, s(1), SUCC, s(1))) == o.from_nat(2)
    t = STree(SimPair(SUCC, BOX, SUCC, BOX), leaf(Id(NAT), BOX, Id(NAT), BOX))
    assert tree_complexity(t) == o.from_nat(3)
    two = STree(SimPair(SUCC, BOX, SUCC, BOX), leaf(Id(NAT), BOX, Id(NAT), BOX),
                leaf(Id(NAT), BOX, Id(NAT), BOX))
    assert tree_complexity(two) == o.from_nat(3)


def test_tree_step_leaf():
    t = leaf(SUCC, s(1), SUCC, s(1))
    assert tree_step(t) == leaf(Id(NAT), s(2), Id(NAT), s(2))


def test_tree_step_near_flat_collapses():
    kid = leaf(Id(NAT), s(3), Id(NAT), s(3))
    t = STree(SimPair(SUCC, s(3), SUCC, s(3)), kid, kid)
    assert tree_step(t) == leaf(SUCC, s(3), SUCC, s(3))


def test_tree_step_shift():
    v, v2 = Comp(Comp(SUCC, SUCC), SUCC), Comp(SUCC, Comp(SUCC, SUCC))
    pv = assoc(SUCC, SUCC, SUCC)
    d = DTree(ProofRule.COMP_COMPAT, Comp(v, Id(NAT)), Comp(v2, Id(NAT)), (pv, refl(Id(NAT))))
    check_proof(d)
    t = argue(d, s(3))
    assert t.right == leaf(Id(NAT), s(3), Id(NAT), s(3))
    nxt = tree_step(t)
    assert nxt == argue(pv, s(3))
    assert nxt.label == SimPair(v, s(3), v2, s(3))


def test_tree_step_irregular_aborts():
    dummy = STree(SimPair(SUCC, BOX, SUCC, BOX))
    t = STree(SimPair(Comp(SUCC, Id(NAT)), s(3), Comp(SUCC, Id(NAT)), s(4)), dummy,
              leaf(Id(NAT), s(3), Id(NAT), s(3)))
    assert tree_step(t) == ABORTED
    assert tree_complexity(ABORTED) == o.ZERO
    mixed = leaf(SUCC, BOX, SUCC, s(1))
    assert tree_step(mixed) == ABORTED
    out = tree_eval(t, 10)
    assert out.terminated and is_aborted(out.tree) and out.steps <= 1
    out = tree_eval(ABORTED, 10)
    assert out.terminated and out.steps == 0


def test_tree_step_stationary_at_zero():
    for t in (ABORTED, leaf(Id(NAT), s(5), Id(NAT), s(5))):
        assert tree_step(t) == t


def test_tree_eval_fixtures():
    out = tree_eval(leaf(Id(NAT), s(5), Id(NAT), s(5)), 0)
    assert out.terminated and out.steps == 0
    out = tree_eval(argue(refl(SUCC), s(3)), 10)
    assert out.terminated and out.tree == leaf(Id(NAT), s(4), Id(NAT), s(4))
    out = tree_eval(argue(by_name("monus_succ_both").proof, p(9, 7)), 10**5)
    assert out.terminated
    assert out.tree.label.left_arg == out.tree.label.right_arg == s(2)
    assert out.tree.label.left_code == out.tree.label.right_code == Id(NAT)


def test_tree_descent_along_evaluation():
    t = argue(by_name("pred_succ").proof, s(4))
    prev = tree_complexity(t)
    for _ in range(10_000):
        if prev.is_zero():
            break
        t = tree_step(t)
        cur = tree_complexity(t)
        assert cur < prev
        prev = cur
    assert prev.is_zero() and t.label.left_arg == s(4)


# --- soundness -------------------------------------------------------------

def test_soundness_fixtures():
    assert soundness_check(refl(SUCC), s(0), 100) == Sound(s(1), 1)
    v = soundness_check(by_name("monus_succ_both").proof, p(9, 7), 10**6)
    assert isinstance(v, Sound) and v.value == s(2)
    v = soundness_check(by_name("monus_succ_both").proof, p(9, 7), 10)
    assert isinstance(v, NotTerminated) and not v.residual.is_zero()
    assert '"verdict": "not_terminated"' in verdict_json(v)


def test_corpus_contents():
    names = {e.name for e in corpus()}
    assert len(names) >= 10
    for must in ("pred_succ", "monus_succ_both", "add_zero", "zero_add", "assoc_succ",
                 "assoc_add", "add_freyd"):
        assert must in names
    keys = [(e.proof.depth(), len(dump_proof(e.proof))) for e in corpus()]
    assert keys == sorted(keys)


def test_corpus_roots_oracle_equal():
    rng = random.Random(2)
    for e in corpus():
        lhs, rhs = check_proof(e.proof)
        a = typecheck(lhs)[0]
        for _ in range(100):
            x = gen_value(rng, a, max_n=8)
            assert oracle_eval(lhs, x) == oracle_eval(rhs, x), e.name


def test_terminal_and_godement_instances():
    check_proof(terminal(Comp(Bang(NAT), SUCC)))
    check_proof(by_name("godement_pair").proof)
    with pytest.raises(ProofError):
        check_proof(godement(SUCC, Comp(SUCC, Id(NAT))))
