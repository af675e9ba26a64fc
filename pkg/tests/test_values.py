import random

import pytest

from prcert import library
from prcert.evaluator import oracle_eval
from prcert.generators import CATALOG, MEMBER_CATALOG, gen_any_value, gen_value
from prcert.syntax import NAT, UNIT, Prod, Sub
from prcert.values import (
    BOT, BOX, Membership, Pair, Single, encode_tuple, member, parse_value, render_value,
)

IN, OUT = Membership.IN, Membership.OUT


def test_member_fixtures():
    assert member(UNIT, Single(0)) is IN
    assert member(UNIT, Single(1)) is OUT
    nn = Prod(NAT, NAT)
    assert member(nn, Pair(Single(2), Single(3))) is IN
    assert member(nn, Single(2)) is OUT
    even = Sub(NAT, library.even())
    assert member(even, Single(4)) is IN
    assert member(even, Single(3)) is OUT


def test_bot_box_never_members():
    for obj in MEMBER_CATALOG:
        assert member(obj, BOT) is OUT
        assert member(obj, BOX) is OUT


def test_member_unknown_on_tiny_fuel():
    even = Sub(NAT, library.even())
    assert member(even, Single(40), fuel=3) is Membership.UNKNOWN


def test_encode_tuple():
    assert encode_tuple([5]) == Single(5)
    assert encode_tuple([2, 3]) == Pair(Single(2), Single(3))
    assert encode_tuple([1, 2, 3]) == Pair(Single(1), Pair(Single(2), Single(3)))
    with pytest.raises(ValueError):
        encode_tuple([])


@pytest.mark.parametrize("text", ["bot", "box", "<5>", "<2;3>", "<1;<2;3>>", "<<0;1>;<2;3>>"])
def test_text_roundtrip(text):
    assert render_value(parse_value(text)) == text


@pytest.mark.parametrize("text", ["", "5", "<1;2", "<bot;1>", "<1;2>>", "<a>", "<box;<1>>"])
def test_bad_value_text(text):
    with pytest.raises(ValueError):
        parse_value(text)


def test_pairs_reject_atoms():
    with pytest.raises(ValueError):
        Pair(BOT, Single(1))
    with pytest.raises(ValueError):
        Pair(Single(1), BOX)


def test_random_values_roundtrip():
    rng = random.Random(3)
    for _ in range(2000):
        x = gen_any_value(rng)
        assert parse_value(render_value(x)) == x


def expected_member(obj, x):
    """Independent membership: shape recursion plus the predicate's denotation."""
    if obj == UNIT:
        return x == Single(0)
    if obj == NAT:
        return isinstance(x, Single)
    if isinstance(obj, Prod):
        return isinstance(x, Pair) and expected_member(obj.left, x.a) and expected_member(obj.right, x.b)
    assert isinstance(obj, Sub)
    if not expected_member(obj.base, x):
        return False
    out = oracle_eval(obj.pred, x)
    return isinstance(out, Single) and out.n > 0


def test_member_pairwise_over_catalog():
    rng = random.Random(5)
    assert len(MEMBER_CATALOG) >= 10
    for a in MEMBER_CATALOG:
        for _ in range(15):
            x = gen_value(rng, a, max_n=6)
            assert x is not None
            assert member(a, x) is IN
            for b in MEMBER_CATALOG:
                want = IN if expected_member(b, x) else OUT
                assert member(b, x) is want, (a, b, x)


def test_generated_members_of_plain_catalog():
    rng = random.Random(8)
    for a in CATALOG:
        for _ in range(50):
            assert member(a, gen_value(rng, a)) is IN
